#include "towerlab/afs.hpp"

#include <algorithm>

namespace towerlab {

std::vector<Rational> RatioRule::accumulation_set() const {
  std::vector<Rational> out = values;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

constexpr const char* kNames[4] = {"a", "b", "c", "d"};

BigInt next_value(const AfsGenerator& gen, int which, int n, const Rule::Environment& env) {
  const auto& prefix = gen.prefix[which];
  if (n < static_cast<int>(prefix.size())) return prefix[n];
  if (!gen.has_rule(which)) {
    throw ConstructionError(n, std::string("no value or rule for ") + kNames[which] + "_" + std::to_string(n));
  }
  try {
    return gen.rules[which].evaluate_integer(env);
  } catch (const RuleError& e) {
    throw ConstructionError(n, std::string("rule for ") + kNames[which] + ": " + e.what());
  }
}

}  // namespace

AfsParams AfsParams::materialize(AfsGenerator generator, int up_to) {
  if (up_to < 0) throw std::invalid_argument("materialization horizon must be >= 0");
  AfsParams out;
  out.generator_ = std::move(generator);
  BigInt H = 1, h = 1;
  for (int n = 0; n <= up_to; ++n) {
    AfsStage s;
    s.n = n;
    s.H = H;
    s.h = h;
    Rule::Environment env{{"n", Rational(n)}, {"H", Rational(H)}, {"h", Rational(h)}};
    s.a = next_value(out.generator_, 0, n, env);
    s.p = H + s.a;
    env["a"] = Rational(s.a);
    env["p"] = Rational(s.p);
    s.c = next_value(out.generator_, 2, n, env);
    s.q = H + s.c;
    env["c"] = Rational(s.c);
    env["q"] = Rational(s.q);
    s.b = next_value(out.generator_, 1, n, env);
    s.l = H + s.b;
    s.next_h = s.p + s.l + s.q + H;
    env["b"] = Rational(s.b);
    env["l"] = Rational(s.l);
    env["hn1"] = Rational(s.next_h);
    s.d = next_value(out.generator_, 3, n, env);
    s.m = H + s.d;
    s.next_H = s.p + s.l + s.q + s.m;
    for (const auto* v : {&s.a, &s.b, &s.c, &s.d}) {
      if (*v < 0) throw ConstructionError(n, "negative spacer count " + to_string(*v));
    }
    H = s.next_H;
    h = s.next_h;
    out.stages_.push_back(std::move(s));
  }
  return out;
}

const AfsStage& AfsParams::stage(int n) const {
  if (n < 0 || n > last_stage()) {
    throw StageError("stage " + std::to_string(n) + " is beyond the materialized prefix (0.." +
                     std::to_string(last_stage()) + ")");
  }
  return stages_[n];
}

BigInt AfsParams::H(int n) const {
  if (n == last_stage() + 1) return stages_.back().next_H;
  return stage(n).H;
}

BigInt AfsParams::h(int n) const {
  if (n == last_stage() + 1) return stages_.back().next_h;
  return stage(n).h;
}

Column AfsParams::column(int n) const {
  Column col;
  col.stage = n;
  if (n == 0) {
    col.height = 1;
    return col;
  }
  const AfsStage& s = stage(n - 1);
  col.height = s.next_H;
  col.embed_offsets = {BigInt(0), s.p, s.p + s.l, s.p + s.l + s.q};
  const BigInt gaps[4] = {s.a, s.b, s.c, s.d};
  for (int r = 0; r < 4; ++r) {
    BigInt begin = col.embed_offsets[r] + s.H;
    if (gaps[r] > 0) col.spacer_ranges.push_back({begin, begin + gaps[r]});
  }
  return col;
}

AfsParams afs_from_prefix(const std::vector<std::array<BigInt, 4>>& abcd) {
  if (abcd.empty()) throw std::invalid_argument("empty parameter prefix");
  AfsGenerator gen;
  for (const auto& row : abcd) {
    for (int k = 0; k < 4; ++k) gen.prefix[k].push_back(row[k]);
  }
  return AfsParams::materialize(std::move(gen), static_cast<int>(abcd.size()) - 1);
}

bool ValidationReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

std::vector<CheckEntry> ValidationReport::failures() const {
  std::vector<CheckEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out), [](const CheckEntry& e) { return !e.pass; });
  return out;
}

namespace {

void check(ValidationReport& report, int n, const char* name, bool pass, const BigInt& lhs, const char* op,
           const BigInt& rhs) {
  report.entries.push_back({n, name, pass, to_string(lhs) + " " + op + " " + to_string(rhs)});
}

}  // namespace

ValidationReport validate_W(const AfsParams& params, int up_to) {
  ValidationReport report;
  for (int n = 0; n <= up_to; ++n) {
    const AfsStage& s = params.stage(n);
    BigInt l_bound = n * (s.p + s.q + 2 * s.h);
    check(report, n, "l_bound", s.l > l_bound, s.l, ">", l_bound);
    BigInt m_bound = n * s.next_h;
    check(report, n, "m_bound", s.m > m_bound, s.m, ">", m_bound);
    BigInt growth = n * s.h;
    check(report, n, "growth_certificate", s.p >= growth, s.p, ">=", growth);
  }
  return report;
}

ValidationReport validate_V(const AfsParams& params, int up_to) {
  ValidationReport report = validate_W(params, up_to);
  for (int n = 0; n <= up_to; ++n) {
    const AfsStage& s = params.stage(n);
    check(report, n, "p_le_q", s.p <= s.q, s.p, "<=", s.q);
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const CheckEntry& x, const CheckEntry& y) { return x.stage < y.stage; });
  return report;
}

AfsGenerator preset_infinite_ergodic_index_generator() {
  AfsGenerator gen;
  gen.rules[0] = Rule::parse("3*h");
  gen.rules[1] = Rule::parse(kMinimalBRule);
  gen.rules[2] = Rule::parse("a+1");
  gen.rules[3] = Rule::parse(kMinimalDRule);
  gen.preset = kPresetInfiniteErgodicIndex;
  return gen;
}

AfsParams preset_infinite_ergodic_index(int up_to) {
  if (up_to < 1) throw std::invalid_argument("preset needs up_to >= 1");
  return AfsParams::materialize(preset_infinite_ergodic_index_generator(), up_to);
}

}  // namespace towerlab
