#include "towerlab/synthesis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace towerlab {

Rational parse_direction(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) throw std::invalid_argument("direction must be written p/q: " + std::string(text));
  BigInt p = parse_bigint(text.substr(0, slash));
  BigInt q = parse_bigint(text.substr(slash + 1));
  if (q <= 0 || p <= 0 || p >= q) throw std::invalid_argument("direction " + std::string(text) + " is not in (0,1)");
  if (gcd(p, q) != 1) throw std::invalid_argument("direction " + std::string(text) + " is not in lowest terms");
  return Rational(p, q);
}

namespace {

void check_range(const std::vector<Rational>& v, const char* name) {
  std::set<Rational> seen;
  for (const auto& r : v) {
    if (r <= 0 || r >= 1) throw std::invalid_argument(std::string(name) + " contains " + to_string(r) + " outside (0,1)");
    if (!seen.insert(r).second) throw std::invalid_argument(std::string(name) + " lists " + to_string(r) + " twice");
  }
}

bool contains(const std::vector<Rational>& v, const Rational& r) { return std::find(v.begin(), v.end(), r) != v.end(); }

}  // namespace

void DirectionSpec::validate() const {
  check_range(R, "R");
  check_range(S, "S");
  check_range(R1, "R1");
  check_range(R2, "R2");
  if (mode == Mode::ergodic_set) {
    for (const auto& s : S) {
      if (contains(R, s)) throw std::invalid_argument(to_string(s) + " is listed in both R and S");
    }
  } else {
    for (const auto& r : R1) {
      if (!contains(R2, r)) throw std::invalid_argument(to_string(r) + " is in R1 but not in R2");
    }
    for (const auto& s : S) {
      if (contains(R2, s)) throw std::invalid_argument(to_string(s) + " is listed in both R2 and S");
    }
  }
}

std::string to_string(DirectionSpec::Mode mode) {
  return mode == DirectionSpec::Mode::ergodic_set ? "ergodic-set" : "three-way";
}

BigInt block_partition(std::int64_t i, std::int64_t j) {
  if (i < 1 || j < 1) throw std::invalid_argument("block_partition needs i, j >= 1");
  BigInt n = pow(BigInt(2), static_cast<unsigned long>(i - 1));
  return n * (2 * j - 1);
}

BlockIndex block_of(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("block_of needs n >= 1");
  BlockIndex b;
  b.i = 1;
  while (n % 2 == 0) {
    n /= 2;
    ++b.i;
  }
  b.j = (n + 1) / 2;
  return b;
}

std::int64_t schedule_round_end(std::int64_t rho) {
  std::int64_t total = 0;
  for (std::int64_t r = 1; r <= rho; ++r) total += (r + 1) * (r + 2) / 2;
  return total;
}

std::pair<std::int64_t, std::int64_t> pair_schedule(std::int64_t j) {
  if (j < 1) throw std::invalid_argument("pair_schedule needs j >= 1");
  std::int64_t rho = 1, before = 0;
  while (before + (rho + 1) * (rho + 2) / 2 < j) {
    before += (rho + 1) * (rho + 2) / 2;
    ++rho;
  }
  std::int64_t pos = j - before - 1;
  std::int64_t s = 0;
  while ((s + 1) * (s + 2) / 2 <= pos) ++s;
  std::int64_t k = pos - s * (s + 1) / 2;
  return {k, s - k};
}

Rational separation(const Rational& r, const std::vector<Rational>& S, std::int64_t i, std::int64_t j) {
  if (S.empty()) return 1;
  const auto needed = static_cast<std::size_t>(i + j);
  if (S.size() < needed) throw InsufficientPrefix(needed, S.size());
  Rational best = abs(r - S[0]);
  for (std::size_t u = 1; u < needed; ++u) best = std::min<Rational>(best, abs(r - S[u]));
  return best;
}

std::string to_string(StageRecord::Kind kind) {
  switch (kind) {
    case StageRecord::Kind::preset:
      return "preset";
    case StageRecord::Kind::ergodic:
      return "ergodic";
    case StageRecord::Kind::exact:
      return "exact";
  }
  return {};
}

namespace {

BigInt at_least(const BigInt& num, const BigInt& den) { return ceil_div(num, den); }

/// Smallest integer strictly greater than x.
BigInt above(const Rational& x) { return floor(x) + 1; }

struct Fill {
  const Rule b = Rule::parse(kMinimalBRule);
  const Rule d = Rule::parse(kMinimalDRule);
};

SynthesisResult run(const DirectionSpec& spec, int up_to) {
  spec.validate();
  if (up_to < 0) throw std::invalid_argument("stage count must be >= 0");
  const auto& targets = spec.targets();
  const bool three_way = spec.mode == DirectionSpec::Mode::three_way;
  std::vector<Rational> exact_set;
  if (three_way) {
    for (const auto& r : spec.R2) {
      if (!contains(spec.R1, r)) exact_set.push_back(r);
    }
  }
  const Fill fill;
  SynthesisResult out;
  out.trace.spec = spec;
  AfsGenerator gen;
  BigInt H = 1, h = 1;
  for (int n = 0; n <= up_to; ++n) {
    StageRecord rec;
    rec.n = n;
    rec.h_n = h;
    BigInt p_n, q_n;
    if (n >= 1) {
      BlockIndex blk = block_of(n);
      if (blk.i <= static_cast<std::int64_t>(targets.size())) {
        const Rational& r = targets[blk.i - 1];
        rec.i = blk.i;
        rec.j = blk.j;
        rec.target = r;
        rec.kind = three_way && contains(exact_set, r) ? StageRecord::Kind::exact : StageRecord::Kind::ergodic;
      }
    }
    if (rec.kind == StageRecord::Kind::preset) {
      p_n = H + 3 * h;
      q_n = p_n + 1;
    } else {
      const Rational& r = *rec.target;
      const BigInt p = r.get_num(), q = r.get_den();
      rec.delta = separation(r, spec.S, rec.i, rec.j);
      for (const auto& other : exact_set) {
        if (other != r) rec.delta = std::min<Rational>(rec.delta, abs(r - other));
      }
      const BigInt nh = n * h;
      if (rec.kind == StageRecord::Kind::ergodic) {
        auto [k, l] = pair_schedule(rec.j);
        rec.k = k;
        rec.l = l;
        const BigInt jp = rec.j * p, jq = rec.j * q;
        BigInt t = 1;
        t = std::max(t, at_least(H + k, jp));
        t = std::max(t, at_least(nh + k, jp));
        t = std::max(t, at_least(H + l, jq));
        t = std::max(t, above((Rational(2 * h + k + l) + Rational(l) * rec.delta) / (Rational(jq) * rec.delta)));
        if (l > k) t = std::max(t, at_least(BigInt(l - k), BigInt(rec.j * (q - p))));
        rec.t = t;
        p_n = t * jp - k;
        q_n = t * jq - l;
        rec.tn = t * rec.j;
      } else {
        BigInt t = 1;
        t = std::max(t, at_least(H, p));
        t = std::max(t, at_least(nh, p));
        t = std::max(t, above(Rational(2 * h) / (Rational(q) * rec.delta)));
        rec.t = t;
        p_n = t * p;
        q_n = t * q;
        rec.tn = t;
      }
    }
    rec.p_n = p_n;
    rec.q_n = q_n;
    BigInt a = p_n - H, c = q_n - H;
    Rule::Environment env{{"n", Rational(n)}, {"H", Rational(H)}, {"h", Rational(h)}, {"a", Rational(a)},
                          {"p", Rational(p_n)}, {"c", Rational(c)}, {"q", Rational(q_n)}};
    BigInt b = fill.b.evaluate_integer(env);
    BigInt l_n = H + b;
    BigInt next_h = p_n + l_n + q_n + H;
    env["b"] = Rational(b);
    env["l"] = Rational(l_n);
    env["hn1"] = Rational(next_h);
    BigInt d = fill.d.evaluate_integer(env);
    gen.prefix[0].push_back(a);
    gen.prefix[1].push_back(b);
    gen.prefix[2].push_back(c);
    gen.prefix[3].push_back(d);
    H = p_n + l_n + q_n + H + d;
    h = next_h;
    out.trace.stages.push_back(std::move(rec));
  }
  out.params = AfsParams::materialize(std::move(gen), up_to);
  return out;
}

}  // namespace

SynthesisResult synthesize_R(const DirectionSpec& spec, int up_to) {
  if (spec.mode != DirectionSpec::Mode::ergodic_set) throw std::invalid_argument("synthesize_R needs ergodic-set mode");
  return run(spec, up_to);
}

SynthesisResult synthesize_three_way(const DirectionSpec& spec, int up_to) {
  if (spec.mode != DirectionSpec::Mode::three_way) throw std::invalid_argument("synthesize_three_way needs three-way mode");
  return run(spec, up_to);
}

SynthesisResult synthesize(const DirectionSpec& spec, int up_to) { return run(spec, up_to); }

std::vector<std::string> SynthesisTrace::recheck(const AfsParams& params) const {
  std::vector<std::string> bad;
  auto fail = [&](int n, const std::string& what) { bad.push_back("stage " + std::to_string(n) + ": " + what); };
  if (params.last_stage() + 1 < static_cast<int>(stages.size())) {
    bad.push_back("trace covers more stages than the parameters");
    return bad;
  }
  ValidationReport v = validate_V(params, static_cast<int>(stages.size()) - 1);
  for (const auto& e : v.failures()) fail(e.stage, e.check + " fails (" + e.detail + ")");
  for (const auto& rec : stages) {
    const AfsStage& s = params.stage(rec.n);
    if (s.p != rec.p_n || s.q != rec.q_n) fail(rec.n, "recorded p_n, q_n differ from the parameters");
    if (s.h != rec.h_n) fail(rec.n, "recorded h_n differs from the parameters");
    switch (rec.kind) {
      case StageRecord::Kind::preset:
        if (s.a != 3 * s.h || s.c != s.a + 1) fail(rec.n, "preset stage does not have a = 3h, c = a + 1");
        break;
      case StageRecord::Kind::ergodic: {
        if (!rec.target) {
          fail(rec.n, "ergodic stage without a target");
          break;
        }
        const BigInt p = rec.target->get_num(), q = rec.target->get_den();
        if (s.p + rec.k != rec.t * rec.j * p || s.q + rec.l != rec.t * rec.j * q) {
          fail(rec.n, "divisibility (q_n + l)/(jq) = (p_n + k)/(jp) = t fails");
        }
        if (rec.tn * p != s.p + rec.k || rec.tn * q != s.q + rec.l) fail(rec.n, "return time t_n is not (p_n + k)/p");
        if (!(Rational(s.q) * rec.delta > Rational(2 * s.h + rec.k + rec.l))) fail(rec.n, "gap q_n delta > 2h_n + k + l fails");
        if (s.p < rec.n * s.h) fail(rec.n, "p_n >= n h_n fails");
        break;
      }
      case StageRecord::Kind::exact: {
        if (!rec.target) {
          fail(rec.n, "exact stage without a target");
          break;
        }
        const BigInt p = rec.target->get_num(), q = rec.target->get_den();
        if (s.p != rec.t * p || s.q != rec.t * q) fail(rec.n, "exact proportionality p_n = tp, q_n = tq fails");
        if (!(Rational(s.q) * rec.delta > Rational(2 * s.h))) fail(rec.n, "gap q_n delta > 2h_n fails");
        if (s.p < rec.n * s.h) fail(rec.n, "p_n >= n h_n fails");
        break;
      }
    }
  }
  return bad;
}

}  // namespace towerlab
