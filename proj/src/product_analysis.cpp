#include "towerlab/product_analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace towerlab {

BigInt discrepancy(const AfsParams& params, int n, const BigInt& p, const BigInt& q) {
  const AfsStage& s = params.stage(n);
  return abs(BigInt(p * s.q - q * s.p));
}

bool gap_condition(const AfsParams& params, int n, const BigInt& p, const BigInt& q) {
  return discrepancy(params, n, p, q) <= (p + q) * params.stage(n).h;
}

std::optional<BigInt> divisibility_condition(const AfsParams& params, int n, const BigInt& p, const BigInt& q,
                                             const BigInt& k, const BigInt& l) {
  if (p < 1 || q < 1 || k < 0 || l < 0) throw std::invalid_argument("divisibility_condition needs p, q >= 1 and k, l >= 0");
  const AfsStage& s = params.stage(n);
  const BigInt num_q = s.q + l, num_p = s.p + k;
  if (num_q % q != 0 || num_p % p != 0) return std::nullopt;
  BigInt t = num_p / p;
  if (num_q / q != t || t < 1) return std::nullopt;
  return t;
}

const Interval& KIntervalTable::at(int s, int t) const {
  if (s == t) return diagonal;
  if (s > t) std::swap(s, t);
  for (const auto& [key, iv] : off_diagonal) {
    if (key.first == s && key.second == t) return iv;
  }
  throw std::out_of_range("no interval K_" + std::to_string(s) + "," + std::to_string(t));
}

std::vector<Interval> KIntervalTable::all() const {
  std::vector<Interval> out{diagonal};
  for (const auto& entry : off_diagonal) out.push_back(entry.second);
  return out;
}

KIntervalTable k_intervals(const AfsParams& params, int n) {
  const AfsStage& s = params.stage(n);
  KIntervalTable table;
  table.stage = n;
  table.h = s.h;
  table.diagonal = {0, s.h};
  auto add = [&](int a, int b, const BigInt& c) { table.off_diagonal.push_back({{a, b}, Interval{c - s.h, c + s.h}}); };
  add(1, 2, s.p);
  add(2, 3, s.l);
  add(3, 4, s.q);
  add(1, 3, s.p + s.l);
  add(2, 4, s.l + s.q);
  add(1, 4, s.p + s.l + s.q);
  return table;
}

namespace {

/// Integer range of i with i * p in [lo, hi], p != 0.
Interval scaled_range(const BigInt& p, const Interval& iv) {
  if (p > 0) return {ceil_div(iv.lo, p), floor_div(iv.hi, p)};
  return {ceil_div(iv.hi, p), floor_div(iv.lo, p)};
}

}  // namespace

std::vector<BigInt> simultaneous_hits(const BigInt& p, const BigInt& q, const Interval& a, const Interval& b) {
  if (p == 0 || q == 0) throw std::invalid_argument("simultaneous_hits needs nonzero powers");
  Interval ra = scaled_range(p, a), rb = scaled_range(q, b);
  BigInt lo = std::max({ra.lo, rb.lo, BigInt(1)});
  BigInt hi = std::min(ra.hi, rb.hi);
  std::vector<BigInt> out;
  for (BigInt i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

std::vector<BigInt> table_hits(const KIntervalTable& table, const BigInt& p, const BigInt& q, const BigInt& limit) {
  std::set<BigInt> hits;
  const auto intervals = table.all();
  for (const auto& a : intervals) {
    for (const auto& b : intervals) {
      Interval ra = scaled_range(p, a), rb = scaled_range(q, b);
      BigInt lo = std::max({ra.lo, rb.lo, BigInt(1)});
      BigInt hi = std::min({ra.hi, rb.hi, limit});
      for (BigInt i = lo; i <= hi; ++i) hits.insert(i);
    }
  }
  return {hits.begin(), hits.end()};
}

namespace {

/// Lags x in return_lags(a, b) over the range swept by x = power * i,
/// 0 < i <= horizon, mapped back to i.
std::vector<BigInt> indices_hitting(const Tower& tower, const CylinderSet& a, const CylinderSet& b, const BigInt& power,
                                    const BigInt& horizon) {
  BigInt lo = power, hi = power * horizon;
  if (lo > hi) std::swap(lo, hi);
  std::vector<BigInt> out;
  for (const auto& x : return_lags(tower, a, b, lo, hi)) {
    if (x % power == 0) out.push_back(x / power);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BigInt> intersect(const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
  std::vector<BigInt> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<BigInt> lambda_set(const Tower& tower, const BigInt& p, const BigInt& q, const CylinderSet& a,
                               const BigInt& horizon, const std::optional<LambdaTargets>& targets) {
  if (p == 0 || q == 0) throw std::invalid_argument("lambda_set needs nonzero powers");
  if (horizon < 1) return {};
  const CylinderSet& c = targets ? targets->first : a;
  const CylinderSet& d = targets ? targets->second : a;
  // A lag contributes only when both factors are positive, so each factor's
  // return lags bound the candidates exactly.
  return intersect(indices_hitting(tower, a, c, p, horizon), indices_hitting(tower, a, d, q, horizon));
}

std::vector<BigInt> lambda_set_shifted(const Tower& tower, const BigInt& p, const BigInt& q, const LevelSet& a,
                                       const BigInt& horizon) {
  LambdaTargets targets{apply_power(tower, a, 1), a};
  return lambda_set(tower, p, q, a, horizon, targets);
}

std::vector<std::pair<BigInt, Measure>> lambda_table(const Tower& tower, const BigInt& p, const BigInt& q,
                                                     const CylinderSet& a, const BigInt& horizon,
                                                     const std::optional<LambdaTargets>& targets) {
  const CylinderSet& c = targets ? targets->first : a;
  const CylinderSet& d = targets ? targets->second : a;
  std::vector<std::pair<BigInt, Measure>> out;
  for (const auto& i : lambda_set(tower, p, q, a, horizon, targets)) {
    out.emplace_back(i, product_correlation(tower, {a, a}, {c, d}, {p, q}, i));
  }
  return out;
}

std::vector<BigInt> multiple_return_set(const Tower& tower, const CylinderSet& a, const BigInt& p, const BigInt& q,
                                        const BigInt& horizon) {
  if (p == 0 || q == 0) throw std::invalid_argument("multiple_return_set needs nonzero powers");
  if (horizon < 1) return {};
  auto candidates = intersect(indices_hitting(tower, a, a, p, horizon), indices_hitting(tower, a, a, q, horizon));
  std::vector<BigInt> out;
  for (const auto& i : candidates) {
    if (triple_correlation(tower, a, p, q, i) > 0) out.push_back(i);
  }
  return out;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::member:
      return "member";
    case Membership::non_member:
      return "non-member";
    case Membership::unknown:
      return "unknown";
  }
  return {};
}

MembershipReport limit_ratio_membership(const AfsParams& params, const BigInt& p, const BigInt& q,
                                        const Rational& epsilon) {
  if (p < 1 || q < 1) throw std::invalid_argument("limit_ratio_membership needs p, q >= 1");
  if (p > q) throw std::invalid_argument("limit_ratio_membership needs p <= q");
  Rational r(p, q);
  r.canonicalize();
  MembershipReport report;
  for (const auto& s : params.stages()) {
    Rational ratio(s.p, s.q);
    ratio.canonicalize();
    if (abs(r - ratio) < epsilon) report.close_stages.push_back(s.n);
  }
  if (params.ratio_rule()) {
    report.from_rule = true;
    auto acc = params.ratio_rule()->accumulation_set();
    bool found = std::any_of(acc.begin(), acc.end(), [&](const Rational& x) { return x == r; });
    report.status = found ? Membership::member : Membership::non_member;
  }
  return report;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::ergodic:
      return "ergodic";
    case Regime::conservative_not_ergodic:
      return "conservative-not-ergodic";
    case Regime::not_conservative:
      return "not-conservative";
    case Regime::unknown_at_horizon:
      return "unknown-at-horizon";
  }
  return {};
}

std::string to_string(Basis b) { return b == Basis::certificate ? "certificate" : "prefix-evidence"; }

namespace {

bool listed(const std::vector<Rational>& v, const Rational& r) { return std::find(v.begin(), v.end(), r) != v.end(); }

std::string stage_list(const std::vector<int>& stages) {
  std::string out;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(stages[i]);
  }
  return out;
}

/// Beyond stage 2p + q - 2, a preset-shaped stage (q_n = p_n + 1 with
/// p_n >= (n + 3) h_n) has discrepancy above (p + q) h_n for p < q.
int preset_threshold(const BigInt& p, const BigInt& q) { return std::max(0, static_cast<int>(to_int64(2 * p + q - 2))); }

/// Largest n(i, j) with i + j <= v and i <= targets.
int block_threshold(std::size_t v, std::size_t targets) {
  BigInt best = 0;
  for (std::size_t i = 1; i <= targets && i < v; ++i) {
    for (std::size_t j = 1; i + j <= v; ++j) best = std::max(best, block_partition(i, j));
  }
  return static_cast<int>(to_int64(best));
}

void add_prefix_facts(Verdict& v, const AfsParams& params) {
  std::vector<int> gap, zero;
  for (int n = 0; n <= v.horizon; ++n) {
    if (gap_condition(params, n, v.p, v.q)) gap.push_back(n);
    if (discrepancy(params, n, v.p, v.q) == 0) zero.push_back(n);
  }
  v.facts.emplace_back("gap_stages", stage_list(gap));
  v.facts.emplace_back("zero_discrepancy_stages", stage_list(zero));
}

/// Every stage in (threshold, horizon] must have discrepancy above
/// (p + q) h_n, or zero when `zero_allowed`.
void require_separated(Verdict& v, const AfsParams& params, bool zero_allowed) {
  for (int n = v.threshold + 1; n <= v.horizon; ++n) {
    BigInt disc = discrepancy(params, n, v.p, v.q);
    if (zero_allowed && disc == 0) continue;
    if (disc <= (v.p + v.q) * params.stage(n).h) {
      throw InconsistentCertificate("stage " + std::to_string(n) + " has discrepancy " + to_string(disc) +
                                    " within (p+q)h_n although the certificate places it beyond threshold " +
                                    std::to_string(v.threshold));
    }
  }
}

}  // namespace

Verdict classify(const AfsParams& params, const std::optional<SynthesisTrace>& trace, const BigInt& p,
                 const BigInt& q, int horizon, bool negative) {
  if (p < 1 || q < 1) throw std::invalid_argument("classify needs p, q >= 1 (use the negative flag for T^{-p})");
  Verdict v;
  v.input_p = p;
  v.input_q = q;
  v.negative = negative;
  BigInt g = gcd(p, q);
  v.p = p / g;
  v.q = q / g;
  v.reduced = g != 1;
  if (v.p > v.q) {
    std::swap(v.p, v.q);
    v.swapped = true;
  }
  v.horizon = std::min(std::max(horizon, 0), params.last_stage());
  const Rational r(v.p, v.q);
  add_prefix_facts(v, params);

  if (trace) {
    auto problems = trace->recheck(params);
    if (!problems.empty()) throw InconsistentCertificate("certificate fails re-check: " + problems.front());
    const DirectionSpec& spec = trace->spec;
    const bool three_way = spec.mode == DirectionSpec::Mode::three_way;
    const auto& ergodic_targets = three_way ? spec.R1 : spec.R;
    std::vector<int> certified;
    for (const auto& rec : trace->stages) {
      if (rec.target && *rec.target == r) certified.push_back(rec.n);
    }
    if (listed(ergodic_targets, r)) {
      v.regime = Regime::ergodic;
      v.basis = Basis::certificate;
      v.threshold = 0;
      v.facts.emplace_back("certificate", "divisibility (q_n+l)/q = (p_n+k)/p for every scheduled (k,l)");
      v.facts.emplace_back("certified_stages", stage_list(certified));
      return v;
    }
    if (negative) {
      v.facts.emplace_back("note", "only the ergodic certificate covers T^{-p} x T^q");
      return v;
    }
    if (three_way && listed(spec.R2, r)) {
      v.regime = Regime::conservative_not_ergodic;
      v.basis = Basis::certificate;
      v.threshold = preset_threshold(v.p, v.q);
      require_separated(v, params, true);
      v.facts.emplace_back("certificate", "exact proportionality q_n/q = p_n/p infinitely often, discrepancy above (p+q)h_n elsewhere");
      v.facts.emplace_back("certified_stages", stage_list(certified));
      return v;
    }
    auto pos = std::find(spec.S.begin(), spec.S.end(), r);
    if (pos != spec.S.end()) {
      const std::size_t index = static_cast<std::size_t>(pos - spec.S.begin()) + 1;
      v.regime = Regime::not_conservative;
      v.basis = Basis::certificate;
      v.threshold = std::max(block_threshold(index, spec.targets().size()), preset_threshold(v.p, v.q));
      require_separated(v, params, false);
      v.facts.emplace_back("certificate", "discrepancy above (p+q)h_n at every stage beyond the threshold");
      v.facts.emplace_back("complement_position", std::to_string(index));
      return v;
    }
    v.facts.emplace_back("note", "ratio is not listed in the certificate");
    return v;
  }

  const bool preset_shaped = std::all_of(params.stages().begin(), params.stages().end(), [](const AfsStage& s) {
    return s.a == 3 * s.h && s.c == s.a + 1;
  });
  if (params.generator().preset == kPresetInfiniteErgodicIndex && preset_shaped && !negative) {
    v.basis = Basis::certificate;
    if (v.p == v.q) {
      v.regime = Regime::ergodic;
      v.threshold = 0;
      v.facts.emplace_back("certificate", "a_n = 3h_n, c_n = a_n + 1 gives infinite ergodic index");
    } else {
      v.regime = Regime::not_conservative;
      v.threshold = preset_threshold(v.p, v.q);
      require_separated(v, params, false);
      v.facts.emplace_back("certificate", "q_n = p_n + 1 keeps the discrepancy above (p+q)h_n beyond the threshold");
    }
    return v;
  }
  if (params.ratio_rule() && v.p <= v.q) {
    auto m = limit_ratio_membership(params, v.p, v.q);
    v.facts.emplace_back("accumulation_membership", to_string(m.status));
  }
  return v;
}

}  // namespace towerlab
