#include "towerlab/ergodic_index.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace towerlab {

std::string to_string(Series s) { return s == Series::diverges ? "diverges" : "converges"; }

namespace {

/// Whether sum_n r_n^{-k} diverges for a closed-form rule.
Series series_kind(const CutRule& rule, int k) {
  switch (rule.kind) {
    case CutRule::Kind::constant:
      return Series::diverges;
    case CutRule::Kind::power:
      // c n^a <= r_n <= (c + floor + 1) n^a, so it tracks sum n^{-ak}
      return rule.alpha * k <= 1 ? Series::diverges : Series::converges;
    case CutRule::Kind::geometric:
      return rule.beta > 1 ? Series::converges : Series::diverges;
    case CutRule::Kind::prefix:
      break;
  }
  throw AnalyticTestUnavailable("analytic test unavailable for cut rule " + rule.describe());
}

}  // namespace

SeriesReport series_index(const CutRule& rule, int L) {
  if (L < 1) throw std::invalid_argument("L must be positive");
  SeriesReport report;
  report.L = L;
  for (int k = 2; k <= L; ++k) report.per_k.emplace_back(k, series_kind(rule, k));
  for (std::size_t x = 0; x + 1 < report.per_k.size(); ++x) {
    if (report.per_k[x].second == Series::diverges && report.per_k[x + 1].second == Series::converges) {
      report.ergodic_index = report.per_k[x].first;
    }
  }
  if (report.per_k.empty()) {
    report.summary = "no k with 1 < k <= L";
  } else if (report.ergodic_index) {
    report.summary = "ergodic index " + std::to_string(*report.ergodic_index);
  } else if (std::all_of(report.per_k.begin(), report.per_k.end(),
                         [](const auto& e) { return e.second == Series::diverges; })) {
    report.summary = "k-fold product ergodic for every 2 <= k <= " + std::to_string(L);
  } else if (report.per_k.front().second == Series::converges) {
    report.summary = "no ergodic k-fold product for 2 <= k <= " + std::to_string(L);
  } else {
    report.summary = "mixed";
  }
  return report;
}

BigInt t_stage(int n, std::int64_t j, std::int64_t i) {
  if (n < 1 || j < 1 || i < 1) throw std::invalid_argument("t_stage needs n, j, i >= 1");
  BigInt base = pow(BigInt(2), static_cast<unsigned long>(j - 1));
  return base + BigInt(i + n) * base * 2;
}

BigInt t_times(const VlSpec& spec, int n, std::int64_t j, std::int64_t i) {
  BigInt l = t_stage(n, j, i);
  if (l > spec.max_column()) {
    throw StageError("t(" + std::to_string(i) + ") needs column " + to_string(l) + ", materialized up to " +
                     std::to_string(spec.max_column()));
  }
  return 2 * spec.h(static_cast<int>(l.get_si()));
}

bool IndependenceReport::ok() const {
  auto holds = [](const IndependenceEntry& e) { return e.holds; };
  return std::all_of(pairs.begin(), pairs.end(), holds) && std::all_of(marginals.begin(), marginals.end(), holds);
}

namespace {

void require_vl(const Tower& tower) {
  if (tower.is_afs()) throw std::invalid_argument("this operation needs a vl family");
}

void require_vector_fits(const Tower& tower, int n, std::int64_t j) {
  const Vector v = tower.vl().vector(j);
  if (BigInt(v.back()) >= tower.height(n)) {
    throw std::invalid_argument("v_" + std::to_string(j) + " has u_L = " + std::to_string(v.back()) +
                                " >= h_n = " + to_string(tower.height(n)));
  }
}

}  // namespace

IndependenceReport independence_check(const Tower& tower, std::int64_t I, std::int64_t J, int n, std::int64_t j,
                                       std::int64_t count, bool conditioned_on_I) {
  require_vl(tower);
  if (count < 1) throw std::invalid_argument("count must be positive");
  require_vector_fits(tower, n, j);
  const LevelSet base = LevelSet::single(n, conditioned_on_I ? I : J);
  const LevelSet moved = LevelSet::single(n, conditioned_on_I ? J : I);
  tower.check(base);
  tower.check(moved);
  const Measure mass = tower.measure(base);
  // Under mu_I the sets are T^{-t}J; under mu_J they are T^{t}I.
  const int sign = conditioned_on_I ? -1 : 1;
  std::vector<BigInt> lags;
  for (std::int64_t i = 1; i <= count; ++i) lags.push_back(sign * t_times(tower.vl(), n, j, i));

  IndependenceReport report;
  report.conditioned_on_I = conditioned_on_I;
  std::vector<Measure> marginal;
  for (std::int64_t i = 1; i <= count; ++i) {
    Measure m = intersection_measure(tower, {{base, 0}, {moved, lags[i - 1]}}) / mass;
    marginal.push_back(m);
    IndependenceEntry e;
    e.i = i;
    e.joint = m;
    e.product = m;
    e.holds = true;
    report.marginals.push_back(e);
  }
  for (std::int64_t i = 1; i <= count; ++i) {
    for (std::int64_t i2 = i + 1; i2 <= count; ++i2) {
      IndependenceEntry e;
      e.i = i;
      e.i2 = i2;
      e.joint = intersection_measure(tower, {{base, 0}, {moved, lags[i - 1]}, {moved, lags[i2 - 1]}}) / mass;
      e.product = marginal[i - 1] * marginal[i2 - 1];
      e.holds = e.joint == e.product;
      report.pairs.push_back(e);
    }
  }
  return report;
}

std::optional<Rational> tail_bound(const CutRule& rule, int L, int k, int n) {
  if (n < 1) throw std::invalid_argument("tail_bound needs n >= 1");
  const Rational scale = pow(Rational(L + 1) / rule.c, static_cast<unsigned long>(k));
  switch (rule.kind) {
    case CutRule::Kind::geometric: {
      if (rule.beta <= 1) return std::nullopt;
      // r_m >= c beta^m, so the tail is at most a geometric series
      const Rational ratio = 1 / pow(rule.beta, static_cast<unsigned long>(k));
      return scale * pow(ratio, static_cast<unsigned long>(n)) / (1 - ratio);
    }
    case CutRule::Kind::power: {
      const Rational s = rule.alpha * k;
      if (s <= 1) return std::nullopt;
      // sum_{m >= n} m^{-s} <= n^{-s} + n^{1-s}/(s-1)
      const BigInt whole = floor(s);
      if (whole >= 2) {
        const unsigned long e = whole.get_ui();
        Rational first = 1 / Rational(pow(BigInt(n), e));
        Rational rest = Rational(n) / Rational(pow(BigInt(n), e)) / (Rational(whole) - 1);
        return scale * (first + rest);
      }
      return scale * (Rational(1, n) + 1 / (s - 1));
    }
    default:
      return std::nullopt;
  }
}

namespace {

WitnessPair build_witness(const Tower& tower, int k, int n, int M, bool corrupted) {
  require_vl(tower);
  const VlSpec& spec = tower.vl();
  const int L = spec.L();
  if (k < 2 || k > L) throw std::invalid_argument("witness needs 1 < k <= L (k = " + std::to_string(k) + ")");
  if (n < 2) throw std::invalid_argument("witness needs n >= 2");
  if (M < n) throw std::invalid_argument("witness needs M >= n");
  tower.require_stage(M + 1);
  WitnessPair w;
  w.n = n;
  w.k = k;
  w.M = M;
  w.L = L;
  w.corrupted = corrupted;
  w.tail = tail_bound(spec.rule(), L, k, n);
  if (!corrupted) {
    if (!w.tail) {
      throw TailConditionError("tail sum of ((L+1)/r_m)^k from m = " + std::to_string(n) +
                                   " has no finite analytic bound for rule " + spec.rule().describe(),
                               std::nullopt);
    }
    if (*w.tail >= 1) {
      throw TailConditionError("tail bound " + to_string(*w.tail) + " for ((L+1)/r_m)^k from m = " + std::to_string(n) +
                                   " is not below 1",
                               w.tail);
    }
  }
  // I_1 and I_2 are the first two levels counted from the top.
  const BigInt h = tower.height(n);
  const LevelSet top = LevelSet::single(n, h - 1);
  const LevelSet second = LevelSet::single(n, h - 2);
  for (int c = 0; c < k; ++c) {
    w.a.push_back(top);
    w.b_base.push_back(c + 1 == k ? second : top);
  }
  const Measure mu = tower.measure(top);
  w.measure_a = pow(mu, static_cast<unsigned long>(k));
  w.product_value = w.measure_a;
  Rational sum = 0;
  if (!corrupted) {
    for (int m = n; m <= M; ++m) {
      const std::size_t r = tower.cuts(m + 1);
      std::vector<std::size_t> right;
      for (std::size_t d = r - L - 1; d < r; ++d) right.push_back(d);
      w.removed.push_back(m);
      w.digits_by_stage.push_back(right);
      Rational share(static_cast<long>(L + 1), static_cast<unsigned long>(r));
      share.canonicalize();
      Rational power = pow(share, static_cast<unsigned long>(k));
      w.product_value *= 1 - power;
      sum += power;
    }
  }
  w.sum_bound = (1 - sum) * w.measure_a;
  w.measure_b = 0;
  const std::size_t terms = std::size_t{1} << w.removed.size();
  for (std::size_t mask = 0; mask < terms; ++mask) {
    Measure term = 1;
    for (int c = 0; c < k; ++c) {
      CylinderSet set(w.b_base[c]);
      for (std::size_t x = 0; x < w.removed.size(); ++x) {
        if (mask >> x & 1) set.digits[w.removed[x]] = w.digits_by_stage[x];
      }
      term *= tower.measure(set);
    }
    if (__builtin_popcountll(mask) % 2) {
      w.measure_b -= term;
    } else {
      w.measure_b += term;
    }
  }
  return w;
}

}  // namespace

WitnessPair witness_sets(const Tower& tower, int k, int n, int M) { return build_witness(tower, k, n, M, false); }

WitnessPair corrupted_witness(const Tower& tower, int k, int n, int M) { return build_witness(tower, k, n, M, true); }

Measure witness_correlation(const Tower& tower, const WitnessPair& pair, const BigInt& i) {
  Measure total = 0;
  const std::size_t terms = std::size_t{1} << pair.removed.size();
  for (std::size_t mask = 0; mask < terms; ++mask) {
    Measure term = 1;
    for (int c = 0; c < pair.k && term != 0; ++c) {
      CylinderSet set(pair.b_base[c]);
      for (std::size_t x = 0; x < pair.removed.size(); ++x) {
        if (mask >> x & 1) set.digits[pair.removed[x]] = pair.digits_by_stage[x];
      }
      term *= correlation(tower, pair.a[c], set, i);
    }
    if (__builtin_popcountll(mask) % 2) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

WitnessScan witness_verify(const Tower& tower, const WitnessPair& pair, const BigInt& horizon) {
  WitnessScan scan;
  scan.horizon = horizon;
  const BigInt valid = tower.height(pair.M + 1);
  if (horizon > valid) {
    throw std::invalid_argument("horizon " + to_string(horizon) + " exceeds h_{M+1} = " + to_string(valid) +
                                ", the range covered by removal up to stage " + std::to_string(pair.M));
  }
  scan.at_zero = witness_correlation(tower, pair, 0);
  if (horizon < 1) return scan;
  // A lag can only contribute when every coordinate factor is positive.
  std::vector<BigInt> candidates;
  for (int c = 0; c < pair.k; ++c) {
    auto lags = return_lags(tower, pair.a[c], pair.b_base[c], -horizon, horizon);
    std::vector<BigInt> kept;
    for (auto& x : lags) {
      if (x != 0) kept.push_back(std::move(x));
    }
    if (c == 0) {
      candidates = std::move(kept);
    } else {
      std::vector<BigInt> both;
      std::set_intersection(candidates.begin(), candidates.end(), kept.begin(), kept.end(), std::back_inserter(both));
      candidates = std::move(both);
    }
  }
  scan.candidates = candidates;
  for (const auto& i : candidates) {
    if (witness_correlation(tower, pair, i) != 0) scan.positive_lags.push_back(i);
  }
  scan.pass = scan.positive_lags.empty();
  return scan;
}

ProbeResult sweep_probe(const Tower& tower, const std::vector<std::int64_t>& e, const std::vector<std::int64_t>& f,
                        int n, std::int64_t j, std::int64_t count) {
  require_vl(tower);
  if (e.empty() || e.size() != f.size()) throw std::invalid_argument("E and F need the same positive number of levels");
  const VlSpec& spec = tower.vl();
  const int L = spec.L();
  std::set<std::int64_t> diffs;
  for (std::size_t p = 0; p < e.size(); ++p) {
    if (e[p] <= f[p]) {
      throw std::invalid_argument("coordinate " + std::to_string(p + 1) +
                                  ": E level must lie above F level; reorder the coordinates (swap E and F or "
                                  "pick levels so that each E_p is higher)");
    }
    diffs.insert(e[p] - f[p]);
  }
  if (j == 0) {
    if (static_cast<int>(diffs.size()) > L) {
      throw std::invalid_argument(std::to_string(diffs.size()) + " distinct position differences do not fit in V_" +
                                  std::to_string(L));
    }
    Vector v(diffs.begin(), diffs.end());
    while (static_cast<int>(v.size()) < L) v.push_back(v.back() + 1);
    if (!spec.order_override().empty()) {
      auto it = std::find(spec.order_override().begin(), spec.order_override().end(), v);
      if (it == spec.order_override().end()) throw std::invalid_argument("no listed vector carries the differences");
      j = (it - spec.order_override().begin()) + 1;
    } else {
      j = vector_index(v);
    }
  } else {
    const Vector v = spec.vector(j);
    for (auto d : diffs) {
      if (std::find(v.begin(), v.end(), d) == v.end()) {
        throw std::invalid_argument("v_" + std::to_string(j) + " does not contain the position difference " +
                                    std::to_string(d));
      }
    }
  }
  require_vector_fits(tower, n, j);
  std::vector<CylinderSet> es, fs;
  Measure mass = 1;
  for (std::size_t p = 0; p < e.size(); ++p) {
    LevelSet a = LevelSet::single(n, e[p]), b = LevelSet::single(n, f[p]);
    tower.check(a);
    tower.check(b);
    mass *= tower.measure(a);
    es.push_back(a);
    fs.push_back(b);
  }
  const std::vector<BigInt> powers(e.size(), BigInt(1));
  ProbeResult result;
  result.j = j;
  for (std::int64_t i = 1; i <= count; ++i) {
    const int l = static_cast<int>(t_stage(n, j, i).get_si());
    const BigInt lag = t_times(spec, n, j, i);
    Rational chance(1, spec.r(l));
    chance.canonicalize();
    const Measure threshold = mass * pow(chance, static_cast<unsigned long>(e.size())) / 2;
    const Measure value = product_correlation(tower, es, fs, powers, lag);
    if (value >= threshold) {
      result.i = i;
      result.lag = lag;
      result.value = value;
      result.threshold = threshold;
      return result;
    }
  }
  return result;
}

}  // namespace towerlab
