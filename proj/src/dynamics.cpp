#include "towerlab/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace towerlab {

namespace {

const std::vector<std::size_t>* restriction(const CylinderSet& set, int key) {
  auto it = set.digits.find(key);
  return it == set.digits.end() ? nullptr : &it->second;
}

std::vector<std::size_t> allowed_digits(const CylinderSet& set, int key, std::size_t cuts) {
  if (const auto* r = restriction(set, key)) return *r;
  std::vector<std::size_t> all(cuts);
  for (std::size_t c = 0; c < cuts; ++c) all[c] = c;
  return all;
}

bool allows(const std::vector<std::size_t>* r, std::size_t digit) {
  return r == nullptr || std::binary_search(r->begin(), r->end(), digit);
}

int max_key(const CylinderSet& set) { return set.digits.empty() ? -1 : set.digits.rbegin()->first; }

bool contains_sorted(const std::vector<BigInt>& v, const BigInt& x) { return std::binary_search(v.begin(), v.end(), x); }

/// Counts points of the stage-m source set whose translates by the residual
/// shifts land in the corresponding targets.
class IntersectionCounter {
 public:
  IntersectionCounter(const Tower& tower, int base_stage, std::vector<BigInt> source, const CylinderSet& source_set,
                      std::vector<std::vector<BigInt>> targets, std::vector<const CylinderSet*> target_sets)
      : tower_(tower),
        base_(base_stage),
        source_(std::move(source)),
        source_set_(source_set),
        targets_(std::move(targets)),
        target_sets_(std::move(target_sets)) {}

  BigInt count(int m, const std::vector<BigInt>& d) {
    const BigInt reach = tower_.height(m) - 1;
    for (const auto& x : d) {
      if (abs(x) > reach) return 0;
    }
    if (m == base_) return count_base(d);
    auto& memo = memo_[m];
    if (auto it = memo.find(d); it != memo.end()) return it->second;

    const Column& col = tower_.column(m);
    const auto& offsets = col.embed_offsets;
    const BigInt inner = tower_.height(m - 1) - 1;
    const std::size_t k = d.size();
    std::vector<std::vector<BigInt>> choices(k);
    std::vector<BigInt> residual(k);
    BigInt total = 0;
    for (std::size_t c : allowed_digits(source_set_, m - 1, col.cuts())) {
      const BigInt& oc = offsets[c];
      bool feasible = true;
      for (std::size_t t = 0; t < k && feasible; ++t) {
        choices[t].clear();
        const BigInt centre = d[t] + oc;
        auto first = std::lower_bound(offsets.begin(), offsets.end(), BigInt(centre - inner));
        auto last = std::upper_bound(offsets.begin(), offsets.end(), BigInt(centre + inner));
        const auto* allowed = restriction(*target_sets_[t], m - 1);
        for (auto it = first; it != last; ++it) {
          if (allows(allowed, static_cast<std::size_t>(it - offsets.begin()))) choices[t].push_back(centre - *it);
        }
        feasible = !choices[t].empty();
      }
      if (!feasible) continue;
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        for (std::size_t t = 0; t < k; ++t) residual[t] = choices[t][pick[t]];
        total += count(m - 1, residual);
        std::size_t t = 0;
        while (t < k && ++pick[t] == choices[t].size()) pick[t++] = 0;
        if (t == k) break;
      }
    }
    memo.emplace(d, total);
    return total;
  }

 private:
  BigInt count_base(const std::vector<BigInt>& d) const {
    unsigned long hits = 0;
    for (const auto& p : source_) {
      bool all = true;
      for (std::size_t t = 0; t < d.size() && all; ++t) all = contains_sorted(targets_[t], p + d[t]);
      if (all) ++hits;
    }
    return hits;
  }

  const Tower& tower_;
  int base_;
  std::vector<BigInt> source_;
  const CylinderSet& source_set_;
  std::vector<std::vector<BigInt>> targets_;
  std::vector<const CylinderSet*> target_sets_;
  std::map<int, std::map<std::vector<BigInt>, BigInt>> memo_;
};

}  // namespace

LevelSet lift(const Tower& tower, const CylinderSet& a, int M) {
  LevelSet base = tower.restrict_below(a);
  const int s = base.stage();
  if (M < s) throw std::invalid_argument("cannot lift stage " + std::to_string(s) + " set down to " + std::to_string(M));
  tower.require_stage(M);
  std::vector<BigInt> current = base.indices();
  for (int m = s; m < M; ++m) {
    const Column& col = tower.column(m + 1);
    std::vector<BigInt> next;
    for (std::size_t c : allowed_digits(a, m, col.cuts())) {
      for (const auto& x : current) next.push_back(col.embed_offsets[c] + x);
    }
    current = std::move(next);
  }
  return LevelSet(M, std::move(current));
}

LevelSet decompose(const Tower& tower, const LevelSet& a, int M) {
  tower.check(a);
  return lift(tower, CylinderSet(a), M);
}

BigInt max_position(const Tower& tower, const CylinderSet& a, int M) {
  LevelSet base = tower.restrict_below(a);
  if (base.empty()) return -1;
  BigInt pos = base.max();
  for (int m = base.stage(); m < M; ++m) {
    const Column& col = tower.column(m + 1);
    auto digits = allowed_digits(a, m, col.cuts());
    if (digits.empty()) return -1;
    pos += col.embed_offsets[digits.back()];
  }
  return pos;
}

int resolving_stage(const Tower& tower, const CylinderSet& a, const BigInt& j, int floor_stage) {
  if (j < 0) throw std::invalid_argument("resolving_stage needs j >= 0");
  for (int M = std::max(floor_stage, a.base.stage()); M <= tower.max_stage(); ++M) {
    if (max_position(tower, a, M) + j <= tower.height(M) - 1) return M;
  }
  throw StageError("shift " + to_string(j) + " of a stage-" + std::to_string(a.base.stage()) +
                   " set is not resolved by stage " + std::to_string(tower.max_stage()) + "; materialize more stages");
}

Measure intersection_measure(const Tower& tower, const std::vector<ShiftedSet>& terms) {
  if (terms.empty()) throw std::invalid_argument("intersection of no sets");
  int base_stage = 0;
  int key_bound = -1;
  BigInt top_shift = terms.front().shift;
  for (const auto& t : terms) {
    tower.check(t.set);
    base_stage = std::max(base_stage, t.set.base.stage());
    key_bound = std::max(key_bound, max_key(t.set));
    if (t.shift > top_shift) top_shift = t.shift;
  }
  std::size_t src = 0;
  while (terms[src].shift != top_shift) ++src;

  std::vector<BigInt> residual;
  std::vector<std::vector<BigInt>> targets;
  std::vector<const CylinderSet*> target_sets;
  BigInt largest = 0;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t == src) continue;
    residual.push_back(top_shift - terms[t].shift);
    if (residual.back() > largest) largest = residual.back();
    targets.push_back(lift(tower, terms[t].set, base_stage).indices());
    target_sets.push_back(&terms[t].set);
  }
  const CylinderSet& source_set = terms[src].set;
  LevelSet source = lift(tower, source_set, base_stage);
  if (source.empty()) return Measure(0);

  const int top = resolving_stage(tower, source_set, largest, std::max(base_stage, key_bound + 1));
  IntersectionCounter counter(tower, base_stage, source.indices(), source_set, std::move(targets),
                              std::move(target_sets));
  Measure m = Rational(counter.count(top, residual)) * tower.width(top);
  m.canonicalize();
  return m;
}

LevelSet apply_power(const Tower& tower, const LevelSet& a, const BigInt& j) {
  tower.check(a);
  if (a.empty() || j == 0) return a;
  if (j < 0) {
    if (a.min() + j < 0) {
      throw NotRepresentable("T^" + to_string(j) + " of a set containing level " + to_string(a.min()) +
                             " is not a finite union of levels");
    }
    std::vector<BigInt> shifted;
    for (const auto& x : a.indices()) shifted.push_back(x + j);
    return LevelSet(a.stage(), std::move(shifted));
  }
  const int M = resolving_stage(tower, CylinderSet(a), j, a.stage());
  std::vector<BigInt> shifted;
  const LevelSet lifted = decompose(tower, a, M);
  for (const auto& x : lifted.indices()) shifted.push_back(x + j);
  return LevelSet(M, std::move(shifted));
}

bool same_set(const Tower& tower, const LevelSet& a, const LevelSet& b) {
  const int M = std::max(a.stage(), b.stage());
  return decompose(tower, a, M) == decompose(tower, b, M);
}

Measure correlation(const Tower& tower, const CylinderSet& a, const CylinderSet& b, const BigInt& j) {
  return intersection_measure(tower, {{a, j}, {b, BigInt(0)}});
}

Measure product_correlation(const Tower& tower, const std::vector<CylinderSet>& as, const std::vector<CylinderSet>& bs,
                            const std::vector<BigInt>& powers, const BigInt& i) {
  if (as.size() != bs.size() || as.size() != powers.size()) {
    throw std::invalid_argument("product_correlation: As, Bs and powers must have equal length");
  }
  if (as.empty()) throw std::invalid_argument("product_correlation: empty product");
  Measure result = 1;
  for (std::size_t t = 0; t < as.size(); ++t) {
    if (powers[t] == 0) throw std::invalid_argument("product_correlation: powers must be nonzero");
    result *= correlation(tower, as[t], bs[t], powers[t] * i);
    if (result == 0) break;
  }
  result.canonicalize();
  return result;
}

Measure triple_correlation(const Tower& tower, const CylinderSet& a, const BigInt& p, const BigInt& q,
                           const BigInt& i) {
  return intersection_measure(tower, {{a, p * i}, {a, q * i}, {a, BigInt(0)}});
}

namespace {

/// Windowed enumeration of lift(B, m) - lift(A, m).
class DifferenceEnumerator {
 public:
  DifferenceEnumerator(const Tower& tower, int base_stage, const CylinderSet& a, const CylinderSet& b)
      : tower_(tower), base_(base_stage), a_(a), b_(b) {
    base_a_ = lift(tower, a, base_stage).indices();
    base_b_ = lift(tower, b, base_stage).indices();
  }

  void collect(int m, BigInt lo, BigInt hi, const BigInt& shift, std::vector<BigInt>& out) {
    const BigInt reach = tower_.height(m) - 1;
    if (lo < -reach) lo = -reach;
    if (hi > reach) hi = reach;
    if (lo > hi) return;
    if (m == base_) {
      for (const auto& p : base_a_) {
        auto first = std::lower_bound(base_b_.begin(), base_b_.end(), BigInt(p + lo));
        auto last = std::upper_bound(base_b_.begin(), base_b_.end(), BigInt(p + hi));
        for (auto it = first; it != last; ++it) out.push_back(*it - p + shift);
      }
      return;
    }
    const auto& deltas = deltas_at(m);
    const BigInt inner = tower_.height(m - 1) - 1;
    auto first = std::lower_bound(deltas.begin(), deltas.end(), BigInt(lo - inner));
    auto last = std::upper_bound(deltas.begin(), deltas.end(), BigInt(hi + inner));
    for (auto it = first; it != last; ++it) collect(m - 1, lo - *it, hi - *it, shift + *it, out);
  }

 private:
  const std::vector<BigInt>& deltas_at(int m) {
    auto it = deltas_.find(m);
    if (it != deltas_.end()) return it->second;
    const Column& col = tower_.column(m);
    std::vector<BigInt> ds;
    auto ca = allowed_digits(a_, m - 1, col.cuts());
    auto cb = allowed_digits(b_, m - 1, col.cuts());
    for (auto c : ca) {
      for (auto c2 : cb) ds.push_back(col.embed_offsets[c2] - col.embed_offsets[c]);
    }
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return deltas_.emplace(m, std::move(ds)).first->second;
  }

  const Tower& tower_;
  int base_;
  const CylinderSet& a_;
  const CylinderSet& b_;
  std::vector<BigInt> base_a_, base_b_;
  std::map<int, std::vector<BigInt>> deltas_;
};

std::vector<BigInt> positive_lags(const Tower& tower, const CylinderSet& a, const CylinderSet& b, const BigInt& lo,
                                  const BigInt& hi) {
  std::vector<BigInt> out;
  if (lo > hi) return out;
  const int base_stage = std::max(a.base.stage(), b.base.stage());
  const int floor_stage = std::max({base_stage, max_key(a) + 1, max_key(b) + 1});
  if (max_position(tower, a, floor_stage) < 0) return out;
  const int top = resolving_stage(tower, a, hi, floor_stage);
  DifferenceEnumerator diffs(tower, base_stage, a, b);
  diffs.collect(top, lo, hi, 0, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<BigInt> return_lags(const Tower& tower, const CylinderSet& a, const CylinderSet& b, const BigInt& lo,
                                const BigInt& hi) {
  tower.check(a);
  tower.check(b);
  std::vector<BigInt> out;
  if (lo > hi) return out;
  if (lo < 0) {
    BigInt upper = hi < -1 ? hi : BigInt(-1);
    for (const auto& j : positive_lags(tower, b, a, -upper, -lo)) out.push_back(-j);
    std::reverse(out.begin(), out.end());
  }
  if (lo <= 0 && hi >= 0 && correlation(tower, a, b, 0) > 0) out.push_back(0);
  if (hi > 0) {
    for (auto& j : positive_lags(tower, a, b, lo > 1 ? lo : BigInt(1), hi)) out.push_back(std::move(j));
  }
  return out;
}

}  // namespace towerlab
