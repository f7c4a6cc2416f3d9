#pragma once

// Exact measures read off the naive array model.

#include <optional>
#include <vector>

#include "naive_oracle.hpp"
#include "towerlab/exact.hpp"

namespace oracle {

/// mu(T^j A ∩ B) for level sets A (stage sa) and B (stage sb), or nullopt
/// when the model is too short to follow every point of A for j steps.
inline std::optional<towerlab::Rational> correlation(const NaiveTower& o, int sa, const std::vector<std::int64_t>& a,
                                                      int sb, const std::vector<std::int64_t>& b, std::int64_t j) {
  if (j < 0) return correlation(o, sb, b, sa, a, -j);
  for (int M = std::max(sa, sb); M <= o.top_stage(); ++M) {
    auto la = o.lift(sa, a, M);
    if (la.empty()) return towerlab::Rational(0);
    if (la.back() + j >= o.height(M)) continue;
    auto count = o.count(M, {o.indicator(M, sa, a), o.indicator(M, sb, b)}, {0, j});
    towerlab::Rational value(count, o.width_denominator(M));
    value.canonicalize();
    return value;
  }
  return std::nullopt;
}

/// mu(T^{pi} A ∩ T^{qi} A ∩ A) for 0 <= p i <= q i, or nullopt as above.
inline std::optional<towerlab::Rational> triple(const NaiveTower& o, int s, const std::vector<std::int64_t>& a,
                                                std::int64_t pi, std::int64_t qi) {
  for (int M = s; M <= o.top_stage(); ++M) {
    auto la = o.lift(s, a, M);
    if (la.empty()) return towerlab::Rational(0);
    if (la.back() + qi >= o.height(M)) continue;
    auto ind = o.indicator(M, s, a);
    auto count = o.count(M, {ind, ind, ind}, {0, pi, qi});
    towerlab::Rational value(count, o.width_denominator(M));
    value.canonicalize();
    return value;
  }
  return std::nullopt;
}

/// {0 < i <= horizon : mu(T^{pi}A ∩ A) mu(T^{qi}A ∩ A) > 0} for p, q > 0, or
/// nullopt when some lag is out of the model's reach.
inline std::optional<std::vector<std::int64_t>> lambda(const NaiveTower& o, int s, const std::vector<std::int64_t>& a,
                                                       std::int64_t p, std::int64_t q, std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 1; i <= horizon; ++i) {
    auto x = correlation(o, s, a, s, a, p * i);
    auto y = correlation(o, s, a, s, a, q * i);
    if (!x || !y) return std::nullopt;
    if (*x > 0 && *y > 0) out.push_back(i);
  }
  return out;
}

}  // namespace oracle
