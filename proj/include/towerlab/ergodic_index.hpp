#pragma once

// The V_L family: which k-fold products are ergodic, exact independence of
// the return sets T^{-t(i)}J, the non-ergodicity witness for convergent cut
// series, and a probe that looks for a sweeping lag.

#include <optional>
#include <string>
#include <vector>

#include "towerlab/column.hpp"
#include "towerlab/dynamics.hpp"
#include "towerlab/exact.hpp"
#include "towerlab/tower.hpp"
#include "towerlab/vl.hpp"

namespace towerlab {

class AnalyticTestUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Series { diverges, converges };
std::string to_string(Series s);

struct SeriesReport {
  int L = 1;
  std::vector<std::pair<int, Series>> per_k;  // k = 2..L
  /// k with divergence at k and convergence at k + 1 <= L.
  std::optional<int> ergodic_index;
  std::string summary;
};

/// Comparison test for sum_n r_n^{-k}, 2 <= k <= L. Throws
/// AnalyticTestUnavailable for rules without a closed form.
SeriesReport series_index(const CutRule& rule, int L);

/// l(i) = 2^{j-1} + (i + n) 2^j.
BigInt t_stage(int n, std::int64_t j, std::int64_t i);

/// t(i) = 2 h_{l(i)}; throws StageError naming l(i) when not materialized.
BigInt t_times(const VlSpec& spec, int n, std::int64_t j, std::int64_t i);

struct IndependenceEntry {
  std::int64_t i = 0, i2 = 0;  // i2 == 0 for a marginal
  Measure joint;               // conditional measure of the intersection
  Measure product;             // product of the marginals (marginal itself when i2 == 0)
  bool holds = true;
};

struct IndependenceReport {
  bool conditioned_on_I = true;  // false: the T^{t(i)} I variant under mu_J
  std::vector<IndependenceEntry> marginals;
  std::vector<IndependenceEntry> pairs;
  bool ok() const;
};

/// Exact pairwise independence of T^{-t(i)} J under mu_I (or of T^{t(i)} I
/// under mu_J), 1 <= i < i' <= count. Levels are bottom-based indices of C_n.
/// Throws std::invalid_argument when u_L >= h_n.
IndependenceReport independence_check(const Tower& tower, std::int64_t I, std::int64_t J, int n, std::int64_t j,
                                       std::int64_t count, bool conditioned_on_I = true);

/// Analytic upper bound for sum_{m >= n} ((L+1)/r_m)^k, when available.
std::optional<Rational> tail_bound(const CutRule& rule, int L, int k, int n);

class TailConditionError : public std::runtime_error {
 public:
  TailConditionError(const std::string& what, std::optional<Rational> bound)
      : std::runtime_error(what), bound_(std::move(bound)) {}
  const std::optional<Rational>& bound() const { return bound_; }

 private:
  std::optional<Rational> bound_;
};

/// A = I_1^k and B = (I_1^{k-1} x I_2) minus the union over n <= m <= M of
/// R_m^k, where I_1, I_2 are the top two levels of C_n and R_m is the part
/// of C_m in its last L + 1 subcolumns.
struct WitnessPair {
  int n = 0, k = 0, M = 0, L = 0;
  std::vector<LevelSet> a;       // k coordinates
  std::vector<LevelSet> b_base;  // k coordinates before removal
  std::vector<int> removed;                              // stages m whose R_m^k is removed
  std::vector<std::vector<std::size_t>> digits_by_stage;  // 0-based copies of C_m forming R_m
  Measure measure_a;
  Measure measure_b;      // exact, by inclusion-exclusion
  Measure product_value;  // prod_m (1 - ((L+1)/r_m)^k) mu(I_1)^k
  Measure sum_bound;      // (1 - sum_m ((L+1)/r_m)^k) mu(I_1)^k
  std::optional<Rational> tail;  // analytic tail bound used for the precondition
  bool corrupted = false;        // removal skipped (negative control)
};

/// Builds the witness pair. Throws std::invalid_argument unless 1 < k <= L
/// and n <= M, and TailConditionError when the tail bound is not below 1.
WitnessPair witness_sets(const Tower& tower, int k, int n, int M);

/// Same sets without the removal: a negative control for witness_verify.
WitnessPair corrupted_witness(const Tower& tower, int k, int n, int M);

/// mu^k(T_k^i A ∩ B), exact.
Measure witness_correlation(const Tower& tower, const WitnessPair& pair, const BigInt& i);

struct WitnessScan {
  bool pass = true;
  BigInt horizon;
  std::vector<BigInt> candidates;       // lags where every coordinate can meet
  std::vector<BigInt> positive_lags;    // lags with mu^k(T_k^i A ∩ B) > 0
  Measure at_zero;
};

/// Zero correlation for every 0 < |i| <= horizon. The truncated removal only
/// supports horizons up to h_{M+1}; larger horizons throw std::invalid_argument.
WitnessScan witness_verify(const Tower& tower, const WitnessPair& pair, const BigInt& horizon);

struct ProbeResult {
  std::int64_t j = 0;
  std::optional<std::int64_t> i;
  BigInt lag;
  Measure value, threshold;
};

/// Least i <= count with mu^k(T_k^{t(i)} E ∩ F) >= (1/2) mu^k(E) r_{l(i)}^{-k}.
/// E_p and F_p are bottom-based levels of C_n with E_p above F_p. When j is 0
/// the vector v_j is chosen to list the position differences.
ProbeResult sweep_probe(const Tower& tower, const std::vector<std::int64_t>& e, const std::vector<std::int64_t>& f,
                        int n, std::int64_t j, std::int64_t count);

}  // namespace towerlab
