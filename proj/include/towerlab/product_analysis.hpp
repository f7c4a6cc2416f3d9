#pragma once

// Two-fold products T^p x T^q of four-cut towers: the stage conditions that
// decide their behaviour, the interval table bounding where copies of the
// bottom block can meet, exact simultaneous return sets, and the classifier.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towerlab/afs.hpp"
#include "towerlab/dynamics.hpp"
#include "towerlab/exact.hpp"
#include "towerlab/synthesis.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

/// |p q_n - q p_n|.
BigInt discrepancy(const AfsParams& params, int n, const BigInt& p, const BigInt& q);

/// |p q_n - q p_n| <= (p + q) h_n.
bool gap_condition(const AfsParams& params, int n, const BigInt& p, const BigInt& q);

/// t with (q_n + l)/q = (p_n + k)/p = t, when both quotients are integers.
std::optional<BigInt> divisibility_condition(const AfsParams& params, int n, const BigInt& p, const BigInt& q,
                                             const BigInt& k, const BigInt& l);

/// Closed integer interval.
struct Interval {
  BigInt lo, hi;
  bool contains(const BigInt& x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

/// Lags j at which T^j D_{n,s} can meet D_{n,t}, where D_{n,s} is the bottom
/// h_n levels of G_n inside the s-th copy (1-based). Off-diagonal entries are
/// [c - h_n, c + h_n] around the copy offset difference c; the diagonal is
/// [0, h_n].
struct KIntervalTable {
  int stage = 0;
  BigInt h;
  Interval diagonal;
  std::vector<std::pair<std::pair<int, int>, Interval>> off_diagonal;  // (s, t) with s < t

  const Interval& at(int s, int t) const;
  /// The diagonal followed by the six off-diagonal intervals.
  std::vector<Interval> all() const;
};

KIntervalTable k_intervals(const AfsParams& params, int n);

/// All i > 0 with i p in a and i q in b.
std::vector<BigInt> simultaneous_hits(const BigInt& p, const BigInt& q, const Interval& a, const Interval& b);

/// Union of simultaneous_hits over every ordered pair of table intervals,
/// restricted to i <= limit.
std::vector<BigInt> table_hits(const KIntervalTable& table, const BigInt& p, const BigInt& q, const BigInt& limit);

/// Target sets for the return-time set; by default both are A.
struct LambdaTargets {
  CylinderSet first;
  CylinderSet second;
};

/// {0 < i <= horizon : mu(T^{pi} A ∩ C) mu(T^{qi} A ∩ D) > 0} where (C, D)
/// is `targets` or (A, A). p and q may be negative.
std::vector<BigInt> lambda_set(const Tower& tower, const BigInt& p, const BigInt& q, const CylinderSet& a,
                               const BigInt& horizon, const std::optional<LambdaTargets>& targets = std::nullopt);

/// lambda_set with targets (TA, A).
std::vector<BigInt> lambda_set_shifted(const Tower& tower, const BigInt& p, const BigInt& q, const LevelSet& a,
                                       const BigInt& horizon);

/// (i, product correlation) for every i in lambda_set.
std::vector<std::pair<BigInt, Measure>> lambda_table(const Tower& tower, const BigInt& p, const BigInt& q,
                                                     const CylinderSet& a, const BigInt& horizon,
                                                     const std::optional<LambdaTargets>& targets = std::nullopt);

/// {0 < i <= horizon : mu(T^{pi} A ∩ T^{qi} A ∩ A) > 0}.
std::vector<BigInt> multiple_return_set(const Tower& tower, const CylinderSet& a, const BigInt& p, const BigInt& q,
                                        const BigInt& horizon);

enum class Membership { member, non_member, unknown };
std::string to_string(Membership m);

struct MembershipReport {
  Membership status = Membership::unknown;
  bool from_rule = false;
  /// Prefix stages with |p/q - p_n/q_n| < epsilon.
  std::vector<int> close_stages;
};

/// Membership of p/q in the accumulation set of p_n/q_n. Exact when the
/// family declares a ratio rule; otherwise prefix evidence only. Throws
/// std::invalid_argument for p > q.
MembershipReport limit_ratio_membership(const AfsParams& params, const BigInt& p, const BigInt& q,
                                        const Rational& epsilon = Rational(1, 100));

enum class Regime { ergodic, conservative_not_ergodic, not_conservative, unknown_at_horizon };
enum class Basis { certificate, prefix_evidence };
std::string to_string(Regime r);
std::string to_string(Basis b);

struct Verdict {
  BigInt p, q;  // pair as classified, after reduction and ordering
  BigInt input_p, input_q;
  bool negative = false;  // T^{-p} x T^q
  bool reduced = false;
  bool swapped = false;
  Regime regime = Regime::unknown_at_horizon;
  Basis basis = Basis::prefix_evidence;
  int threshold = -1;        // stage beyond which the certified condition holds
  int horizon = 0;           // last stage examined
  std::vector<std::pair<std::string, std::string>> facts;
};

class InconsistentCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classifies T^p x T^q (or T^{-p} x T^q) from a synthesis trace, the preset
/// rule, or prefix evidence over stages <= horizon.
Verdict classify(const AfsParams& params, const std::optional<SynthesisTrace>& trace, const BigInt& p,
                 const BigInt& q, int horizon, bool negative = false);

}  // namespace towerlab
