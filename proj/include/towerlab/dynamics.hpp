#pragma once

// The action of T on level sets and exact correlation measures.
//
// Measures of intersections of translated sets are computed without
// materializing lifted index sets: a point of C_m lies in exactly one copy of
// C_{m-1}, so a shift g between two points of C_m reduces to a shift
// g + o_c - o_c' between their copies. Memoizing on the residual shifts keeps
// the work proportional to the number of distinct residuals, which stays
// small even for lags in the billions.

#include <vector>

#include "towerlab/column.hpp"
#include "towerlab/exact.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

/// T^shift applied to a set.
struct ShiftedSet {
  CylinderSet set;
  BigInt shift;
};

/// mu(T^{f_1} X_1 ∩ ... ∩ T^{f_k} X_k), exact.
Measure intersection_measure(const Tower& tower, const std::vector<ShiftedSet>& terms);

/// Copies of A inside the stage-M column (M >= A.stage()).
LevelSet decompose(const Tower& tower, const LevelSet& a, int M);

/// Explicit lift of a cylinder set to stage M >= base stage, honoring digit
/// restrictions at stages below M.
LevelSet lift(const Tower& tower, const CylinderSet& a, int M);

/// T^j(A) as a level set at the smallest stage where every shifted index
/// stays inside the column. Throws NotRepresentable for negative j when
/// min(A) + j < 0, since lifting never moves the bottom copy.
LevelSet apply_power(const Tower& tower, const LevelSet& a, const BigInt& j);

/// Set equality across stages.
bool same_set(const Tower& tower, const LevelSet& a, const LevelSet& b);

/// mu(T^j A ∩ B).
Measure correlation(const Tower& tower, const CylinderSet& a, const CylinderSet& b, const BigInt& j);

/// prod_t mu(T^{powers[t] i} As[t] ∩ Bs[t]).
Measure product_correlation(const Tower& tower, const std::vector<CylinderSet>& as, const std::vector<CylinderSet>& bs,
                            const std::vector<BigInt>& powers, const BigInt& i);

/// mu(T^{pi} A ∩ T^{qi} A ∩ A).
Measure triple_correlation(const Tower& tower, const CylinderSet& a, const BigInt& p, const BigInt& q, const BigInt& i);

/// All j in [lo, hi] with mu(T^j A ∩ B) > 0, ascending.
std::vector<BigInt> return_lags(const Tower& tower, const CylinderSet& a, const CylinderSet& b, const BigInt& lo,
                                const BigInt& hi);

/// Largest index of the lift of A to stage M.
BigInt max_position(const Tower& tower, const CylinderSet& a, int M);

/// Smallest stage M >= floor_stage at which T^j maps every point of A to a
/// level of C_M (j >= 0).
int resolving_stage(const Tower& tower, const CylinderSet& a, const BigInt& j, int floor_stage);

}  // namespace towerlab
