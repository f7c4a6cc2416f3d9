#pragma once

// The V_L family. C_1 is a single level. C_{n+1} is C_n cut into r_n
// subcolumns; with s(n) = (u_1..u_L) and sigma = u_1 + ... + u_L, subcolumns
// 1..r_n-L-1 receive (2L+1)h_n + sigma spacers, subcolumn r_n-L-1+d receives
// h_n + u_d, the last receives none; after restacking (height g_n) another
// g_n spacers go on top, so h_{n+1} = 2 g_n.
//
// Stage 0 is a unit column identical to C_1 so that both families share the
// convention that stage 0 has width 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "towerlab/column.hpp"
#include "towerlab/exact.hpp"

namespace towerlab {

using Vector = std::vector<std::int64_t>;

/// v_j (j >= 1) in the order: coordinate sum, then lexicographic.
Vector enumerate_vectors(int L, std::int64_t j);

/// Inverse of enumerate_vectors.
std::int64_t vector_index(const Vector& v);

/// j = 1 + v_2(n), the index of s(n) = v_j.
std::int64_t s_index(std::int64_t n);

/// Cut-count rule r_n, n >= 1, always raised to at least `floor`.
///   constant:  r_n = c
///   power:     r_n = ceil(c * n^alpha)
///   geometric: r_n = ceil(c * beta^n)
///   prefix:    r_n = values[n-1]; stages beyond the list are unavailable
struct CutRule {
  enum class Kind { constant, power, geometric, prefix };
  Kind kind = Kind::constant;
  Rational c = 2;
  Rational alpha = 0;
  Rational beta = 2;
  BigInt floor = 1;
  std::vector<BigInt> values;

  static CutRule constant_rule(BigInt value);
  static CutRule power_rule(Rational c, Rational alpha, BigInt floor = 1);
  static CutRule geometric_rule(Rational c, Rational beta, BigInt floor = 1);
  static CutRule prefix_rule(std::vector<BigInt> values);

  BigInt evaluate(std::int64_t n) const;
  std::string describe() const;
};

struct VlStage {
  int n = 1;
  BigInt r;
  Vector u;  // s(n)
  BigInt sigma;
  BigInt h;  // h_n
  BigInt g;  // g_n
  BigInt next_h;
};

class VlSpec {
 public:
  VlSpec() = default;

  /// Materializes stages 1..up_to (C_1 .. C_{up_to+1}). `order`, when given,
  /// overrides the canonical enumeration: order[j-1] is v_j.
  static VlSpec materialize(int L, CutRule rule, int up_to, std::vector<Vector> order = {});

  int L() const { return L_; }
  const CutRule& rule() const { return rule_; }
  const std::vector<Vector>& order_override() const { return order_; }

  /// v_j under this spec's order.
  Vector vector(std::int64_t j) const;

  const VlStage& stage(int n) const;
  int last_stage() const { return static_cast<int>(stages_.size()); }
  int max_column() const { return last_stage() + 1; }
  const std::vector<VlStage>& stages() const { return stages_; }

  BigInt h(int n) const;
  BigInt r(int n) const { return stage(n).r; }

  Column column(int n) const;

 private:
  int L_ = 1;
  CutRule rule_;
  std::vector<Vector> order_;
  std::vector<VlStage> stages_;
};

}  // namespace towerlab
