#pragma once

// The four-cut family: G_{n+1} is G_n cut into four equal subcolumns with
// a_n, b_n, c_n, d_n spacers placed on them and restacked left to right.
//
//   p_n = H_n + a_n    l_n = H_n + b_n    q_n = H_n + c_n    m_n = H_n + d_n
//   h_{n+1} = p_n + l_n + q_n + H_n       H_{n+1} = p_n + l_n + q_n + m_n
//
// with H_0 = h_0 = 1.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "towerlab/column.hpp"
#include "towerlab/exact.hpp"
#include "towerlab/rule.hpp"

namespace towerlab {

struct AfsStage {
  int n = 0;
  BigInt a, b, c, d;
  BigInt p, l, q, m;
  BigInt H, h;
  BigInt next_H, next_h;
};

/// Declared limiting behaviour of p_n/q_n, used for exact accumulation-set
/// membership. `constant`: the single value. `periodic`: p_n/q_n eventually
/// cycles through `values`. `accumulation`: the finite accumulation set.
struct RatioRule {
  enum class Kind { constant, periodic, accumulation };
  Kind kind = Kind::constant;
  std::vector<Rational> values;

  std::vector<Rational> accumulation_set() const;
};

/// How a, b, c, d are produced: an explicit prefix per sequence, then rules.
/// Rules are evaluated in the order a, c, b, d. Names available to the
/// rules: n, H, h; then a, p for c; then c, q for b; then b, l, hn1 (h_{n+1})
/// for d.
struct AfsGenerator {
  std::array<std::vector<BigInt>, 4> prefix;  // a, b, c, d
  std::array<Rule, 4> rules;                  // a, b, c, d
  std::string preset;                         // "" or kPresetInfiniteErgodicIndex

  bool has_rule(int which) const { return !rules[which].empty(); }
};

inline constexpr const char* kPresetInfiniteErgodicIndex = "infinite-ergodic-index";

class AfsParams {
 public:
  AfsParams() = default;

  /// Materializes stage parameters for n = 0..up_to.
  static AfsParams materialize(AfsGenerator generator, int up_to);

  const AfsStage& stage(int n) const;
  int last_stage() const { return static_cast<int>(stages_.size()) - 1; }
  const std::vector<AfsStage>& stages() const { return stages_; }
  const AfsGenerator& generator() const { return generator_; }

  /// Columns G_0 .. G_{last_stage()+1} are available.
  int max_column() const { return last_stage() + 1; }
  BigInt H(int n) const;
  BigInt h(int n) const;

  const std::optional<RatioRule>& ratio_rule() const { return ratio_rule_; }
  void set_ratio_rule(std::optional<RatioRule> rule) { ratio_rule_ = std::move(rule); }

  /// Column G_n (n <= max_column()).
  Column column(int n) const;

 private:
  AfsGenerator generator_;
  std::vector<AfsStage> stages_;
  std::optional<RatioRule> ratio_rule_;
};

/// Explicit-prefix params from (a, b, c, d) tuples.
AfsParams afs_from_prefix(const std::vector<std::array<BigInt, 4>>& abcd);

struct CheckEntry {
  int stage = 0;
  std::string check;
  bool pass = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckEntry> entries;
  bool ok() const;
  std::vector<CheckEntry> failures() const;
};

/// Per-stage check of l_n > n(p_n+q_n+2h_n), m_n > n h_{n+1}, and the
/// growth certificate p_n >= n h_n standing in for p_n/h_n -> infinity.
ValidationReport validate_W(const AfsParams& params, int up_to);

/// validate_W plus p_n <= q_n.
ValidationReport validate_V(const AfsParams& params, int up_to);

/// a_n = 3h_n, c_n = a_n + 1, with l_n and m_n one above their lower bounds
/// (b_n, d_n at least 1).
AfsGenerator preset_infinite_ergodic_index_generator();
AfsParams preset_infinite_ergodic_index(int up_to);

/// Rule texts for b and d that fill l_n, m_n minimally under the W schema.
inline constexpr const char* kMinimalBRule = "max(1, n*(p+q+2*h)+1-H)";
inline constexpr const char* kMinimalDRule = "max(1, n*hn1+1-H)";

}  // namespace towerlab
