#pragma once

// Parameter synthesis for prescribed sets of rational directions.
//
// Stages are shared out among target ratios by n(i, j) = 2^{i-1}(2j-1): stage
// n serves the i-th target for the j-th time. The j-th visit also carries an
// offset pair (k(j), l(j)) from a dovetailing schedule, and p_n, q_n are
// chosen so that (q_n + l)/(jq) = (p_n + k)/(jp) is an integer while q_n is
// large against the distance to every listed non-target ratio.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towerlab/afs.hpp"
#include "towerlab/exact.hpp"

namespace towerlab {

/// Parses "p/q" and requires a reduced fraction strictly inside (0, 1).
Rational parse_direction(std::string_view text);

struct DirectionSpec {
  enum class Mode { ergodic_set, three_way };
  Mode mode = Mode::ergodic_set;
  std::vector<Rational> R;   // ergodic_set: targets
  std::vector<Rational> S;   // enumeration prefix of the complement
  std::vector<Rational> R1;  // three_way: ergodic targets
  std::vector<Rational> R2;  // three_way: all conservative targets, R1 ⊆ R2

  /// Ratios served by stages, in order (R, or R2 in three-way mode).
  const std::vector<Rational>& targets() const { return mode == Mode::ergodic_set ? R : R2; }

  /// Throws std::invalid_argument on overlap, containment or range violations.
  void validate() const;
};

std::string to_string(DirectionSpec::Mode mode);

struct BlockIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;
};

/// n(i, j) = 2^{i-1}(2j - 1).
BigInt block_partition(std::int64_t i, std::int64_t j);
/// Inverse of block_partition for n >= 1.
BlockIndex block_of(std::int64_t n);

/// Rounds rho = 1, 2, ... each list every pair with k + l <= rho by
/// increasing k + l, then increasing k. Round rho has (rho+1)(rho+2)/2 pairs.
std::pair<std::int64_t, std::int64_t> pair_schedule(std::int64_t j);
/// Index of the last j in round rho.
std::int64_t schedule_round_end(std::int64_t rho);

class InsufficientPrefix : public std::runtime_error {
 public:
  InsufficientPrefix(std::size_t needed, std::size_t have)
      : std::runtime_error("complement prefix too short: need " + std::to_string(needed) + " entries, have " +
                           std::to_string(have)),
        needed_(needed) {}
  std::size_t needed() const { return needed_; }

 private:
  std::size_t needed_;
};

/// min |r - s_u| over 1 <= u <= i + j; 1 when S is empty.
Rational separation(const Rational& r, const std::vector<Rational>& S, std::int64_t i, std::int64_t j);

struct StageRecord {
  enum class Kind { preset, ergodic, exact };
  int n = 0;
  Kind kind = Kind::preset;
  std::int64_t i = 0, j = 0;
  std::optional<Rational> target;
  std::int64_t k = 0, l = 0;
  Rational delta = 0;
  BigInt t = 0;   // multiplier: (p_n + k)/(jp) = (q_n + l)/(jq) = t, or p_n/p = q_n/q = t
  BigInt tn = 0;  // (p_n + k)/p, the return time used by the ergodicity argument
  BigInt p_n, q_n, h_n;
};

std::string to_string(StageRecord::Kind kind);

struct SynthesisTrace {
  DirectionSpec spec;
  std::vector<StageRecord> stages;

  /// Facts that fail to re-evaluate on `params`; empty when consistent.
  std::vector<std::string> recheck(const AfsParams& params) const;
};

struct SynthesisResult {
  AfsParams params;
  SynthesisTrace trace;
};

SynthesisResult synthesize_R(const DirectionSpec& spec, int up_to);
SynthesisResult synthesize_three_way(const DirectionSpec& spec, int up_to);
SynthesisResult synthesize(const DirectionSpec& spec, int up_to);

}  // namespace towerlab
