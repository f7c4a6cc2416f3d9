#pragma once

// Columns, level sets and cylinder sets.
//
// Levels are indexed bottom-to-top from 0 within the column of a given
// stage. A column at stage n is a stack of copies of the stage n-1 column
// (at embed_offsets) interleaved with spacer levels.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "towerlab/exact.hpp"

namespace towerlab {

/// Half-open range [begin, end) of spacer levels.
struct SpacerRange {
  BigInt begin;
  BigInt end;

  BigInt size() const { return end - begin; }
  friend bool operator==(const SpacerRange&, const SpacerRange&) = default;
};

struct Column {
  int stage = 0;
  BigInt height;
  /// Base positions of the copies of the previous column, strictly increasing.
  std::vector<BigInt> embed_offsets;
  std::vector<SpacerRange> spacer_ranges;

  /// Number of subcolumns the previous column was cut into (0 for the base).
  std::size_t cuts() const { return embed_offsets.size(); }
};

/// True when the copies (each of height prev_height) and the spacer ranges
/// partition [0, column.height) exactly.
bool tiles(const Column& column, const BigInt& prev_height);

/// A finite union of levels of the column at `stage`.
class LevelSet {
 public:
  LevelSet() = default;
  LevelSet(int stage, std::vector<BigInt> indices);

  static LevelSet single(int stage, const BigInt& index) { return LevelSet(stage, {index}); }

  int stage() const { return stage_; }
  const std::vector<BigInt>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(const BigInt& index) const;
  const BigInt& min() const { return indices_.front(); }
  const BigInt& max() const { return indices_.back(); }

  std::string to_string() const;

  friend bool operator==(const LevelSet&, const LevelSet&) = default;

 private:
  int stage_ = 0;
  std::vector<BigInt> indices_;
};

/// A level set further restricted by which subcolumn a point occupies at
/// later stages: `digits[m]` lists the allowed copy indices (0-based, left to
/// right) of the stage-m column inside the stage-(m+1) column. Stages without
/// an entry are unrestricted. Used for sets such as "the part of I lying in
/// the last L+1 subcolumns of C_m".
struct CylinderSet {
  LevelSet base;
  std::map<int, std::vector<std::size_t>> digits;

  CylinderSet() = default;
  CylinderSet(LevelSet b) : base(std::move(b)) {}  // NOLINT(google-explicit-constructor)

  /// Intersection of the digit restrictions of two cylinders with equal base.
  CylinderSet restricted(int stage, std::vector<std::size_t> allowed) const;
};

class StageError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(int stage, const std::string& what)
      : std::runtime_error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

/// T^j of the set is not a finite union of levels (negative powers of sets
/// that contain the bottom of every column).
class NotRepresentable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace towerlab
