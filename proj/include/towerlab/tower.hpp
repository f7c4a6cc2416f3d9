#pragma once

// A family descriptor together with a lazily built, shared column cache.

#include <memory>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "towerlab/afs.hpp"
#include "towerlab/column.hpp"
#include "towerlab/exact.hpp"
#include "towerlab/vl.hpp"

namespace towerlab {

using FamilySpec = std::variant<AfsParams, VlSpec>;

std::string family_kind(const FamilySpec& family);

/// Builds the stage-n column directly from the family parameters.
Column build_column(const FamilySpec& family, int n);

struct HeightPair {
  BigInt H;  // column height
  BigInt h;  // marker height (afs4); equal to H for vl
};

/// Heights of columns 0..up_to.
std::vector<HeightPair> heights(const FamilySpec& family, int up_to);

class Tower {
 public:
  explicit Tower(FamilySpec family);

  const FamilySpec& family() const { return family_; }
  bool is_afs() const { return std::holds_alternative<AfsParams>(family_); }
  const AfsParams& afs() const;
  const VlSpec& vl() const;

  /// Highest stage whose column can be built.
  int max_stage() const { return max_stage_; }

  const Column& column(int n) const;
  const BigInt& height(int n) const;
  const Rational& width(int n) const;
  std::size_t cuts(int n) const { return column(n).cuts(); }

  /// Throws StageError naming the stage when n is out of range.
  void require_stage(int n) const;

  /// Checks that every index lies inside its column.
  void check(const LevelSet& set) const;
  void check(const CylinderSet& set) const;

  Measure measure(const LevelSet& set) const;
  Measure measure(const CylinderSet& set) const;

  /// Base levels that satisfy the digit restrictions at stages below the
  /// base stage (such restrictions select whole levels).
  LevelSet restrict_below(const CylinderSet& set) const;

 private:
  FamilySpec family_;
  int max_stage_ = 0;
  std::vector<BigInt> heights_;
  std::vector<Rational> widths_;
  mutable std::shared_mutex mutex_;
  mutable std::vector<std::shared_ptr<const Column>> cache_;
};

}  // namespace towerlab
