#include "towerlab/tower.hpp"

#include <algorithm>
#include <mutex>

namespace towerlab {

std::string family_kind(const FamilySpec& family) {
  return std::holds_alternative<AfsParams>(family) ? "afs4" : "vl";
}

Column build_column(const FamilySpec& family, int n) {
  if (n < 0) throw StageError("negative stage");
  return std::visit(
      [n](const auto& f) {
        if (n > f.max_column()) {
          throw StageError("column " + std::to_string(n) + " is beyond the materialized prefix (max " +
                           std::to_string(f.max_column()) + ")");
        }
        return f.column(n);
      },
      family);
}

std::vector<HeightPair> heights(const FamilySpec& family, int up_to) {
  std::vector<HeightPair> out;
  for (int n = 0; n <= up_to; ++n) {
    if (const auto* afs = std::get_if<AfsParams>(&family)) {
      if (n > afs->max_column()) throw StageError("stage " + std::to_string(n) + " is beyond the materialized prefix");
      out.push_back({afs->H(n), afs->h(n)});
    } else {
      const auto& vl = std::get<VlSpec>(family);
      if (n > vl.max_column()) throw StageError("stage " + std::to_string(n) + " is beyond the materialized prefix");
      BigInt h = vl.h(n);
      out.push_back({h, h});
    }
  }
  return out;
}

Tower::Tower(FamilySpec family) : family_(std::move(family)) {
  max_stage_ = std::visit([](const auto& f) { return f.max_column(); }, family_);
  for (const auto& hp : heights(family_, max_stage_)) heights_.push_back(hp.H);
  widths_.push_back(Rational(1));
  for (int n = 1; n <= max_stage_; ++n) {
    BigInt cuts;
    if (is_afs()) {
      cuts = 4;
    } else {
      cuts = n == 1 ? BigInt(1) : vl().r(n - 1);
    }
    Rational w = widths_.back() / Rational(cuts);
    w.canonicalize();
    widths_.push_back(w);
  }
  cache_.resize(max_stage_ + 1);
}

const AfsParams& Tower::afs() const {
  if (!is_afs()) throw std::logic_error("family is not afs4");
  return std::get<AfsParams>(family_);
}

const VlSpec& Tower::vl() const {
  if (is_afs()) throw std::logic_error("family is not vl");
  return std::get<VlSpec>(family_);
}

void Tower::require_stage(int n) const {
  if (n < 0 || n > max_stage_) {
    throw StageError("stage " + std::to_string(n) + " is beyond the materialized prefix (0.." +
                     std::to_string(max_stage_) + "); materialize more stages");
  }
}

const Column& Tower::column(int n) const {
  require_stage(n);
  {
    std::shared_lock lock(mutex_);
    if (cache_[n]) return *cache_[n];
  }
  auto built = std::make_shared<const Column>(build_column(family_, n));
  std::unique_lock lock(mutex_);
  if (!cache_[n]) cache_[n] = std::move(built);
  return *cache_[n];
}

const BigInt& Tower::height(int n) const {
  require_stage(n);
  return heights_[n];
}

const Rational& Tower::width(int n) const {
  require_stage(n);
  return widths_[n];
}

void Tower::check(const LevelSet& set) const {
  require_stage(set.stage());
  if (!set.empty() && set.max() >= height(set.stage())) {
    throw std::out_of_range("level " + to_string(set.max()) + " is outside column " + std::to_string(set.stage()) +
                            " of height " + to_string(height(set.stage())));
  }
}

void Tower::check(const CylinderSet& set) const {
  check(set.base);
  for (const auto& [m, allowed] : set.digits) {
    require_stage(m + 1);
    for (auto d : allowed) {
      if (d >= cuts(m + 1)) {
        throw std::out_of_range("subcolumn " + std::to_string(d) + " does not exist at stage " + std::to_string(m));
      }
    }
  }
}

Measure Tower::measure(const LevelSet& set) const {
  check(set);
  Measure m = Rational(static_cast<unsigned long>(set.size())) * width(set.stage());
  m.canonicalize();
  return m;
}

LevelSet Tower::restrict_below(const CylinderSet& set) const {
  check(set);
  const int s = set.base.stage();
  if (set.digits.empty() || set.digits.begin()->first >= s) return set.base;
  const int lowest = set.digits.begin()->first;
  std::vector<BigInt> kept;
  for (const auto& x : set.base.indices()) {
    BigInt pos = x;
    bool keep = true;
    for (int k = s; k > lowest && keep; --k) {
      const Column& col = column(k);
      auto ub = std::upper_bound(col.embed_offsets.begin(), col.embed_offsets.end(), pos);
      std::size_t digit = static_cast<std::size_t>(ub - col.embed_offsets.begin()) - 1;
      BigInt inner = pos - col.embed_offsets[digit];
      if (inner >= height(k - 1)) {
        keep = false;  // spacer added at stage k, outside every earlier column
        break;
      }
      if (auto it = set.digits.find(k - 1); it != set.digits.end()) {
        keep = std::binary_search(it->second.begin(), it->second.end(), digit);
      }
      pos = inner;
    }
    if (keep) kept.push_back(x);
  }
  return LevelSet(s, std::move(kept));
}

Measure Tower::measure(const CylinderSet& set) const {
  const LevelSet base = restrict_below(set);
  Measure m = Rational(static_cast<unsigned long>(base.size())) * width(base.stage());
  for (const auto& [key, allowed] : set.digits) {
    if (key < base.stage()) continue;
    Rational share(static_cast<unsigned long>(allowed.size()), static_cast<unsigned long>(cuts(key + 1)));
    share.canonicalize();
    m *= share;
  }
  return m;
}

}  // namespace towerlab
