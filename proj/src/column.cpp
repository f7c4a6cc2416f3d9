#include "towerlab/column.hpp"

#include <algorithm>

namespace towerlab {

bool tiles(const Column& column, const BigInt& prev_height) {
  std::vector<SpacerRange> pieces = column.spacer_ranges;
  for (const auto& o : column.embed_offsets) pieces.push_back({o, o + prev_height});
  if (column.embed_offsets.empty()) pieces.push_back({0, column.height});
  std::sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) { return x.begin < y.begin; });
  BigInt cursor = 0;
  for (const auto& p : pieces) {
    if (p.begin != cursor || p.end <= p.begin) return false;
    cursor = p.end;
  }
  return cursor == column.height;
}

LevelSet::LevelSet(int stage, std::vector<BigInt> indices) : stage_(stage), indices_(std::move(indices)) {
  if (stage < 0) throw std::invalid_argument("negative stage");
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && indices_.front() < 0) {
    throw std::out_of_range("negative level index " + towerlab::to_string(indices_.front()));
  }
}

bool LevelSet::contains(const BigInt& index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::string LevelSet::to_string() const {
  return std::to_string(stage_) + ":{" + join(indices_) + "}";
}

CylinderSet CylinderSet::restricted(int stage, std::vector<std::size_t> allowed) const {
  CylinderSet out = *this;
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  auto it = out.digits.find(stage);
  if (it == out.digits.end()) {
    out.digits.emplace(stage, std::move(allowed));
  } else {
    std::vector<std::size_t> both;
    std::set_intersection(it->second.begin(), it->second.end(), allowed.begin(), allowed.end(),
                          std::back_inserter(both));
    it->second = std::move(both);
  }
  return out;
}

}  // namespace towerlab
