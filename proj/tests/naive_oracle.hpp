#pragma once

// Independent brute-force model of a tower: every level of the top column is
// materialized as an array entry that remembers where it sits in each earlier
// column, and T is "move up one slot". Built from raw stage parameters only.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

/// One stacking step: the previous column is copied `spacers.size()` times;
/// copy i is followed by spacers[i] new levels, then `top` more levels.
struct Step {
  std::vector<std::int64_t> spacers;
  std::int64_t top = 0;
};

class NaiveTower {
 public:
  explicit NaiveTower(const std::vector<Step>& steps) {
    // column 0: single level
    std::vector<std::vector<std::int64_t>> chain = {{0}};  // chain[slot] = positions at stages 0..n
    std::vector<std::vector<std::int64_t>> digits = {{}};
    heights_.push_back(1);
    cuts_.push_back(0);
    for (const auto& step : steps) {
      std::vector<std::vector<std::int64_t>> next;
      std::vector<std::vector<std::int64_t>> next_digits;
      const std::size_t depth = heights_.size();
      for (std::size_t copy = 0; copy < step.spacers.size(); ++copy) {
        for (std::size_t slot = 0; slot < chain.size(); ++slot) {
          auto c = chain[slot];
          c.push_back(static_cast<std::int64_t>(next.size()));
          auto d = digits[slot];
          d.push_back(static_cast<std::int64_t>(copy));
          next.push_back(std::move(c));
          next_digits.push_back(std::move(d));
        }
        for (std::int64_t s = 0; s < step.spacers[copy]; ++s) {
          std::vector<std::int64_t> c(depth, -1);
          c.push_back(static_cast<std::int64_t>(next.size()));
          next.push_back(std::move(c));
          next_digits.push_back(std::vector<std::int64_t>(depth, -1));
        }
      }
      for (std::int64_t s = 0; s < step.top; ++s) {
        std::vector<std::int64_t> c(depth, -1);
        c.push_back(static_cast<std::int64_t>(next.size()));
        next.push_back(std::move(c));
        next_digits.push_back(std::vector<std::int64_t>(depth, -1));
      }
      chain = std::move(next);
      digits = std::move(next_digits);
      heights_.push_back(static_cast<std::int64_t>(chain.size()));
      cuts_.push_back(static_cast<std::int64_t>(step.spacers.size()));
      snapshot(chain, digits);
    }
  }

  int top_stage() const { return static_cast<int>(heights_.size()) - 1; }
  std::int64_t height(int n) const { return heights_.at(n); }
  std::int64_t cuts(int n) const { return cuts_.at(n); }

  /// Denominator of the level width at stage n: product of cuts up to n.
  std::int64_t width_denominator(int n) const {
    std::int64_t d = 1;
    for (int k = 1; k <= n; ++k) d *= cuts_[k];
    return d;
  }

  /// Indicator over the slots of column M of the stage-n level set.
  std::vector<char> indicator(int M, int n, const std::vector<std::int64_t>& levels) const {
    const auto& pos = position_.at(M);
    std::vector<char> out(pos.size(), 0);
    std::set<std::int64_t> wanted(levels.begin(), levels.end());
    for (std::size_t slot = 0; slot < pos.size(); ++slot) {
      std::int64_t p = pos[slot][n];
      if (p >= 0 && wanted.count(p)) out[slot] = 1;
    }
    return out;
  }

  /// Same, further restricted to digit `allowed[m]` at stages m listed.
  std::vector<char> indicator(int M, int n, const std::vector<std::int64_t>& levels,
                              const std::vector<std::pair<int, std::vector<std::int64_t>>>& restrictions) const {
    auto out = indicator(M, n, levels);
    const auto& dig = digits_.at(M);
    for (std::size_t slot = 0; slot < out.size(); ++slot) {
      for (const auto& [m, allowed] : restrictions) {
        std::int64_t d = dig[slot][m];
        if (std::find(allowed.begin(), allowed.end(), d) == allowed.end()) out[slot] = 0;
      }
    }
    return out;
  }

  /// Lift of a stage-n level set to stage M as sorted slot indices.
  std::vector<std::int64_t> lift(int n, const std::vector<std::int64_t>& levels, int M) const {
    auto ind = indicator(M, n, levels);
    std::vector<std::int64_t> out;
    for (std::size_t s = 0; s < ind.size(); ++s) {
      if (ind[s]) out.push_back(static_cast<std::int64_t>(s));
    }
    return out;
  }

  /// Count of slots y of column M with T^{shift_k} y in set_k for every k,
  /// stepping T one level at a time. Shifts must be non-negative; the caller
  /// picks M so that no point it cares about is carried off the top.
  std::int64_t count(int M, const std::vector<std::vector<char>>& sets, const std::vector<std::int64_t>& shifts) const {
    const std::int64_t H = heights_.at(M);
    for (auto s : shifts) {
      if (s < 0) throw std::invalid_argument("oracle shifts must be non-negative");
    }
    std::int64_t hits = 0;
    for (std::int64_t y = 0; y < H; ++y) {
      bool all = true;
      for (std::size_t k = 0; k < sets.size() && all; ++k) {
        std::int64_t z = y;
        for (std::int64_t step = 0; step < shifts[k] && z < H; ++step) ++z;
        all = z < H && sets[k][z];
      }
      if (all) ++hits;
    }
    return hits;
  }

 private:
  void snapshot(const std::vector<std::vector<std::int64_t>>& chain,
                const std::vector<std::vector<std::int64_t>>& digits) {
    if (position_.empty()) {
      position_.push_back({{0}});
      digits_.push_back({{}});
    }
    position_.push_back(chain);
    digits_.push_back(digits);
  }

  std::vector<std::int64_t> heights_;
  std::vector<std::int64_t> cuts_;
  std::vector<std::vector<std::vector<std::int64_t>>> position_;
  std::vector<std::vector<std::vector<std::int64_t>>> digits_;
};

/// Steps of the four-cut family from raw (a, b, c, d) rows.
inline std::vector<Step> afs_steps(const std::vector<std::array<std::int64_t, 4>>& rows) {
  std::vector<Step> out;
  for (const auto& r : rows) out.push_back(Step{{r[0], r[1], r[2], r[3]}, 0});
  return out;
}

/// Steps of the V_L family for stages 1..count given the cut counts and the
/// vectors s(1..count). The first step turns the unit column into C_1.
inline std::vector<Step> vl_steps(int L, const std::vector<std::int64_t>& r,
                                  const std::vector<std::vector<std::int64_t>>& s) {
  std::vector<Step> out;
  out.push_back(Step{{0}, 0});
  std::int64_t h = 1;
  for (std::size_t n = 0; n < r.size(); ++n) {
    std::int64_t sigma = 0;
    for (auto u : s[n]) sigma += u;
    Step step;
    std::int64_t stacked = 0;
    for (std::int64_t i = 1; i <= r[n]; ++i) {
      std::int64_t spacers = 0;
      if (i <= r[n] - L - 1) {
        spacers = (2 * L + 1) * h + sigma;
      } else if (i < r[n]) {
        spacers = h + s[n][i - (r[n] - L - 1) - 1];
      }
      step.spacers.push_back(spacers);
      stacked += h + spacers;
    }
    step.top = stacked;
    out.push_back(step);
    h = 2 * stacked;
  }
  return out;
}

}  // namespace oracle
