#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "oracle_support.hpp"
#include "towerlab/dynamics.hpp"
#include "towerlab/tower.hpp"

using namespace towerlab;

namespace {

Tower example_afs() { return Tower(afs_from_prefix({{3, 10, 4, 20}})); }

LevelSet levels(int stage, std::vector<long> xs) {
  std::vector<BigInt> v;
  for (long x : xs) v.emplace_back(x);
  return LevelSet(stage, v);
}

std::vector<BigInt> bigs(std::vector<long> xs) {
  std::vector<BigInt> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(BuildColumn, FourCutFirstStage) {
  Tower t = example_afs();
  const Column& c = t.column(1);
  EXPECT_EQ(c.embed_offsets, bigs({0, 4, 15, 20}));
  EXPECT_EQ(c.height, 41);
  EXPECT_EQ(t.afs().h(1), 21);
  EXPECT_TRUE(tiles(c, 1));
}

TEST(BuildColumn, StageZeroIsUnit) {
  Tower t = example_afs();
  EXPECT_EQ(t.column(0).height, 1);
  EXPECT_TRUE(t.column(0).embed_offsets.empty());
  EXPECT_EQ(t.width(0), 1);
  EXPECT_EQ(t.width(1), Rational(1, 4));
}

TEST(BuildColumn, VlFirstStage) {
  Tower t(VlSpec::materialize(1, CutRule::constant_rule(2), 1));
  const Column& c = t.column(2);
  EXPECT_EQ(c.embed_offsets, bigs({0, 3}));
  ASSERT_EQ(c.spacer_ranges.size(), 2u);
  EXPECT_EQ(c.spacer_ranges[0], (SpacerRange{1, 3}));
  EXPECT_EQ(c.spacer_ranges[1], (SpacerRange{4, 8}));
  EXPECT_EQ(c.height, 8);
  EXPECT_EQ(t.vl().stage(1).g, 4);
}

TEST(BuildColumn, VlTwoCoordinates) {
  VlSpec spec = VlSpec::materialize(2, CutRule::constant_rule(3), 1);
  EXPECT_EQ(spec.stage(1).sigma, 3);
  EXPECT_EQ(spec.stage(1).g, 8);
  EXPECT_EQ(spec.h(2), 16);
}

TEST(BuildColumn, RejectsTooFewCuts) {
  try {
    VlSpec::materialize(2, CutRule::prefix_rule(bigs({3, 2})), 2);
    FAIL() << "expected a construction error";
  } catch (const ConstructionError& e) {
    EXPECT_EQ(e.stage(), 2);
  }
}

TEST(BuildColumn, TilesEveryStage) {
  Tower afs(preset_infinite_ergodic_index(8));
  for (int n = 1; n <= 8; ++n) EXPECT_TRUE(tiles(afs.column(n), afs.height(n - 1))) << n;
  Tower vl(VlSpec::materialize(2, CutRule::constant_rule(4), 7));
  for (int n = 1; n <= 8; ++n) EXPECT_TRUE(tiles(vl.column(n), vl.height(n - 1))) << n;
}

TEST(Heights, MatchColumns) {
  AfsParams p = afs_from_prefix({{3, 10, 4, 20}});
  auto hs = heights(p, 1);
  EXPECT_EQ(hs[0].H, 1);
  EXPECT_EQ(hs[1].H, 41);
  EXPECT_EQ(hs[1].h, 21);
  FamilySpec vl = VlSpec::materialize(1, CutRule::constant_rule(2), 1);
  EXPECT_EQ(heights(vl, 2)[2].H, 8);
  Tower t(preset_infinite_ergodic_index(6));
  auto ph = heights(t.family(), 7);
  for (int n = 0; n <= 7; ++n) EXPECT_EQ(ph[n].H, t.column(n).height);
}

TEST(Decompose, Examples) {
  Tower t = example_afs();
  EXPECT_EQ(decompose(t, levels(0, {0}), 1), levels(1, {0, 4, 15, 20}));
  EXPECT_EQ(decompose(t, levels(0, {0}), 0), levels(0, {0}));
  Tower v(VlSpec::materialize(1, CutRule::constant_rule(2), 1));
  EXPECT_EQ(decompose(v, levels(1, {0}), 2), levels(2, {0, 3}));
  Tower p(preset_infinite_ergodic_index(4));
  LevelSet a = levels(2, {0, 5, 7});
  EXPECT_EQ(p.measure(decompose(p, a, 4)), p.measure(a));
}

TEST(ApplyPower, Examples) {
  Tower t = example_afs();
  LevelSet a = levels(1, {0, 4, 15, 20});
  EXPECT_EQ(apply_power(t, a, 0), a);
  EXPECT_EQ(apply_power(t, a, 4), levels(1, {4, 8, 19, 24}));
  EXPECT_TRUE(same_set(t, apply_power(t, apply_power(t, a, 4), -4), a));
  EXPECT_THROW(apply_power(t, a, -1), NotRepresentable);
}

TEST(ApplyPower, PreservesMeasureAndInverts) {
  Tower t(preset_infinite_ergodic_index(5));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int stage = static_cast<int>(rng() % 3);
    long H = t.height(stage).get_si();
    std::vector<BigInt> xs;
    for (int k = 0; k < 3; ++k) xs.emplace_back(static_cast<long>(rng() % H));
    LevelSet a(stage, xs);
    BigInt j = static_cast<long>(rng() % 200);
    LevelSet b = apply_power(t, a, j);
    EXPECT_EQ(t.measure(b), t.measure(a));
    EXPECT_TRUE(same_set(t, apply_power(t, b, -j), a));
  }
}

TEST(Correlation, Examples) {
  Tower t = example_afs();
  LevelSet i = levels(0, {0});
  EXPECT_EQ(correlation(t, i, i, 0), t.measure(i));
  EXPECT_EQ(correlation(t, i, i, 4), Rational(1, 4));
  EXPECT_EQ(to_string(correlation(t, i, i, 4)), "1/4");
}

TEST(Correlation, ChangeOfVariables) {
  Tower t(preset_infinite_ergodic_index(6));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    int sa = static_cast<int>(rng() % 3), sb = static_cast<int>(rng() % 3);
    LevelSet a(sa, {BigInt(static_cast<long>(rng() % t.height(sa).get_si())),
                    BigInt(static_cast<long>(rng() % t.height(sa).get_si()))});
    LevelSet b(sb, {BigInt(static_cast<long>(rng() % t.height(sb).get_si()))});
    BigInt j = static_cast<long>(rng() % 4000) - 2000;
    EXPECT_EQ(correlation(t, a, b, j), correlation(t, b, a, -j)) << j;
  }
}

TEST(Correlation, IndependentOfLiftStage) {
  Tower t(preset_infinite_ergodic_index(6));
  LevelSet a = levels(1, {0, 3, 9});
  LevelSet b = levels(1, {2, 5});
  for (long j : {0L, 1L, 4L, 49L, 52L, 173L, 600L}) {
    Measure direct = correlation(t, a, b, j);
    EXPECT_EQ(correlation(t, decompose(t, a, 3), decompose(t, b, 2), j), direct) << j;
    EXPECT_EQ(correlation(t, decompose(t, a, 4), b, j), direct) << j;
  }
}

TEST(ProductCorrelation, Factorizes) {
  Tower t(preset_infinite_ergodic_index(4));
  LevelSet i = levels(0, {0});
  std::vector<CylinderSet> as = {i, i};
  EXPECT_EQ(product_correlation(t, as, as, bigs({1, 2}), 2), correlation(t, i, i, 2) * correlation(t, i, i, 4));
  EXPECT_EQ(product_correlation(t, {i}, {i}, bigs({1}), 4), correlation(t, i, i, 4));
  EXPECT_THROW(product_correlation(t, as, {i}, bigs({1, 2}), 1), std::invalid_argument);
  EXPECT_EQ(product_correlation(t, as, as, bigs({1, 2}), 1), 0);
}

TEST(TripleCorrelation, Basics) {
  Tower t(preset_infinite_ergodic_index(5));
  LevelSet a = levels(1, {0, 1, 2});
  EXPECT_EQ(triple_correlation(t, a, 1, 2, 0), t.measure(a));
  LevelSet single = levels(2, {7});
  EXPECT_EQ(triple_correlation(t, single, 1, 2, 1), 0);
}

TEST(ReturnLags, AgreeWithCorrelationScan) {
  Tower t(preset_infinite_ergodic_index(5));
  LevelSet a = levels(1, {0, 5});
  LevelSet b = levels(1, {3});
  auto lags = return_lags(t, a, b, -300, 300);
  std::vector<BigInt> scan;
  for (long j = -300; j <= 300; ++j) {
    if (correlation(t, a, b, j) > 0) scan.emplace_back(j);
  }
  EXPECT_EQ(lags, scan);
}

TEST(CylinderSets, MeasureAndRestriction) {
  Tower t(VlSpec::materialize(2, CutRule::constant_rule(4), 4));
  CylinderSet c(levels(2, {3}));
  CylinderSet r = c.restricted(2, {1, 2, 3});
  EXPECT_EQ(t.measure(r), t.measure(c.base) * Rational(3, 4));
  EXPECT_EQ(correlation(t, r, r, 0), t.measure(r));
  CylinderSet low = CylinderSet(levels(3, {0, 1, 2, 3})).restricted(1, {0});
  // Only level 0 of the four sits in the first copy of C_1; levels 1..3 are spacers.
  EXPECT_EQ(t.restrict_below(low).size(), 1u);
}

namespace {

std::vector<BigInt> to_big(const std::vector<std::int64_t>& v) {
  std::vector<BigInt> out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

}  // namespace

TEST(OracleEquivalence, RandomFourCutFamilies) {
  std::mt19937_64 rng(2024);
  int compared = 0;
  for (int fam = 0; fam < 6; ++fam) {
    std::vector<std::array<std::int64_t, 4>> rows;
    std::vector<std::array<BigInt, 4>> big_rows;
    for (int n = 0; n < 5; ++n) {
      std::array<std::int64_t, 4> r{static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 4),
                                    static_cast<std::int64_t>(rng() % 4), 4 + static_cast<std::int64_t>(rng() % 12)};
      rows.push_back(r);
      big_rows.push_back({r[0], r[1], r[2], r[3]});
    }
    oracle::NaiveTower o(oracle::afs_steps(rows));
    Tower t(afs_from_prefix(big_rows));
    for (int q = 0; q < 60; ++q) {
      int sa = static_cast<int>(rng() % 3), sb = static_cast<int>(rng() % 3);
      std::vector<std::int64_t> a = {static_cast<std::int64_t>(rng() % o.height(sa))};
      std::vector<std::int64_t> b = {static_cast<std::int64_t>(rng() % o.height(sb)),
                                     static_cast<std::int64_t>(rng() % o.height(sb))};
      std::int64_t j = static_cast<std::int64_t>(rng() % 80) - 40;
      auto expected = oracle::correlation(o, sa, a, sb, b, j);
      if (!expected) continue;
      EXPECT_EQ(correlation(t, LevelSet(sa, to_big(a)), LevelSet(sb, to_big(b)), j), *expected);
      ++compared;
    }
  }
  EXPECT_GE(compared, 150);
}

TEST(OracleEquivalence, RandomVlFamilies) {
  std::mt19937_64 rng(99);
  int compared = 0;
  for (int L : {1, 2}) {
    for (long r : {3L, 4L}) {
      VlSpec spec = VlSpec::materialize(L, CutRule::constant_rule(r), 3);
      std::vector<std::vector<std::int64_t>> s;
      for (int n = 1; n <= 3; ++n) s.push_back(spec.stage(n).u);
      oracle::NaiveTower o(oracle::vl_steps(L, {r, r, r}, s));
      Tower t(spec);
      ASSERT_EQ(o.height(4), t.height(4).get_si());
      for (int q = 0; q < 30; ++q) {
        int sa = 1 + static_cast<int>(rng() % 3), sb = 1 + static_cast<int>(rng() % 3);
        std::vector<std::int64_t> a = {static_cast<std::int64_t>(rng() % o.height(sa))};
        std::vector<std::int64_t> b = {static_cast<std::int64_t>(rng() % o.height(sb))};
        std::int64_t j = static_cast<std::int64_t>(rng() % 400) - 200;
        auto expected = oracle::correlation(o, sa, a, sb, b, j);
        if (!expected) continue;
        EXPECT_EQ(correlation(t, LevelSet(sa, to_big(a)), LevelSet(sb, to_big(b)), j), *expected);
        ++compared;
      }
      // Digit-restricted cylinders.
      for (int q = 0; q < 10; ++q) {
        int key = 2 + static_cast<int>(rng() % 2);
        std::int64_t x = static_cast<std::int64_t>(rng() % o.height(2));
        std::vector<std::int64_t> allowed = {static_cast<std::int64_t>(rng() % r), r - 1};
        std::sort(allowed.begin(), allowed.end());
        allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
        std::int64_t j = static_cast<std::int64_t>(rng() % 300);
        const int M = 4;
        auto ia = o.indicator(M, 2, {x});
        auto ib = o.indicator(M, 2, {x}, {{key, allowed}});
        auto la = o.lift(2, {x}, M);
        if (la.back() + j >= o.height(M)) continue;
        Rational expected(o.count(M, {ia, ib}, {0, j}), o.width_denominator(M));
        expected.canonicalize();
        std::vector<std::size_t> digits(allowed.begin(), allowed.end());
        CylinderSet cb = CylinderSet(LevelSet(2, to_big({x}))).restricted(key, digits);
        EXPECT_EQ(correlation(t, LevelSet(2, to_big({x})), cb, j), expected);
        ++compared;
      }
    }
  }
  EXPECT_GE(compared, 100);
}
