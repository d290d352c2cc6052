#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace coarse;

TEST(ControlExact, SinglePoint) {
  auto s = oracle::interval(4, 4);
  for (int n : {0, 1, 3}) {
    for (Length R : {1.0, 10.0}) EXPECT_EQ(control_exact(s, n, R).B, 0);
  }
}

TEST(ControlExact, IntervalBlocksOfThree) {
  const auto res = control_exact(oracle::interval(0, 30), 1, 3);
  EXPECT_EQ(res.B, 2);
  EXPECT_EQ(res.exactness, Exactness::kExact);
  EXPECT_TRUE(verify_cover(oracle::interval(0, 30), res.cover));
  auto small = oracle::interval(0, 12);
  EXPECT_EQ(control_exact(small, 1, 3).B, oracle::exhaustive_control(small, 1, 3));
}

TEST(ControlExact, OneColorIsOneComponent) {
  for (PointId M : {5, 17, 39}) EXPECT_EQ(control_exact(oracle::interval(0, M), 0, 1).B, M);
}

TEST(ControlExact, CapIsEnforced) {
  EXPECT_THROW(control_exact(oracle::interval(0, 45), 1, 2), PreconditionError);
  DimensionLimits wide;
  wide.exact_cap = 60;
  EXPECT_EQ(control_exact(oracle::interval(0, 45), 1, 2, wide).B, 1);
}

TEST(ControlExact, MatchesExhaustiveAndIsMonotone) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_metric(3 + trial % 8, rng);
    std::vector<std::vector<Length>> B(3);
    for (int n = 0; n <= 2; ++n) {
      for (Length R : {1.0, 2.0, 4.0}) {
        const auto res = control_exact(s, n, R);
        EXPECT_EQ(res.B, oracle::exhaustive_control(s, n, R)) << "trial " << trial << " n " << n << " R " << R;
        EXPECT_TRUE(verify_cover(s, res.cover));
        EXPECT_LE(res.B, control_upper(s, n, R).B);
        B[n].push_back(res.B);
      }
    }
    for (int n = 0; n <= 2; ++n) {
      for (std::size_t i = 1; i < B[n].size(); ++i) EXPECT_LE(B[n][i - 1], B[n][i]);
      if (n > 0) {
        for (std::size_t i = 0; i < B[n].size(); ++i) EXPECT_LE(B[n][i], B[n - 1][i]);
      }
    }
  }
}

TEST(CoverBound, FastPathMatchesFloodFill) {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = oracle::random_metric(4 + trial % 20, rng);
    const int n = trial % 3;
    std::vector<int> color(s.size());
    for (auto& c : color) c = static_cast<int>(rng() % (n + 1));
    for (Length R : {1.0, 3.0}) EXPECT_EQ(cover_bound(s, color, n, R), oracle::cover_bound(s, color, R));
  }
}

TEST(ControlUpper, LineBlocks) {
  auto s = oracle::interval(0, 1000);
  const auto res = control_upper(s, 1, 10);
  EXPECT_LE(res.B, 10);
  EXPECT_TRUE(verify_cover(s, res.cover));
}

TEST(ControlUpper, GridBricks) {
  auto s = quarter_plane(60)->truncation(60);
  ASSERT_EQ(s->size(), 61u * 61u);
  const auto res = control_upper(*s, 2, 4, UpperStrategy::kBrick);
  EXPECT_LE(res.B, 3 * (4 + 1));
  EXPECT_TRUE(verify_cover(*s, res.cover));
  EXPECT_THROW(control_upper(oracle::interval(0, 10), 2, 1, UpperStrategy::kBrick), PreconditionError);
}

TEST(ControlUpper, XorDyadicBlocks) {
  auto s = xor_space(10)->truncation(1023);
  const auto res = control_upper(*s, 0, 7);
  EXPECT_LE(res.B, 7);
  EXPECT_TRUE(verify_cover(*s, res.cover));
}

TEST(ControlUpper, EveryStrategyGivesAValidCover) {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_metric(10 + trial % 30, rng);
    for (int n : {0, 1, 2}) {
      for (auto st : {UpperStrategy::kLayered, UpperStrategy::kGreedy, UpperStrategy::kBest}) {
        const auto res = control_upper(s, n, 2, st, trial);
        EXPECT_TRUE(verify_cover(s, res.cover));
        EXPECT_EQ(res.B, oracle::cover_bound(s, res.cover.coloring, 2));
      }
    }
  }
}

TEST(VerifyCover, CatchesARecoloredPoint) {
  auto s = oracle::interval(0, 30);
  auto cover = control_exact(s, 1, 3).cover;
  ASSERT_TRUE(verify_cover(s, cover));
  // Flip a block boundary point: it joins the neighboring block's color class
  // and merges two same-colored blocks into one longer component.
  auto broken = cover;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (broken.coloring[i] != broken.coloring[i - 1]) {
      broken.coloring[i] = broken.coloring[i - 1];
      if (oracle::cover_bound(s, broken.coloring, 3) > cover.B) break;
      broken.coloring[i] = cover.coloring[i];
    }
  }
  EXPECT_FALSE(verify_cover(s, broken));
  auto bad_color = cover;
  bad_color.coloring[0] = 2;
  EXPECT_FALSE(verify_cover(s, bad_color));
}

TEST(ControlLower, IntervalRefutations) {
  auto s = oracle::interval(0, 12);
  auto one = control_lower(s, 0, 1, 11);
  ASSERT_TRUE(one.has_value());
  EXPECT_TRUE(verify_refutation(s, *one));
  auto two = control_lower(s, 1, 3, 1);
  ASSERT_TRUE(two.has_value());
  EXPECT_TRUE(verify_refutation(s, *two));
  EXPECT_GT(oracle::exhaustive_control(s, 1, 3), 1);
  EXPECT_FALSE(control_lower(s, 1, 3, 2).has_value());
}

TEST(ControlLower, HalfLineOneColorFailsOnceLongEnough) {
  auto t = half_line(200);
  for (Length B : {5.0, 20.0}) {
    for (Length r : {50.0, 100.0}) {
      auto s = t->truncation(r);
      for (Length R : {1.0, 3.0}) {
        auto ref = control_lower(*s, 0, R, B);
        ASSERT_TRUE(ref.has_value()) << "B " << B << " r " << r;
        EXPECT_TRUE(verify_refutation(*s, *ref));
      }
    }
  }
}

TEST(ControlLower, RefutationsAreSoundOnRandomSpaces) {
  std::mt19937_64 rng(101);
  int refuted = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_metric(4 + trial % 8, rng);
    for (int n : {0, 1}) {
      for (Length R : {1.0, 3.0}) {
        const Length best = oracle::exhaustive_control(s, n, R);
        EXPECT_FALSE(control_lower(s, n, R, best).has_value());
        if (best > 0) {
          if (auto ref = control_lower(s, n, R, best - 1)) {
            ++refuted;
            EXPECT_TRUE(verify_refutation(s, *ref));
          }
        }
      }
    }
  }
  EXPECT_GT(refuted, 0);
}

TEST(Asdim, LineAndHalfLineAreOne) {
  for (const auto& t : {half_line(256), integer_line(128)}) {
    const auto rep = asdim_estimate(*t, 1, {1, 2, 4}, t->declared_radii());
    EXPECT_EQ(rep.lo, 1) << t->name();
    ASSERT_TRUE(rep.hi.has_value()) << t->name();
    EXPECT_EQ(*rep.hi, 1) << t->name();
    for (const auto& c : rep.table) EXPECT_TRUE(c.verified);
  }
}

TEST(Asdim, XorTowerIsZero) {
  auto t = xor_space(10);
  const auto rep = asdim_estimate(*t, 1, {1, 3, 7}, t->last_radii(3));
  EXPECT_EQ(rep.lo, 0);
  ASSERT_TRUE(rep.hi.has_value());
  EXPECT_EQ(*rep.hi, 0);
}

TEST(Asdim, CombPathMetricIsAtMostOne) {
  auto t = comb_tree(60, CombMetric::kPath);
  const auto rep = asdim_estimate(*t, 1, {1, 2, 4}, t->declared_radii());
  ASSERT_TRUE(rep.hi.has_value());
  EXPECT_LE(*rep.hi, 1);
  EXPECT_EQ(rep.lo, 1);
}

TEST(Raising, Examples) {
  const auto cantor = check_raising_inequality({0, 0}, {1, 1}, 2);
  EXPECT_EQ(cantor.verdict, "consistent");
  EXPECT_TRUE(cantor.bound_attainable);
  EXPECT_FALSE(cantor.preserving_admissible);

  const auto quotient = check_raising_inequality({1, 1}, {1, 1}, 2, true);
  EXPECT_EQ(quotient.verdict, "consistent");
  EXPECT_TRUE(quotient.preserving_admissible);

  EXPECT_EQ(check_raising_inequality({1, 1}, {1, 1}, 1).verdict, "consistent");
  EXPECT_EQ(check_raising_inequality({0, 0}, {3, 3}, 2).verdict, "violation");
  // An open map must preserve dimension.
  EXPECT_EQ(check_raising_inequality({0, 0}, {1, 1}, 2, true).verdict, "violation");
  // Unknown upper bound on X never produces a violation.
  EXPECT_EQ(check_raising_inequality({0, std::nullopt}, {5, 5}, 1).verdict, "consistent");
}
