#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace coarse;

namespace {

struct RandomMap {
  FiniteMetricSpace source;
  FiniteMetricSpace target;
  std::vector<std::size_t> image;  // source index -> target index
  MapPtr map;
};

RandomMap random_map(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  auto src = oracle::random_metric(n, rng);
  auto tgt = oracle::random_metric(m, rng);
  std::vector<std::size_t> image(n);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (auto& y : image) y = pick(rng);
  auto table = std::make_shared<std::map<PointId, PointId>>();
  for (std::size_t i = 0; i < n; ++i) (*table)[src.id(i)] = tgt.id(image[i]);
  auto f = std::make_shared<MapSpec>();
  f->name = "random";
  f->source = tower_from_space("src", src);
  f->target = tower_from_space("tgt", tgt);
  f->apply = [table](PointId x) { return table->at(x); };
  return {std::move(src), std::move(tgt), std::move(image), f};
}

// Brute-force n-to-1 threshold over every maximal diameter-R subset of the image.
Length brute_n_to_1(const RandomMap& f, int n, Length R) {
  std::vector<std::size_t> used;
  for (auto y : f.image) used.push_back(y);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<PointId> ids;
  for (auto y : used) ids.push_back(f.target.id(y));
  auto img = oracle::from_ids(ids, f.target.basepoint(), f.target.metric());
  Length best = 0;
  for (const auto& w : oracle::maximal_small_sets(img, R)) {
    std::vector<std::size_t> fiber;
    for (std::size_t x = 0; x < f.source.size(); ++x) {
      for (auto k : w) {
        if (f.target.id(f.image[x]) == img.id(k)) fiber.push_back(x);
      }
    }
    best = std::max(best, oracle::min_split(f.source, fiber, n));
  }
  return best;
}

MapPtr corpus_map(const std::string& name, nlohmann::json params = nlohmann::json::object()) {
  return corpus_build(name, params).map;
}

}  // namespace

TEST(Windows, DiameterWindowsAreExactlyTheMaximalSmallSets) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    auto s = oracle::random_metric(4 + trial % 11, rng);
    for (Length R : {1.0, 3.0, 6.0}) {
      EXPECT_EQ(enumerate_windows(s, R), oracle::maximal_small_sets(s, R)) << "trial " << trial << " R " << R;
    }
  }
}

TEST(Windows, BallWindowsAndBudget) {
  auto s = oracle::interval(0, 10);
  WindowOptions balls{WindowFamily::kBalls, 100};
  const auto w = enumerate_windows(s, 2, balls);
  ASSERT_EQ(w.size(), 11u);
  EXPECT_EQ(w[5], (std::vector<std::size_t>{3, 4, 5, 6, 7}));
  EXPECT_THROW(enumerate_windows(s, 2, WindowOptions{WindowFamily::kDiameter, 3}), BudgetExceeded);
  EXPECT_EQ(window_family_from_string("balls"), WindowFamily::kBalls);
  EXPECT_THROW(window_family_from_string("cubes"), ConfigError);
}

TEST(Coarseness, IdentityIsIsometric) {
  auto f = corpus_map("identity_line", {{"M", 60}});
  for (Length R : {1.0, 2.0, 5.0, 9.0}) EXPECT_EQ(coarseness_at(*f, R, 60).value, R);
}

TEST(Coarseness, CantorMapMatchesPairScan) {
  auto f = cantor_map(8);
  const Length r = 510;
  for (Length R : {2.0, 4.0, 6.0, 14.0, 30.0}) {
    Length want = 0;
    for (PointId a = 0; a < 256; ++a) {
      for (PointId b = 0; b < 256; ++b) {
        if (2 * (a ^ b) <= R) want = std::max<Length>(want, static_cast<Length>(std::llabs(a - b)));
      }
    }
    EXPECT_EQ(coarseness_at(*f, R, r).value, want) << "R=" << R;
    EXPECT_LE(want, R);
  }
}

TEST(Coarseness, CombIdentityContracts) {
  auto f = comb_identity(40);
  for (Length R : {1.0, 3.0, 7.0}) EXPECT_EQ(coarseness_at(*f, R, 40).value, R);
}

TEST(Coarseness, MonotoneInR) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_map(6 + trial % 10, 3 + trial % 6, rng);
    const Length r = f.source.max_depth();
    Length prev = 0;
    for (Length R : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      Length want = 0;
      for (std::size_t a = 0; a < f.source.size(); ++a) {
        for (std::size_t b = 0; b < f.source.size(); ++b) {
          if (f.source.dist(a, b) <= R) want = std::max(want, f.target.dist(f.image[a], f.image[b]));
        }
      }
      const Length got = coarseness_at(*f.map, R, r).value;
      EXPECT_EQ(got, want);
      EXPECT_GE(got, prev);
      prev = got;
    }
  }
}

TEST(Properness, IdentityConstantAndCantor) {
  auto id = corpus_map("identity_line", {{"M", 60}});
  for (Length S : {1.0, 4.0, 10.0}) EXPECT_EQ(properness_at(*id, S, 60).value, S);

  auto c = corpus_map("constant_map", {{"M", 80}});
  const auto prof = properness_profile(*c, {1, 4}, c->source->declared_radii());
  for (const auto& s : prof.samples) EXPECT_EQ(s.value, s.r);
  EXPECT_EQ(prof.verdict, Verdict::kRefuted);

  auto f = cantor_map(10);
  for (Length r : f->source->declared_radii()) {
    for (Length S : {1.0, 3.0, 8.0, 20.0}) {
      // Oracle: deepest source point whose image lies within S of 0; the
      // weighted digit sum of a is 2a.
      Length want = 0;
      for (PointId a = 0; 2 * a <= r; ++a) {
        if (a <= S) want = std::max<Length>(want, 2 * a);
      }
      const auto got = properness_at(*f, S, r).value;
      EXPECT_EQ(got, want);
      EXPECT_LE(got, 2 * S + 1);
    }
  }
}

TEST(Closeness, Examples) {
  auto id = corpus_map("identity_line", {{"M", 50}});
  auto shifted = std::make_shared<MapSpec>(*id);
  shifted->apply = [](PointId x) { return x + 3; };
  EXPECT_EQ(closeness_gap(*id, *id, 50), 0);
  EXPECT_EQ(closeness_gap(*id, *shifted, 50), 3);
  EXPECT_THROW(closeness_gap(*id, *corpus_map("shift_line", {{"M", 50}}), 50), PreconditionError);
  auto cantor = corpus_map("coarse_cantor", {{"k", 8}});
  auto lowbit = corpus_map("cantor_lowbit", {{"k", 8}});
  EXPECT_EQ(closeness_gap(*cantor, *lowbit, 510), 1);
}

TEST(Surjectivity, Examples) {
  EXPECT_EQ(surjectivity_defect(*corpus_map("identity_line", {{"M", 60}}), 60).defect, 0);
  const auto even = surjectivity_defect(*corpus_map("even_inclusion", {{"M", 60}}), 60);
  EXPECT_EQ(even.defect, 1);
  EXPECT_GT(even.evaluated, 0u);
  auto f = cantor_map(10);
  for (Length r : f->source->declared_radii()) EXPECT_EQ(surjectivity_defect(*f, r).defect, 0);
}

TEST(NToOne, RejectsZero) {
  auto f = corpus_map("identity_line", {{"M", 20}});
  EXPECT_THROW(n_to_1_threshold(*f, 0, 1, 20), PreconditionError);
}

TEST(NToOne, IdentityGivesR) {
  auto f = corpus_map("identity_line", {{"M", 60}});
  for (Length R : {1.0, 2.0, 4.0}) {
    const auto res = n_to_1_threshold(*f, 1, R, 60);
    EXPECT_EQ(res.S, R);
    EXPECT_EQ(res.exactness, Exactness::kExact);
  }
}

TEST(NToOne, CantorTwoToOneAtSevenMatchesIntervalScan) {
  auto f = cantor_map(10);
  // Oracle: every window is an integer interval of length 7 in [0, 1023]; split
  // each fiber into two parts by exhaustive search.
  std::vector<PointId> all(1024);
  std::iota(all.begin(), all.end(), PointId{0});
  auto src = oracle::from_ids(all, 0, [](PointId a, PointId b) { return static_cast<Length>(2 * (a ^ b)); });
  Length want = 0;
  for (std::size_t y = 0; y + 7 < 1024; ++y) {
    std::vector<std::size_t> fiber;
    for (std::size_t a = y; a <= y + 7; ++a) fiber.push_back(a);
    want = std::max(want, oracle::min_split(src, fiber, 2));
  }
  const auto res = n_to_1_threshold(*f, 2, 7, 2046);
  EXPECT_EQ(res.S, want);
  EXPECT_LE(res.S, 15 * 2);
}

TEST(NToOne, CantorOneToOneGrowsWithTruncation) {
  auto f = cantor_map(12);
  Length prev = -1;
  for (int k = 6; k <= 12; ++k) {
    const Length r = 2 * ((1 << k) - 1);
    const auto S = n_to_1_threshold(*f, 1, 1, r).S;
    // Adjacent integers 2^(k-1) - 1 and 2^(k-1) differ in all k digits.
    EXPECT_EQ(S, 2 * ((1 << k) - 1)) << "k=" << k;
    EXPECT_GT(S, prev);
    prev = S;
  }
}

TEST(NToOne, MatchesBruteForceOnRandomMaps) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    auto f = random_map(5 + trial % 8, 3 + trial % 5, rng);
    const Length r = f.source.max_depth();
    for (int n : {1, 2, 3}) {
      Length prev = 0;
      for (Length R : {0.0, 2.0, 5.0}) {
        const auto res = n_to_1_threshold(*f.map, n, R, r);
        ASSERT_EQ(res.exactness, Exactness::kExact);
        EXPECT_EQ(res.S, brute_n_to_1(f, n, R)) << "trial " << trial << " n " << n << " R " << R;
        EXPECT_GE(res.S, prev);
        prev = res.S;
        // Certificates are valid n-part splits within S.
        for (const auto& c : res.certificates) {
          ASSERT_EQ(c.colors.size(), c.fiber.size());
          for (std::size_t a = 0; a < c.fiber.size(); ++a) {
            EXPECT_GE(c.colors[a], 0);
            EXPECT_LT(c.colors[a], n);
            for (std::size_t b = 0; b < c.fiber.size(); ++b) {
              if (c.colors[a] != c.colors[b]) continue;
              const auto ia = *f.source.index_of(c.fiber[a]);
              const auto ib = *f.source.index_of(c.fiber[b]);
              EXPECT_LE(f.source.dist(ia, ib), c.S);
            }
          }
        }
      }
    }
  }
}

TEST(NToOne, BallReductionIsSound) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_map(6 + trial % 8, 4 + trial % 5, rng);
    const Length r = f.source.max_depth();
    NToOneOptions ball_opts;
    ball_opts.windows.family = WindowFamily::kBalls;
    for (int n : {1, 2}) {
      for (Length R : {1.0, 3.0}) {
        const Length S_ball = n_to_1_threshold(*f.map, n, R, r, ball_opts).S;
        const Length S_diam = n_to_1_threshold(*f.map, n, R, r).S;
        EXPECT_LE(S_diam, S_ball);
        // Random target subsets of diameter <= R: preimages split within the ball answer.
        for (int sample = 0; sample < 20; ++sample) {
          std::vector<std::size_t> A;
          for (std::size_t y = 0; y < f.target.size(); ++y) {
            if (rng() % 2) A.push_back(y);
          }
          bool small = true;
          for (auto a : A) {
            for (auto b : A) small = small && f.target.dist(a, b) <= R;
          }
          if (!small) continue;
          std::vector<std::size_t> fiber;
          for (std::size_t x = 0; x < f.source.size(); ++x) {
            if (std::find(A.begin(), A.end(), f.image[x]) != A.end()) fiber.push_back(x);
          }
          EXPECT_LE(oracle::min_split(f.source, fiber, n), S_diam);
        }
      }
    }
  }
}

TEST(NToOne, SplitThresholdIsMinimal) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 80; ++trial) {
    auto s = oracle::random_metric(3 + trial % 8, rng);
    std::vector<std::size_t> pts(s.size());
    std::iota(pts.begin(), pts.end(), std::size_t{0});
    for (int n : {1, 2, 3}) {
      const auto res = min_split_diameter(s, pts, n);
      ASSERT_TRUE(res.exact);
      EXPECT_EQ(res.S, oracle::min_split(s, pts, n));
      // Feasible at S, infeasible at the largest distance below S.
      EXPECT_TRUE(oracle::colorable(s, pts, res.S, n));
      Length below = -1;
      for (auto a : pts) {
        for (auto b : pts) {
          if (s.dist(a, b) < res.S) below = std::max(below, s.dist(a, b));
        }
      }
      if (below >= 0) EXPECT_FALSE(oracle::colorable(s, pts, below, n));
    }
  }
}

TEST(NToOne, ReflectionQuotientGivesR) {
  auto q = orbit_space(reflection_Z(60));
  for (Length R = 1; R <= 8; ++R) EXPECT_EQ(n_to_1_threshold(*q.quotient, 2, R, 60).S, R) << "R=" << R;
  EXPECT_GT(n_to_1_threshold(*q.quotient, 1, 1, 60).S, 1);
}

TEST(FiniteToOne, IdentityReachesOne) {
  auto f = corpus_map("identity_line", {{"M", 40}});
  const Length R = 4;
  const auto rows = finite_to_1_at(*f, R, 40, {1, 2, 3, 4, 8});
  // An interval of R + 1 points needs ceil((R + 1) / (S + 1)) parts.
  for (const auto& s : rows) EXPECT_EQ(s.value, std::ceil((R + 1) / (s.scale + 1))) << "S=" << s.scale;
}

TEST(FiniteToOne, MatchesChromaticOracle) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_map(5 + trial % 7, 3 + trial % 4, rng);
    const Length r = f.source.max_depth();
    const Length R = 2;
    const std::vector<Length> grid{0, 1, 2, 4, 8};
    const auto rows = finite_to_1_at(*f.map, R, r, grid);
    ASSERT_EQ(rows.size(), grid.size());
    // m(S): largest chromatic number over fibers of maximal diameter-R image subsets.
    std::vector<PointId> used;
    for (auto y : f.image) used.push_back(f.target.id(y));
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    auto img = oracle::from_ids(used, f.target.basepoint(), f.target.metric());
    for (const auto& row : rows) {
      int m = 0;
      for (const auto& w : oracle::maximal_small_sets(img, R)) {
        std::vector<std::size_t> fiber;
        for (std::size_t x = 0; x < f.source.size(); ++x) {
          for (auto k : w) {
            if (f.target.id(f.image[x]) == img.id(k)) fiber.push_back(x);
          }
        }
        m = std::max(m, oracle::chromatic(f.source, fiber, row.scale));
      }
      EXPECT_EQ(row.value, m) << "trial " << trial << " S " << row.scale;
    }
  }
}

TEST(FiniteToOne, CantorUsesTwoAboveTheTwoToOneThreshold) {
  auto f = cantor_map(8);
  for (Length R : {1.0, 4.0}) {
    const Length S2 = n_to_1_threshold(*f, 2, R, 510).S;
    for (const auto& s : finite_to_1_at(*f, R, 510, {S2, 2 * S2 + 2})) EXPECT_LE(s.value, 2);
  }
}

TEST(Profiles, VerdictsFollowTheLastThreeRadii) {
  auto f = cantor_map(12);
  const std::vector<Length> radii{510, 2046, 8190};
  const auto two = n_to_1_profile(*f, 2, {1, 2, 4}, radii);
  EXPECT_EQ(two.verdict, Verdict::kEvidence);
  const auto one = n_to_1_profile(*f, 1, {1}, radii);
  EXPECT_EQ(one.verdict, Verdict::kRefuted);
  EXPECT_EQ(last_three_trend({1, 2, 2, 2}), Trend::kStable);
  EXPECT_EQ(last_three_trend({5, 1, 2, 3}), Trend::kGrowing);
  EXPECT_EQ(last_three_trend({1, 3, 2}), Trend::kOther);
  EXPECT_EQ(last_three_trend({1, 3}), Trend::kTooShort);
  EXPECT_EQ(geometric_grid(10), (std::vector<Length>{1, 2, 4, 8}));
}

TEST(Radii, ProfilesNeedDeclaredRadiiUntilRedeclared) {
  auto f = cantor_map(10);
  EXPECT_THROW(n_to_1_profile(*f, 2, {1, 2}, {64, 256}), PreconditionError);
  auto g = std::make_shared<MapSpec>(*f);
  g->source = with_radii(*f->source, {64, 256, 1024});
  EXPECT_EQ(g->source->generator(), f->source->generator());
  const auto p = n_to_1_profile(*g, 2, {1, 2, 4}, {64, 256, 1024});
  EXPECT_EQ(p.verdict, Verdict::kEvidence);
  for (const auto& s : p.samples) {
    const auto a = g->source->truncation(s.r);
    EXPECT_EQ(a->size(), f->source->truncation(s.r)->size());
    EXPECT_EQ(s.value, n_to_1_threshold(*f, 2, s.scale, s.r).S);
  }
  EXPECT_THROW(with_radii(*f->source, {-1}), ConfigError);
}
