#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace coarse;

namespace {

PointSet indices_of(const FiniteMetricSpace& s, std::initializer_list<PointId> ids) {
  std::vector<std::size_t> out;
  for (auto id : ids) out.push_back(*s.index_of(id));
  std::sort(out.begin(), out.end());
  return PointSet(out);
}

std::vector<PointId> ids_of(const FiniteMetricSpace& s, const PointSet& p) {
  std::vector<PointId> out;
  for (auto i : p) out.push_back(s.id(i));
  return out;
}

FiniteMetricSpace triangle(Length ab, Length bc, Length ac) {
  return FiniteMetricSpace::from_matrix({0, 1, 2}, 0, {{0, ab, ac}, {ab, 0, bc}, {ac, bc, 0}});
}

}  // namespace

TEST(Validate, ShortestPathTriangleIsValid) {
  EXPECT_TRUE(validate_metric(triangle(1, 1, 2)).ok());
  EXPECT_TRUE(validate_metric(triangle(1, 1, 1)).ok());
}

TEST(Validate, PlantedTriangleViolation) {
  const auto rep = validate_metric(triangle(1, 1, 5));
  ASSERT_FALSE(rep.ok());
  // Listed once per orientation: (a, b, c) and (c, b, a).
  ASSERT_EQ(rep.count(ViolationKind::kTriangle), 2u);
  for (const auto& v : rep.violations) {
    ASSERT_EQ(v.witness.size(), 3u);
    EXPECT_EQ(v.witness[1], 1);
    EXPECT_EQ(std::set<PointId>(v.witness.begin(), v.witness.end()), (std::set<PointId>{0, 1, 2}));
  }
}

TEST(Validate, EachAxiomHasItsOwnKind) {
  using Rows = std::vector<std::vector<Length>>;
  auto kinds = [](const Rows& rows, PointId base = 0) {
    return validate_metric(FiniteMetricSpace::from_matrix({0, 1}, base, rows));
  };
  EXPECT_EQ(kinds({{0, 1}, {2, 0}}).count(ViolationKind::kAsymmetric), 1u);
  EXPECT_GE(kinds({{0, -1}, {-1, 0}}).count(ViolationKind::kNegative), 1u);
  EXPECT_EQ(kinds({{1, 1}, {1, 0}}).count(ViolationKind::kNonzeroSelf), 1u);
  EXPECT_EQ(kinds({{0, 0}, {0, 0}}).count(ViolationKind::kZeroDistinct), 1u);
  EXPECT_GE(kinds({{0, kInfinity}, {kInfinity, 0}}).count(ViolationKind::kNonFinite), 1u);
  EXPECT_EQ(kinds({{0, 1}, {1, 0}}, 7).count(ViolationKind::kMissingBasepoint), 1u);
}

TEST(Validate, XorSpaceOn256Points) {
  auto t = xor_space(8);
  auto s = t->truncation(255);
  ASSERT_EQ(s->size(), 256u);
  EXPECT_TRUE(validate_metric(*s).ok());
}

TEST(Validate, ListingCapCountsTheRest) {
  std::mt19937_64 rng(3);
  auto base = oracle::random_metric(12, rng);
  std::vector<std::vector<Length>> rows(12, std::vector<Length>(12));
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) rows[i][j] = (i == j) ? 0 : base.dist(i, j) + (i < j ? 1 : 0);
  }
  const auto full = validate_metric(FiniteMetricSpace::from_matrix(std::vector<PointId>(base.ids().begin(), base.ids().end()), 0, rows));
  const auto capped = validate_metric(FiniteMetricSpace::from_matrix(std::vector<PointId>(base.ids().begin(), base.ids().end()), 0, rows), 5);
  EXPECT_EQ(full.count(ViolationKind::kAsymmetric), 66u);
  EXPECT_EQ(capped.violations.size(), 5u);
  EXPECT_EQ(capped.violations.size() + capped.omitted, full.violations.size() + full.omitted);
}

TEST(Neighborhood, EmptyAndZeroRadius) {
  auto s = oracle::interval(0, 20);
  EXPECT_TRUE(neighborhood(s, PointSet{}, 5).empty());
  const auto A = indices_of(s, {3, 9, 14});
  EXPECT_EQ(neighborhood(s, A, 0), A);
}

TEST(Neighborhood, IntervalAroundTen) {
  auto s = oracle::interval(0, 20);
  const auto N = neighborhood(s, indices_of(s, {10}), 3);
  EXPECT_EQ(ids_of(s, N), (std::vector<PointId>{7, 8, 9, 10, 11, 12, 13}));
}

TEST(Neighborhood, MatchesDirectEnumerationAndIsMonotone) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_metric(4 + trial % 20, rng);
    std::vector<bool> mask(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) mask[i] = rng() % 3 == 0;
    const auto A = PointSet::from_mask(mask);
    Length prev_size = 0;
    for (Length R : {0.0, 1.0, 2.0, 3.0, 5.0, 8.0, 13.0}) {
      const auto N = neighborhood(s, A, R);
      for (std::size_t y = 0; y < s.size(); ++y) {
        bool near = false;
        for (auto a : A) near = near || s.dist(y, a) <= R;
        EXPECT_EQ(N.contains(y), near);
      }
      for (auto a : A) EXPECT_TRUE(N.contains(a));
      EXPECT_GE(static_cast<Length>(N.size()), prev_size);
      prev_size = static_cast<Length>(N.size());
    }
  }
}

TEST(Components, Singleton) {
  auto s = oracle::interval(0, 5);
  EXPECT_EQ(threshold_components(s, indices_of(s, {2}), 1).size(), 1u);
}

TEST(Components, TwoClustersOnTheLine) {
  auto s = oracle::interval(0, 20);
  const auto comps = threshold_components(s, indices_of(s, {0, 1, 2, 10, 11}), 2);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(ids_of(s, comps[0]), (std::vector<PointId>{0, 1, 2}));
  EXPECT_EQ(ids_of(s, comps[1]), (std::vector<PointId>{10, 11}));
}

TEST(Components, XorSixteenSplitsIntoDyadicBlocks) {
  auto s = xor_space(4)->truncation(15);
  const auto comps = threshold_components(*s, all_points(*s), 3);
  ASSERT_EQ(comps.size(), 4u);
  for (std::size_t b = 0; b < 4; ++b) {
    std::vector<PointId> want;
    for (PointId x = 4 * b; x < 4 * b + 4; ++x) want.push_back(x);
    EXPECT_EQ(ids_of(*s, comps[b]), want);
  }
}

TEST(Components, SeparatedAndRefining) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_metric(5 + trial % 18, rng);
    const auto A = all_points(s);
    std::vector<std::vector<PointSet>> levels;
    for (Length R : {1.0, 2.0, 3.0, 5.0, 8.0}) {
      auto comps = threshold_components(s, A, R);
      std::size_t total = 0;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        total += comps[i].size();
        for (std::size_t j = i + 1; j < comps.size(); ++j) EXPECT_GT(set_distance(s, comps[i], comps[j]), R);
      }
      EXPECT_EQ(total, s.size());
      levels.push_back(std::move(comps));
    }
    // Every finer component sits inside one coarser component.
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
      for (const auto& fine : levels[l]) {
        int hosts = 0;
        for (const auto& coarse_c : levels[l + 1]) {
          if (coarse_c.contains(fine[0])) {
            ++hosts;
            for (auto p : fine) EXPECT_TRUE(coarse_c.contains(p));
          }
        }
        EXPECT_EQ(hosts, 1);
      }
    }
  }
}

TEST(Diameter, Examples) {
  auto s = oracle::interval(0, 20);
  EXPECT_FALSE(diameter(s, PointSet{}).has_value());
  EXPECT_EQ(diameter(s, indices_of(s, {4})), 0);
  EXPECT_EQ(diameter(s, indices_of(s, {3, 4, 5, 6, 7, 8, 9})), 6);
  auto x = xor_space(4)->truncation(15);
  EXPECT_EQ(diameter(*x, indices_of(*x, {8, 9, 10, 11, 12, 13, 14, 15})), 7);
}

TEST(Tower, NestingBallAndExhaustion) {
  const std::vector<TowerPtr> towers{integer_line(40), half_line(40), grid_linf(2, 12), quarter_plane(12),
                                     binary_tree(5), xor_space(6), coarse_cantor(6),
                                     comb_tree(20, CombMetric::kPath), comb_tree(20, CombMetric::kEuclidean)};
  for (const auto& t : towers) {
    SCOPED_TRACE(t->name());
    const auto& radii = t->declared_radii();
    for (std::size_t a = 0; a < radii.size(); ++a) {
      auto small = t->truncation(radii[a]);
      for (std::size_t i = 0; i < small->size(); ++i) EXPECT_LE(small->depth(i), radii[a]);
      for (std::size_t b = a + 1; b < radii.size(); ++b) {
        auto big = t->truncation(radii[b]);
        for (std::size_t i = 0; i < small->size(); ++i) {
          const auto bi = big->index_of(small->id(i));
          ASSERT_TRUE(bi.has_value());
          for (std::size_t j = 0; j < small->size(); ++j) {
            EXPECT_EQ(small->dist(i, j), big->dist(*bi, *big->index_of(small->id(j))));
          }
        }
        for (std::size_t i = 0; i < big->size(); ++i) {
          if (big->depth(i) <= radii[a]) EXPECT_TRUE(small->index_of(big->id(i)).has_value());
        }
      }
    }
  }
}

TEST(Tower, ConcurrentFirstAccessSharesOneSpace) {
  auto t = integer_line(400);
  std::vector<std::shared_ptr<const FiniteMetricSpace>> got(8);
  parallel_workers() = 8;
  parallel_for(got.size(), [&](std::size_t i) { got[i] = t->truncation(200); });
  parallel_workers() = 0;
  for (const auto& g : got) EXPECT_EQ(g.get(), got.front().get());
}

TEST(Lattice, EncodingRoundTripsAndOrders) {
  for (std::int64_t x : {-5, 0, 3, 1000}) {
    for (std::int64_t y : {-7, 0, 2, 999}) {
      EXPECT_EQ(decode_xy(encode_xy(x, y)), std::make_pair(x, y));
      EXPECT_LT(encode_xy(x, y), encode_xy(x, y + 1));
      EXPECT_LT(encode_xy(x, 999), encode_xy(x + 1, -7));
    }
  }
}
