#include "oracles.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <map>

using namespace coarse;

namespace {

FamilyCollection on_space(const FiniteMetricSpace& s, std::vector<std::vector<PointId>> members) {
  FamilyCollection fams;
  fams.host = tower_from_space("host", s);
  for (std::size_t i = 0; i < members.size(); ++i) {
    fams.members.push_back(explicit_family("A" + std::to_string(i), std::move(members[i])));
  }
  return fams;
}

// Unit-step comb tree on [1, M]: rows (x, k), k <= x, rung (k+1, k)-(k+1, k+1).
struct CombGraph {
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pts;
  std::vector<std::vector<int>> adj;

  explicit CombGraph(int M) {
    for (int x = 1; x <= M; ++x) {
      for (int k = 1; k <= x; ++k) {
        index[{x, k}] = static_cast<int>(pts.size());
        pts.push_back({x, k});
      }
    }
    adj.resize(pts.size());
    auto link = [&](std::pair<int, int> a, std::pair<int, int> b) {
      adj[index.at(a)].push_back(index.at(b));
      adj[index.at(b)].push_back(index.at(a));
    };
    for (auto [x, k] : pts) {
      if (x + 1 <= M) link({x, k}, {x + 1, k});
      if (x == k + 1 && k + 1 <= M) link({x, k}, {x, k + 1});
    }
  }

  std::vector<int> bfs(const std::vector<int>& sources) const {
    std::vector<int> d(pts.size(), -1);
    std::deque<int> q;
    for (int s : sources) {
      d[s] = 0;
      q.push_back(s);
    }
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int u : adj[v]) {
        if (d[u] == -1) {
          d[u] = d[v] + 1;
          q.push_back(u);
        }
      }
    }
    return d;
  }
};

}  // namespace

TEST(Gradual, TwoSingletons) {
  auto s = oracle::interval(0, 40);
  auto fams = on_space(s, {{10}, {20}});
  const auto view = view_at(fams, 40);
  const auto apart = gradual_disjointness(view, 4, 40);
  ASSERT_TRUE(apart.b.has_value());
  EXPECT_EQ(*apart.b, 0);
  const auto touching = gradual_disjointness(view, 5, 40);
  ASSERT_TRUE(touching.b.has_value());
  EXPECT_EQ(*touching.b, 15);  // the only shared point is 15
  EXPECT_EQ(touching.witness, PointId{15});
}

TEST(Gradual, InterleavedEvensAndOdds) {
  auto t = integer_line(80);
  FamilyCollection fams{t, {Family{"even", [](PointId p) { return p % 2 == 0; }},
                            Family{"odd", [](PointId p) { return p % 2 != 0; }}}};
  for (Length r : t->declared_radii()) {
    for (Length R : {1.0, 2.0, 5.0}) EXPECT_FALSE(gradual_disjointness(view_at(fams, r), R, r).b.has_value());
  }
  const auto prof = gradual_disjointness_profile([&](Length r) { return view_at(fams, r); }, {1, 2},
                                                 t->declared_radii());
  EXPECT_NE(prof.verdict, Verdict::kEvidence);
}

TEST(Gradual, RejectsOverlappingMembers) {
  auto s = oracle::interval(0, 10);
  EXPECT_THROW(gradual_disjointness(view_at(on_space(s, {{1, 2}, {2, 3}}), 10), 1, 10), PreconditionError);
}

TEST(Gradual, CombRowsMatchTreeSearch) {
  const int M = 60;
  auto host = comb_tree(M, CombMetric::kPath);
  auto fams = comb_rows(host, 5);
  CombGraph g(M);
  const auto depth = g.bfs({g.index.at({1, 1})});
  for (Length r : host->declared_radii()) {
    const auto view = view_at(fams, r);
    for (Length R : {1.0, 2.0, 4.0}) {
      // Overlaps of row neighborhoods inside the truncation, by BFS on the tree.
      std::vector<std::vector<int>> near;
      for (int k = 1; k <= 5; ++k) {
        std::vector<int> row;
        for (std::size_t i = 0; i < g.pts.size(); ++i) {
          if (g.pts[i].second == k && depth[i] <= r) row.push_back(static_cast<int>(i));
        }
        near.push_back(g.bfs(row));
      }
      Length want = 0;
      for (std::size_t i = 0; i < g.pts.size(); ++i) {
        if (depth[i] > r) continue;
        int hits = 0;
        for (const auto& d : near) hits += (d[i] != -1 && d[i] <= R) ? 1 : 0;
        if (hits >= 2) want = std::max<Length>(want, depth[i]);
      }
      const auto got = gradual_disjointness(view, R, r);
      EXPECT_EQ(got.raw, want) << "r=" << r << " R=" << R;
      ASSERT_TRUE(got.b.has_value());
    }
  }
  const auto prof = gradual_disjointness_profile([&](Length r) { return view_at(fams, r); }, {1, 2, 4},
                                                 host->declared_radii());
  EXPECT_EQ(prof.verdict, Verdict::kEvidence);
}

TEST(Gradual, PairwiseEqualsWholeCollection) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = oracle::random_metric(6 + trial % 15, rng);
    const int k = 2 + trial % 4;
    std::vector<std::vector<PointId>> members(k);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto slot = rng() % (k + 1);
      if (slot < static_cast<std::size_t>(k)) members[slot].push_back(s.id(i));
    }
    const auto view = view_at(on_space(s, members), s.max_depth());
    for (Length R : {0.0, 1.0, 3.0, 6.0}) {
      const auto pair = gradual_disjointness(view, R, s.max_depth());
      const auto joint = gradual_disjointness_joint(view, R, s.max_depth());
      EXPECT_EQ(pair.raw, joint.raw);
      EXPECT_EQ(pair.b, joint.b);
    }
  }
}

TEST(Divergence, SeparatedBlocksHaveEmptyIntersection) {
  auto s = oracle::interval(0, 120);
  std::vector<PointId> a, b;
  for (PointId x = 0; x <= 10; ++x) a.push_back(x);
  for (PointId x = 100; x <= 110; ++x) b.push_back(x);
  const auto view = view_at(on_space(s, {a, b}), 120);
  EXPECT_FALSE(divergence(view, 5).s.has_value());
  const auto wide = divergence(view, 45);
  ASSERT_TRUE(wide.s.has_value());
  EXPECT_EQ(*wide.s, 55);
}

TEST(Divergence, MatchesDirectIntersection) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 80; ++trial) {
    auto s = oracle::random_metric(5 + trial % 14, rng);
    std::vector<std::vector<PointId>> members(2 + trial % 3);
    for (auto& m : members) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (rng() % 4 == 0) m.push_back(s.id(i));
      }
    }
    const auto view = view_at(on_space(s, members), s.max_depth());
    for (Length R : {0.0, 2.0, 5.0}) {
      std::optional<Length> want;
      for (std::size_t z = 0; z < s.size(); ++z) {
        bool all = true;
        for (const auto& m : members) {
          bool near = false;
          for (auto id : m) near = near || s.dist(z, *s.index_of(id)) <= R;
          all = all && near;
        }
        if (all) want = std::max(want.value_or(0), s.depth(z));
      }
      EXPECT_EQ(divergence(view, R).s, want);
    }
  }
}

TEST(Divergence, CombImagesDoNotDivergeForAnyPrefix) {
  auto f = comb_identity(100);
  auto fams = comb_rows(f->source, 5);
  auto provider = [&](Length r) { return image_view_at(*f, fams, r); };
  const auto prof = divergence_profile(provider, {5}, f->source->declared_radii());
  EXPECT_EQ(prof.verdict, Verdict::kRefuted);
  for (std::size_t i = 1; i < prof.rows.size(); ++i) EXPECT_GT(*prof.rows[i].value, *prof.rows[i - 1].value);
  for (const auto& [k, p] : prefix_divergence(provider, {2, 3, 4, 5}, {5}, f->source->declared_radii())) {
    EXPECT_EQ(p.verdict, Verdict::kRefuted) << "prefix " << k;
  }
}

TEST(Witness, CantorPairFoundAndRechecked) {
  auto f = cantor_map(10);
  WitnessOptions opts;
  opts.budget = 100000;
  const auto res = witness_search(*f, 2, opts);
  ASSERT_TRUE(res.certificate.has_value()) << res.note;
  const auto& cert = *res.certificate;
  EXPECT_TRUE(recheck_certificate(*f, cert));
  ASSERT_EQ(cert.families.size(), 2u);
  // Independent look at the tuples: images close, sources far apart and
  // growing with the level.
  Length prev = 0;
  for (std::size_t j = 0; j < cert.levels.size(); ++j) {
    const PointId a = cert.families[0][j], b = cert.families[1][j];
    EXPECT_LE(static_cast<Length>(std::llabs(a - b)), cert.pair_R);
    const Length d = 2.0 * static_cast<Length>(a ^ b);
    EXPECT_GT(d, prev);
    prev = d;
  }
}

TEST(Witness, CantorTripleExhausts) {
  WitnessOptions opts;
  opts.budget = 100000;
  const auto res = witness_search(*cantor_map(10), 3, opts);
  EXPECT_FALSE(res.certificate.has_value());
}

TEST(Witness, IdentityHasNoPair) {
  const auto res = witness_search(*corpus_build("identity_line", {{"M", 80}}).map, 2);
  EXPECT_FALSE(res.certificate.has_value());
  EXPECT_THROW(witness_search(*cantor_map(6), 1), PreconditionError);
}

TEST(Witness, TamperedCertificateFailsRecheck) {
  auto f = cantor_map(10);
  auto res = witness_search(*f, 2);
  ASSERT_TRUE(res.certificate.has_value());
  auto cert = *res.certificate;
  // Move the second member onto points right next to the first: the pair
  // stays close in the source, so the families are no longer gradually disjoint.
  for (std::size_t j = 0; j < cert.levels.size(); ++j) cert.families[1][j] = cert.families[0][j] ^ 1;
  EXPECT_FALSE(recheck_certificate(*f, cert));
}

TEST(Witness, DeterministicInSeed) {
  auto f = cantor_map(10);
  WitnessOptions opts;
  opts.seed = 5;
  const auto a = witness_search(*f, 2, opts);
  const auto b = witness_search(*f, 2, opts);
  ASSERT_TRUE(a.certificate && b.certificate);
  EXPECT_EQ(a.certificate->families, b.certificate->families);
  EXPECT_EQ(a.expansions, b.expansions);
}
