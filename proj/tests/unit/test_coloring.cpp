#include <coarse/coloring.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace coarse;

namespace {

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  Graph g(n);
  std::bernoulli_distribution edge(p);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (edge(rng)) g.add_edge(a, b);
    }
  }
  g.finalize();
  return g;
}

Graph cycle(std::size_t n) {
  Graph g(n);
  for (std::uint32_t i = 0; i < n; ++i) g.add_edge(i, static_cast<std::uint32_t>((i + 1) % n));
  g.finalize();
  return g;
}

// Chromatic number by trying every k-assignment.
int brute_chromatic(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return 0;
  for (int k = 1;; ++k) {
    std::vector<int> c(n, 0);
    while (true) {
      if (is_proper_coloring(g, c, k)) return k;
      std::size_t i = 0;
      while (i < n && c[i] == k - 1) c[i++] = 0;
      if (i == n) break;
      ++c[i];
    }
  }
}

}  // namespace

TEST(Coloring, ProperColoringChecker) {
  auto g = cycle(4);
  EXPECT_TRUE(is_proper_coloring(g, {0, 1, 0, 1}, 2));
  EXPECT_FALSE(is_proper_coloring(g, {0, 0, 1, 1}, 2));
  EXPECT_FALSE(is_proper_coloring(g, {0, 1, 0, 2}, 2));
}

TEST(Coloring, TwoColorDetectsOddCycles) {
  EXPECT_TRUE(two_color(cycle(6)).has_value());
  EXPECT_FALSE(two_color(cycle(7)).has_value());
  auto c = *two_color(cycle(10));
  EXPECT_TRUE(is_proper_coloring(cycle(10), c, 2));
}

TEST(Coloring, HasEdgeIsSymmetric) {
  Graph g(3);
  g.add_edge(2, 0);
  g.add_edge(0, 2);
  g.finalize();
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(g.adj[0].size(), 1u);
}

TEST(Coloring, DsaturAndCliqueBracketTheTruth) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    auto g = random_graph(3 + trial % 7, 0.2 + 0.05 * (trial % 12), rng);
    const int chi = brute_chromatic(g);
    const auto greedy = dsatur_greedy(g);
    const int used = greedy.empty() ? 0 : *std::max_element(greedy.begin(), greedy.end()) + 1;
    EXPECT_TRUE(is_proper_coloring(g, greedy, used));
    EXPECT_GE(used, chi);
    const auto clique = greedy_clique(g);
    for (std::size_t a = 0; a < clique.size(); ++a) {
      for (std::size_t b = a + 1; b < clique.size(); ++b) EXPECT_TRUE(g.has_edge(clique[a], clique[b]));
    }
    EXPECT_LE(static_cast<int>(clique.size()), chi);
  }
}

TEST(Coloring, KColorableAndChromaticAreExact) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    auto g = random_graph(4 + trial % 6, 0.25 + 0.05 * (trial % 10), rng);
    const int chi = brute_chromatic(g);
    for (int k = 1; k <= 5; ++k) {
      const auto res = k_colorable(g, k);
      ASSERT_NE(res.outcome, ColorOutcome::kUnknown);
      EXPECT_EQ(res.outcome == ColorOutcome::kColorable, k >= chi) << "k=" << k << " chi=" << chi;
      if (res.outcome == ColorOutcome::kColorable) EXPECT_TRUE(is_proper_coloring(g, res.coloring, k));
    }
    const auto b = chromatic_number(g);
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.hi, chi);
    EXPECT_TRUE(is_proper_coloring(g, b.coloring, b.hi));
  }
}

TEST(Coloring, BeyondExactCapReportsBracket) {
  std::mt19937_64 rng(29);
  auto g = random_graph(90, 0.5, rng);
  KColorLimits tight;
  tight.exact_vertex_cap = 10;
  const auto b = chromatic_number(g, tight);
  EXPECT_LE(b.lo, b.hi);
  EXPECT_TRUE(is_proper_coloring(g, b.coloring, b.hi));
  // Two-colorability stays exact at any size.
  auto even = cycle(200);
  EXPECT_EQ(k_colorable(even, 2, tight).outcome, ColorOutcome::kColorable);
  EXPECT_EQ(k_colorable(cycle(201), 2, tight).outcome, ColorOutcome::kNotColorable);
}
