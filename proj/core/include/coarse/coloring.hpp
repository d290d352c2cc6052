#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace coarse {

// Simple undirected graph; adjacency lists are sorted and symmetric.
struct Graph {
  std::vector<std::vector<std::uint32_t>> adj;

  explicit Graph(std::size_t n = 0) : adj(n) {}
  std::size_t size() const { return adj.size(); }
  void add_edge(std::uint32_t a, std::uint32_t b);
  // Sorts and dedups adjacency lists; call after the last add_edge.
  void finalize();
  bool has_edge(std::uint32_t a, std::uint32_t b) const;
};

// True iff adjacent vertices never share a color and all colors are < k.
bool is_proper_coloring(const Graph& g, const std::vector<int>& colors, int k);

// Exact 2-coloring by BFS; nullopt if the graph has an odd cycle.
std::optional<std::vector<int>> two_color(const Graph& g);

// DSATUR greedy coloring (ties broken by degree, then index).
std::vector<int> dsatur_greedy(const Graph& g);

// Greedy clique by repeatedly taking the highest-degree candidate; a lower
// bound on the chromatic number. Returns the clique's vertices.
std::vector<std::uint32_t> greedy_clique(const Graph& g);

enum class ColorOutcome { kColorable, kNotColorable, kUnknown };

struct KColorResult {
  ColorOutcome outcome = ColorOutcome::kUnknown;
  std::vector<int> coloring;            // when colorable
  std::vector<std::uint32_t> obstruction;  // a (k+1)-clique when one was found
  std::uint64_t nodes = 0;
};

struct KColorLimits {
  std::size_t exact_vertex_cap = 64;
  int exact_color_cap = 6;
  std::uint64_t node_budget = 50'000'000;
};

// Decides k-colorability. Exact for k <= 2 at any size and for
// k <= exact_color_cap with at most exact_vertex_cap vertices; otherwise
// tries greedy coloring and a greedy clique, and reports kUnknown if neither
// settles it.
KColorResult k_colorable(const Graph& g, int k, const KColorLimits& limits = {});

struct ChromaticBounds {
  int lo = 0;
  int hi = 0;
  std::vector<int> coloring;  // uses hi colors
  bool exact() const { return lo == hi; }
};

// Chromatic number; exact within the limits, otherwise [clique, greedy].
ChromaticBounds chromatic_number(const Graph& g, const KColorLimits& limits = {});

}  // namespace coarse
