#include <coarse/coloring.hpp>

#include <algorithm>
#include <bit>
#include <deque>

namespace coarse {

void Graph::add_edge(std::uint32_t a, std::uint32_t b) {
  if (a == b) return;
  adj[a].push_back(b);
  adj[b].push_back(a);
}

void Graph::finalize() {
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool Graph::has_edge(std::uint32_t a, std::uint32_t b) const {
  return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

bool is_proper_coloring(const Graph& g, const std::vector<int>& colors, int k) {
  if (colors.size() != g.size()) return false;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (colors[v] < 0 || colors[v] >= k) return false;
    for (auto u : g.adj[v]) {
      if (colors[u] == colors[v]) return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> two_color(const Graph& g) {
  std::vector<int> color(g.size(), -1);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < g.size(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto u : g.adj[v]) {
        if (color[u] == -1) {
          color[u] = 1 - color[v];
          queue.push_back(u);
        } else if (color[u] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

std::vector<int> dsatur_greedy(const Graph& g) {
  const std::size_t n = g.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<int> color(n, -1);
  // seen[v * words + c / 64] bit c: some neighbor of v has color c.
  std::vector<std::uint64_t> seen(n * words, 0);
  std::vector<int> sat(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (color[v] != -1) continue;
      if (best == n || sat[v] > sat[best] ||
          (sat[v] == sat[best] && g.adj[v].size() > g.adj[best].size())) {
        best = v;
      }
    }
    int c = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t free = ~seen[best * words + w];
      if (free) {
        c = static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(free)));
        break;
      }
    }
    color[best] = c;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    for (auto u : g.adj[best]) {
      if (color[u] != -1) continue;
      auto& word = seen[u * words + static_cast<std::size_t>(c) / 64];
      if (!(word & bit)) {
        word |= bit;
        ++sat[u];
      }
    }
  }
  return color;
}

std::vector<std::uint32_t> greedy_clique(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<char> m(n * n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto u : g.adj[v]) m[v * n + u] = 1;
  }
  std::vector<std::uint32_t> seeds(n);
  for (std::uint32_t v = 0; v < n; ++v) seeds[v] = v;
  // Large graphs: seed only from the highest-degree vertices.
  constexpr std::size_t kMaxSeeds = 48;
  if (n > kMaxSeeds) {
    std::stable_sort(seeds.begin(), seeds.end(), [&g](auto a, auto b) {
      return g.adj[a].size() > g.adj[b].size();
    });
    seeds.resize(kMaxSeeds);
  }
  std::vector<std::uint32_t> best;
  for (auto seed : seeds) {
    std::vector<std::uint32_t> clique{seed};
    std::vector<std::uint32_t> cand = g.adj[seed];
    while (!cand.empty()) {
      std::uint32_t pick = cand.front();
      std::size_t pick_deg = 0;
      for (auto c : cand) {
        std::size_t deg = 0;
        for (auto d : cand) deg += m[c * n + d];
        if (deg > pick_deg || (deg == pick_deg && c < pick)) {
          pick = c;
          pick_deg = deg;
        }
      }
      clique.push_back(pick);
      std::vector<std::uint32_t> next;
      for (auto c : cand) {
        if (m[pick * n + c]) next.push_back(c);
      }
      cand = std::move(next);
    }
    if (clique.size() > best.size()) best = clique;
    if (best.size() == n) break;
  }
  return best;
}

namespace {

// Bitmask DSATUR backtracking for graphs with at most 64 vertices.
class SmallColorer {
 public:
  SmallColorer(const Graph& g, int k, std::uint64_t budget) : k_(k), budget_(budget) {
    n_ = static_cast<int>(g.size());
    nbr_.assign(n_, 0);
    for (int v = 0; v < n_; ++v) {
      for (auto u : g.adj[v]) nbr_[v] |= std::uint64_t{1} << u;
    }
    classes_.assign(k_, 0);
    color_.assign(n_, -1);
  }

  // 1 colorable, 0 not, -1 budget exhausted.
  int run() {
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    return search(all, 0);
  }
  const std::vector<int>& coloring() const { return color_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  int search(std::uint64_t uncolored, int used) {
    if (uncolored == 0) return 1;
    if (++nodes_ > budget_) return -1;
    // Most saturated vertex; ties by degree among uncolored.
    int best = -1, best_sat = -1, best_deg = -1;
    for (std::uint64_t rest = uncolored; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      int sat = 0;
      for (int c = 0; c < used; ++c) sat += (classes_[c] & nbr_[v]) ? 1 : 0;
      const int deg = std::popcount(nbr_[v] & uncolored);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    if (best_sat >= k_) return 0;
    const std::uint64_t bit = std::uint64_t{1} << best;
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      if (classes_[c] & nbr_[best]) continue;
      classes_[c] |= bit;
      color_[best] = c;
      const int r = search(uncolored & ~bit, std::max(used, c + 1));
      if (r != 0) return r;
      classes_[c] &= ~bit;
      color_[best] = -1;
    }
    return 0;
  }

  int n_ = 0;
  int k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> nbr_;
  std::vector<std::uint64_t> classes_;
  std::vector<int> color_;
};

bool has_edges(const Graph& g) {
  for (const auto& l : g.adj) {
    if (!l.empty()) return true;
  }
  return false;
}

}  // namespace

KColorResult k_colorable(const Graph& g, int k, const KColorLimits& limits) {
  KColorResult res;
  const std::size_t n = g.size();
  if (n == 0) {
    res.outcome = ColorOutcome::kColorable;
    return res;
  }
  if (k <= 0) {
    res.outcome = ColorOutcome::kNotColorable;
    return res;
  }
  if (k == 1) {
    if (!has_edges(g)) {
      res.outcome = ColorOutcome::kColorable;
      res.coloring.assign(n, 0);
    } else {
      res.outcome = ColorOutcome::kNotColorable;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (!g.adj[v].empty()) {
          res.obstruction = {v, g.adj[v].front()};
          break;
        }
      }
    }
    return res;
  }
  if (k == 2) {
    if (auto c = two_color(g)) {
      res.outcome = ColorOutcome::kColorable;
      res.coloring = std::move(*c);
    } else {
      res.outcome = ColorOutcome::kNotColorable;
    }
    return res;
  }
  if (static_cast<std::size_t>(k) >= n) {
    res.outcome = ColorOutcome::kColorable;
    res.coloring.resize(n);
    for (std::size_t v = 0; v < n; ++v) res.coloring[v] = static_cast<int>(v);
    return res;
  }
  auto greedy = dsatur_greedy(g);
  if (*std::max_element(greedy.begin(), greedy.end()) < k) {
    res.outcome = ColorOutcome::kColorable;
    res.coloring = std::move(greedy);
    return res;
  }
  auto clique = greedy_clique(g);
  if (static_cast<int>(clique.size()) > k) {
    res.outcome = ColorOutcome::kNotColorable;
    res.obstruction = std::move(clique);
    return res;
  }
  if (n <= limits.exact_vertex_cap && n <= 64 && k <= limits.exact_color_cap) {
    SmallColorer solver(g, k, limits.node_budget);
    const int r = solver.run();
    res.nodes = solver.nodes();
    if (r == 1) {
      res.outcome = ColorOutcome::kColorable;
      res.coloring = solver.coloring();
    } else if (r == 0) {
      res.outcome = ColorOutcome::kNotColorable;
    }
  }
  return res;
}

ChromaticBounds chromatic_number(const Graph& g, const KColorLimits& limits) {
  ChromaticBounds out;
  if (g.size() == 0) return out;
  out.coloring = dsatur_greedy(g);
  out.hi = *std::max_element(out.coloring.begin(), out.coloring.end()) + 1;
  out.lo = static_cast<int>(greedy_clique(g).size());
  // Tighten from above with exact k-colorability tests.
  while (out.lo < out.hi) {
    auto r = k_colorable(g, out.hi - 1, limits);
    if (r.outcome == ColorOutcome::kColorable) {
      out.hi -= 1;
      out.coloring = std::move(r.coloring);
    } else if (r.outcome == ColorOutcome::kNotColorable) {
      out.lo = out.hi;
    } else {
      break;
    }
  }
  return out;
}

}  // namespace coarse
