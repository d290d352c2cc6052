#include <coarse/coloring.hpp>
#include <coarse/dimension.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace coarse {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

ControlResult finish(const FiniteMetricSpace& space, int n, Length R, std::vector<int> coloring,
                     std::string strategy) {
  ControlResult out;
  out.exactness = Exactness::kUpper;
  out.strategy = std::move(strategy);
  out.cover.n = n;
  out.cover.R = R;
  out.cover.coloring = std::move(coloring);
  out.cover.B = cover_bound(space, out.cover.coloring, n, R);
  out.B = out.cover.B;
  return out;
}

ControlResult components_cover(const FiniteMetricSpace& space, int n, Length R) {
  return finish(space, n, R, std::vector<int>(space.size(), 0), "components");
}

ControlResult layered_cover(const FiniteMetricSpace& space, int n, Length R) {
  if (n == 0) return components_cover(space, n, R);
  // Same-colored annuli have n annuli of width L >= (R+1)/n between them.
  const Length width = std::ceil((R + 1) / n);
  std::vector<int> col(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto band = static_cast<std::int64_t>(std::floor(space.depth(i) / width));
    col[i] = static_cast<int>(band % (n + 1));
  }
  return finish(space, n, R, std::move(col), "layered");
}

// Staggered bricks of size 2(R+1) x (R+1); row i is shifted by half a brick.
// Three colors suffice for the l-infinity metric on the chart, and any metric
// that dominates it.
ControlResult brick_cover(const FiniteMetricSpace& space, int n, Length R) {
  if (!space.chart()) throw PreconditionError("brick strategy needs a planar chart");
  if (n < 2) throw PreconditionError("brick strategy needs n >= 2");
  const auto h = static_cast<std::int64_t>(std::floor(R)) + 1;
  const std::int64_t w = 2 * h;
  const auto& chart = *space.chart();
  std::vector<int> col(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto [x, y] = chart(space.id(i));
    const std::int64_t row = floor_div(y, h);
    const std::int64_t brick = floor_div(x - row * h, w);
    col[i] = static_cast<int>(((brick + 2 * row) % 3 + 3) % 3);
  }
  return finish(space, n, R, std::move(col), "brick");
}

// Voronoi cells around a net, colored greedily on the cell conflict graph,
// then single-point recoloring while it lowers B.
ControlResult greedy_cover(const FiniteMetricSpace& space, int n, Length R, std::uint64_t seed) {
  const std::size_t m = space.size();
  if (m == 0) return finish(space, n, R, {}, "greedy");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::stable_sort(order.begin(), order.end(),
                   [&space](std::size_t a, std::size_t b) { return space.depth(a) < space.depth(b); });

  std::vector<int> best;
  Length best_B = std::numeric_limits<Length>::infinity();
  for (Length spacing : {R + 1, 2 * (R + 1), 4 * (R + 1)}) {
    std::vector<std::size_t> centers;
    for (auto i : order) {
      bool far = true;
      for (auto c : centers) {
        if (space.dist(i, c) < spacing) {
          far = false;
          break;
        }
      }
      if (far) centers.push_back(i);
    }
    std::vector<std::size_t> cell(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t arg = 0;
      for (std::size_t c = 1; c < centers.size(); ++c) {
        if (space.dist(i, centers[c]) < space.dist(i, centers[arg])) arg = c;
      }
      cell[i] = arg;
    }
    Graph g(centers.size());
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (cell[i] != cell[j] && space.dist(i, j) <= R) g.add_edge(cell[i], cell[j]);
      }
    }
    g.finalize();
    // DSATUR order, falling back to the least-used conflicting color.
    std::vector<int> cell_color(centers.size(), -1);
    for (std::size_t step = 0; step < centers.size(); ++step) {
      std::size_t pick = centers.size();
      int pick_sat = -1;
      for (std::size_t v = 0; v < centers.size(); ++v) {
        if (cell_color[v] != -1) continue;
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (auto u : g.adj[v]) {
          if (cell_color[u] >= 0) seen[static_cast<std::size_t>(cell_color[u])] = true;
        }
        const int sat = static_cast<int>(std::count(seen.begin(), seen.end(), true));
        if (sat > pick_sat) {
          pick = v;
          pick_sat = sat;
        }
      }
      std::vector<int> clash(static_cast<std::size_t>(n) + 1, 0);
      for (auto u : g.adj[pick]) {
        if (cell_color[u] >= 0) ++clash[static_cast<std::size_t>(cell_color[u])];
      }
      cell_color[pick] = static_cast<int>(std::min_element(clash.begin(), clash.end()) - clash.begin());
    }
    std::vector<int> col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = cell_color[cell[i]];
    const Length B = cover_bound(space, col, n, R);
    if (B < best_B) {
      best_B = B;
      best = std::move(col);
    }
  }

  // Local search is quadratic per move; keep it to small spaces.
  constexpr std::size_t kLocalSearchCap = 400;
  if (m <= kLocalSearchCap && n > 0) {
    bool improved = true;
    for (int pass = 0; pass < 4 && improved; ++pass) {
      improved = false;
      for (auto i : order) {
        const int keep = best[i];
        for (int c = 0; c <= n; ++c) {
          if (c == keep) continue;
          best[i] = c;
          const Length B = cover_bound(space, best, n, R);
          if (B < best_B) {
            best_B = B;
            improved = true;
            break;
          }
          best[i] = keep;
        }
      }
    }
  }
  return finish(space, n, R, std::move(best), "greedy");
}

}  // namespace

ControlResult control_upper(const FiniteMetricSpace& space, int n, Length R, UpperStrategy strategy,
                            std::uint64_t seed) {
  if (n < 0) throw PreconditionError("n must be non-negative");
  switch (strategy) {
    case UpperStrategy::kComponents: return components_cover(space, n, R);
    case UpperStrategy::kLayered: return layered_cover(space, n, R);
    case UpperStrategy::kBrick: return brick_cover(space, n, R);
    case UpperStrategy::kGreedy: return greedy_cover(space, n, R, seed);
    case UpperStrategy::kBest: break;
  }
  // Greedy stays out of the minimum: its B moves with the seed and with the
  // truncation, which would blur the stabilization test.
  ControlResult best = layered_cover(space, n, R);
  if (n >= 2 && space.chart()) {
    ControlResult brick = brick_cover(space, n, R);
    if (brick.B < best.B) best = std::move(brick);
  }
  return best;
}

}  // namespace coarse
