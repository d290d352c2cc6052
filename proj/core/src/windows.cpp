#include <coarse/map_analysis.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

namespace coarse {

std::string to_string(WindowFamily w) {
  return w == WindowFamily::kBalls ? "balls" : "diameter";
}

WindowFamily window_family_from_string(const std::string& s) {
  if (s == "balls") return WindowFamily::kBalls;
  if (s == "diameter") return WindowFamily::kDiameter;
  throw ConfigError("unknown window family '" + s + "' (expected diameter|balls)");
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

// R-threshold graph. Depth banding skips pairs whose depths differ by more
// than R, which the triangle inequality rules out.
Adjacency threshold_graph(const FiniteMetricSpace& space, Length R) {
  const std::size_t n = space.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&space](std::size_t a, std::size_t b) { return space.depth(a) < space.depth(b); });
  Adjacency adj(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t u = order[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t v = order[b];
      if (space.depth(v) - space.depth(u) > R) break;
      if (space.dist(u, v) <= R) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    }
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());
  return adj;
}

// Bron-Kerbosch with Tomita pivoting. Each top-level vertex v (in degeneracy
// order) gets a local problem on its neighborhood, solved on bitsets.
class CliqueEnumerator {
 public:
  CliqueEnumerator(const Adjacency& adj, std::size_t cap) : adj_(adj), cap_(cap) {}

  std::vector<std::vector<std::size_t>> run() {
    const std::size_t n = adj_.size();
    std::vector<std::size_t> order = degeneracy_order();
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::size_t> local_of(n, kNone);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = order[i];
      local_ = adj_[v];  // sorted
      const std::size_t d = local_.size();
      words_ = (d + 63) / 64;
      for (std::size_t a = 0; a < d; ++a) local_of[local_[a]] = a;
      nbr_.assign(d * words_, 0);
      for (std::size_t a = 0; a < d; ++a) {
        for (auto u : adj_[local_[a]]) {
          if (const auto b = local_of[u]; b != kNone) set(&nbr_[a * words_], b);
        }
      }
      std::vector<std::uint64_t> P(words_, 0), X(words_, 0);
      for (std::size_t a = 0; a < d; ++a) set(pos[local_[a]] > i ? P.data() : X.data(), a);
      for (auto u : local_) local_of[u] = kNone;
      clique_ = {v};
      expand(P, X);
    }
    return std::move(out_);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  static void set(std::uint64_t* w, std::size_t b) { w[b >> 6] |= std::uint64_t{1} << (b & 63); }
  static bool any(const std::vector<std::uint64_t>& w) {
    return std::any_of(w.begin(), w.end(), [](std::uint64_t x) { return x != 0; });
  }
  std::size_t common(const std::vector<std::uint64_t>& P, std::size_t a) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_; ++k) c += static_cast<std::size_t>(std::popcount(P[k] & nbr_[a * words_ + k]));
    return c;
  }

  std::vector<std::size_t> degeneracy_order() const {
    const std::size_t n = adj_.size();
    std::vector<std::size_t> deg(n);
    std::size_t max_deg = 0;
    for (std::size_t v = 0; v < n; ++v) {
      deg[v] = adj_[v].size();
      max_deg = std::max(max_deg, deg[v]);
    }
    std::vector<std::vector<std::size_t>> buckets(max_deg + 1);
    for (std::size_t v = 0; v < n; ++v) buckets[deg[v]].push_back(v);
    std::vector<bool> done(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    std::size_t d = 0;
    while (order.size() < n) {
      d = 0;
      while (d <= max_deg) {
        // Drop stale bucket entries lazily.
        while (!buckets[d].empty() && (done[buckets[d].back()] || deg[buckets[d].back()] != d)) {
          buckets[d].pop_back();
        }
        if (!buckets[d].empty()) break;
        ++d;
      }
      const std::size_t v = buckets[d].back();
      buckets[d].pop_back();
      done[v] = true;
      order.push_back(v);
      for (auto u : adj_[v]) {
        if (!done[u] && deg[u] > 0) {
          --deg[u];
          buckets[deg[u]].push_back(u);
        }
      }
    }
    return order;
  }

  void expand(std::vector<std::uint64_t>& P, std::vector<std::uint64_t>& X) {
    if (!any(P)) {
      if (!any(X)) {
        if (out_.size() >= cap_) {
          throw BudgetExceeded("window enumeration exceeded " + std::to_string(cap_) + " windows");
        }
        auto w = clique_;
        std::sort(w.begin(), w.end());
        out_.push_back(std::move(w));
      }
      return;
    }
    // Tomita pivot: the vertex of P u X with most neighbors in P.
    std::size_t pivot = kNone, best = 0;
    for (std::size_t k = 0; k < words_; ++k) {
      for (std::uint64_t w = P[k] | X[k]; w; w &= w - 1) {
        const std::size_t a = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
        const std::size_t c = common(P, a);
        if (pivot == kNone || c > best) {
          best = c;
          pivot = a;
        }
      }
    }
    std::vector<std::uint64_t> cand(words_);
    for (std::size_t k = 0; k < words_; ++k) cand[k] = P[k] & ~nbr_[pivot * words_ + k];
    std::vector<std::uint64_t> P2(words_), X2(words_);
    for (std::size_t k = 0; k < words_; ++k) {
      for (std::uint64_t w = cand[k]; w; w &= w - 1) {
        const std::size_t a = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
        const std::uint64_t* na = &nbr_[a * words_];
        for (std::size_t j = 0; j < words_; ++j) {
          P2[j] = P[j] & na[j];
          X2[j] = X[j] & na[j];
        }
        clique_.push_back(local_[a]);
        expand(P2, X2);
        clique_.pop_back();
        const std::uint64_t bit = std::uint64_t{1} << (a & 63);
        P[k] &= ~bit;
        X[k] |= bit;
      }
    }
  }

  const Adjacency& adj_;
  std::size_t cap_;
  std::vector<std::vector<std::size_t>> out_;
  // Current local problem.
  std::vector<std::size_t> local_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> nbr_;
  std::vector<std::size_t> clique_;
};

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_windows(const FiniteMetricSpace& image, Length R,
                                                        const WindowOptions& opts) {
  std::vector<std::vector<std::size_t>> windows;
  if (image.empty()) return windows;
  Adjacency adj = threshold_graph(image, R);
  if (opts.family == WindowFamily::kBalls) {
    windows.reserve(image.size());
    for (std::size_t y = 0; y < image.size(); ++y) {
      auto w = adj[y];
      w.insert(std::lower_bound(w.begin(), w.end(), y), y);
      windows.push_back(std::move(w));
    }
    if (windows.size() > opts.max_windows) {
      throw BudgetExceeded("window enumeration exceeded " + std::to_string(opts.max_windows) +
                           " windows");
    }
  } else {
    windows = CliqueEnumerator(adj, opts.max_windows).run();
  }
  std::sort(windows.begin(), windows.end());
  windows.erase(std::unique(windows.begin(), windows.end()), windows.end());
  return windows;
}

}  // namespace coarse
