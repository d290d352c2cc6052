#include <coarse/dimension.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>

namespace coarse {

nlohmann::json ColoredCover::to_json(const FiniteMetricSpace& space) const {
  nlohmann::json colors = nlohmann::json::object();
  for (std::size_t i = 0; i < coloring.size(); ++i) colors[std::to_string(space.id(i))] = coloring[i];
  return {{"n", n}, {"R", R}, {"B", B}, {"coloring", colors}};
}

bool verify_cover(const FiniteMetricSpace& space, const ColoredCover& cover) {
  const std::size_t m = space.size();
  if (cover.coloring.size() != m || cover.n < 0) return false;
  for (int c : cover.coloring) {
    if (c < 0 || c > cover.n) return false;
  }
  // Plain BFS over same-colored pairs within R.
  std::vector<int> comp(m, -1);
  int next = 0;
  for (std::size_t s = 0; s < m; ++s) {
    if (comp[s] != -1) continue;
    std::vector<std::size_t> members{s};
    comp[s] = next;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const std::size_t u = members[head];
      for (std::size_t v = 0; v < m; ++v) {
        if (comp[v] == -1 && cover.coloring[v] == cover.coloring[u] && space.dist(u, v) <= cover.R) {
          comp[v] = next;
          members.push_back(v);
        }
      }
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (space.dist(members[a], members[b]) > cover.B) return false;
      }
    }
    ++next;
  }
  return true;
}

namespace {

// Union-find components of one color class, pairs screened by depth bands.
std::vector<std::vector<std::size_t>> banded_components(const FiniteMetricSpace& space,
                                                        std::vector<std::size_t> members, Length R) {
  std::stable_sort(members.begin(), members.end(),
                   [&space](std::size_t a, std::size_t b) { return space.depth(a) < space.depth(b); });
  const std::size_t m = members.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (space.depth(members[b]) - space.depth(members[a]) > R) break;
      if (space.dist(members[a], members[b]) <= R) {
        const std::size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups(m);
  for (std::size_t a = 0; a < m; ++a) groups[find(a)].push_back(members[a]);
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

Length group_diameter(const FiniteMetricSpace& space, const std::vector<std::size_t>& g) {
  Length best = 0;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) best = std::max(best, space.dist(g[a], g[b]));
  }
  return best;
}

}  // namespace

Length cover_bound(const FiniteMetricSpace& space, const std::vector<int>& coloring, int n, Length R) {
  std::vector<std::vector<std::size_t>> classes(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < coloring.size(); ++i) classes[static_cast<std::size_t>(coloring[i])].push_back(i);
  Length B = 0;
  for (auto& cls : classes) {
    for (const auto& g : banded_components(space, cls, R)) B = std::max(B, group_diameter(space, g));
  }
  return B;
}

namespace {

// Branch-and-bound over colorings of at most 64 points. A point joins the
// components of its color that it touches; the merged component must stay a
// clique of the <= bound graph.
class CoverSearch {
 public:
  CoverSearch(const FiniteMetricSpace& space, int n, Length R, Length bound, std::uint64_t budget)
      : k_(n + 1), budget_(budget) {
    m_ = space.size();
    close_r_.assign(m_, 0);
    close_b_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        const Length d = space.dist(i, j);
        if (d <= R) close_r_[i] |= std::uint64_t{1} << j;
        if (d <= bound) close_b_[i] |= std::uint64_t{1} << j;
      }
    }
    order_ = fail_first_order();
    comps_.assign(static_cast<std::size_t>(k_), {});
    color_.assign(m_, -1);
  }

  Feasibility run() {
    const int r = dfs(0, 0);
    return r == 1 ? Feasibility::kFeasible : r == 0 ? Feasibility::kInfeasible : Feasibility::kUnknown;
  }
  const std::vector<int>& coloring() const { return color_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  // BFS over the R-graph from the best-connected unvisited point, so points
  // that can merge components are decided early.
  std::vector<std::size_t> fail_first_order() const {
    std::vector<std::size_t> order;
    std::vector<bool> seen(m_, false);
    while (order.size() < m_) {
      std::size_t start = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!seen[i] && (start == m_ || std::popcount(close_r_[i]) > std::popcount(close_r_[start]))) {
          start = i;
        }
      }
      std::deque<std::size_t> q{start};
      seen[start] = true;
      while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop_front();
        order.push_back(u);
        for (std::size_t v = 0; v < m_; ++v) {
          if (!seen[v] && ((close_r_[u] >> v) & 1)) {
            seen[v] = true;
            q.push_back(v);
          }
        }
      }
    }
    return order;
  }

  bool clique_ok(std::uint64_t merged) const {
    for (std::uint64_t rest = merged; rest; rest &= rest - 1) {
      const int q = std::countr_zero(rest);
      if (merged & ~close_b_[static_cast<std::size_t>(q)]) return false;
    }
    return true;
  }

  int dfs(std::size_t pos, int used) {
    if (pos == m_) return 1;
    if (++nodes_ > budget_) return -1;
    const std::size_t p = order_[pos];
    const std::uint64_t bit = std::uint64_t{1} << p;
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      auto& comps = comps_[static_cast<std::size_t>(c)];
      std::uint64_t merged = bit;
      std::vector<std::uint64_t> kept;
      kept.reserve(comps.size());
      for (auto comp : comps) {
        if (comp & close_r_[p]) {
          merged |= comp;
        } else {
          kept.push_back(comp);
        }
      }
      if (!clique_ok(merged)) continue;
      auto saved = std::move(comps);
      comps = std::move(kept);
      comps.push_back(merged);
      color_[p] = c;
      const int r = dfs(pos + 1, std::max(used, c + 1));
      if (r != 0) {
        if (r == 1) return 1;
        comps = std::move(saved);
        return r;
      }
      comps = std::move(saved);
      color_[p] = -1;
    }
    return 0;
  }

  std::size_t m_ = 0;
  int k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> close_r_, close_b_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::uint64_t>> comps_;
  std::vector<int> color_;
};

}  // namespace

Feasibility cover_feasible(const FiniteMetricSpace& space, int n, Length R, Length bound,
                           std::uint64_t node_budget, std::vector<int>* coloring,
                           std::uint64_t* nodes) {
  if (space.size() > 64) throw PreconditionError("cover_feasible handles at most 64 points");
  if (n < 0) throw PreconditionError("n must be non-negative");
  if (space.empty()) {
    if (coloring) coloring->clear();
    return Feasibility::kFeasible;
  }
  CoverSearch search(space, n, R, bound, node_budget);
  const auto r = search.run();
  if (nodes) *nodes = search.nodes();
  if (r == Feasibility::kFeasible && coloring) *coloring = search.coloring();
  return r;
}

ControlResult control_exact(const FiniteMetricSpace& space, int n, Length R, const DimensionLimits& limits) {
  if (space.size() > limits.exact_cap || space.size() > 64) {
    throw PreconditionError("control_exact: " + std::to_string(space.size()) +
                            " points exceeds the exact-size cap of " + std::to_string(limits.exact_cap));
  }
  if (n < 0) throw PreconditionError("n must be non-negative");
  ControlResult out;
  out.strategy = "exact";
  out.cover.n = n;
  out.cover.R = R;
  if (space.empty()) return out;
  std::vector<Length> cand{0};
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) cand.push_back(space.dist(i, j));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;
  std::vector<int> best(space.size(), 0);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<int> col;
    const auto f = cover_feasible(space, n, R, cand[mid], limits.node_budget, &col);
    if (f == Feasibility::kUnknown) {
      throw BudgetExceeded("control_exact: node budget exhausted at B = " + std::to_string(cand[mid]));
    }
    if (f == Feasibility::kFeasible) {
      hi = mid;
      best = std::move(col);
    } else {
      lo = mid + 1;
    }
  }
  out.cover.coloring = std::move(best);
  out.cover.B = cover_bound(space, out.cover.coloring, n, R);
  out.B = out.cover.B;
  return out;
}

nlohmann::json Refutation::to_json() const {
  return {{"n", n}, {"R", R}, {"B", B}, {"sub_instance", sub_instance}, {"nodes", nodes}};
}

namespace {

std::size_t refutation_size_cap(int n, const DimensionLimits& limits) {
  std::size_t cap = std::min<std::size_t>(40, limits.exact_cap);
  if (n == 0) return cap;
  // (n+1)^(m-1) colorings once the first point's color is fixed.
  std::size_t m = 1;
  long double count = 1;
  while (m < cap && count * (n + 1) <= static_cast<long double>(limits.exhaustion_cap)) {
    count *= (n + 1);
    ++m;
  }
  return m;
}

std::optional<Refutation> try_instance(const FiniteMetricSpace& space, std::vector<std::size_t> idx,
                                       int n, Length R, Length B, std::uint64_t budget) {
  std::sort(idx.begin(), idx.end());
  const FiniteMetricSpace sub = space.subspace(PointSet(idx));
  std::uint64_t nodes = 0;
  if (cover_feasible(sub, n, R, B, budget, nullptr, &nodes) != Feasibility::kInfeasible) return std::nullopt;
  Refutation ref;
  ref.n = n;
  ref.R = R;
  ref.B = B;
  ref.nodes = nodes;
  for (auto i : idx) ref.sub_instance.push_back(space.id(i));
  return ref;
}

// Hop-shortest path in the R-graph between two points.
std::vector<std::size_t> hop_path(const FiniteMetricSpace& space, std::size_t from, std::size_t to, Length R) {
  std::vector<std::size_t> prev(space.size(), space.size());
  std::deque<std::size_t> q{from};
  prev[from] = from;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    if (u == to) break;
    for (std::size_t v = 0; v < space.size(); ++v) {
      if (prev[v] == space.size() && space.dist(u, v) <= R) {
        prev[v] = u;
        q.push_back(v);
      }
    }
  }
  std::vector<std::size_t> path;
  if (prev[to] == space.size()) return path;
  for (std::size_t v = to; v != from; v = prev[v]) path.push_back(v);
  path.push_back(from);
  return path;
}

std::vector<std::size_t> greedy_net(const FiniteMetricSpace& space, Length spacing) {
  std::vector<std::size_t> net;
  for (std::size_t i = 0; i < space.size(); ++i) {
    bool ok = true;
    for (auto j : net) {
      if (space.dist(i, j) < spacing) {
        ok = false;
        break;
      }
    }
    if (ok) net.push_back(i);
  }
  return net;
}

}  // namespace

std::optional<Refutation> control_lower(const FiniteMetricSpace& space, int n, Length R, Length B,
                                        const DimensionLimits& limits) {
  if (n < 0 || space.empty()) return std::nullopt;
  const std::size_t cap = refutation_size_cap(n, limits);
  const std::uint64_t budget = std::min<std::uint64_t>(limits.node_budget, 1ULL << 20);

  if (space.size() <= cap) {
    std::vector<std::size_t> all(space.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (auto ref = try_instance(space, all, n, R, B, budget)) return ref;
    return std::nullopt;
  }

  if (n == 0) {
    // A single color: any R-connected chain spanning more than B refutes.
    for (const auto& comp : banded_components(space, [&] {
           std::vector<std::size_t> all(space.size());
           std::iota(all.begin(), all.end(), std::size_t{0});
           return all;
         }(), R)) {
      std::size_t a = comp.front(), b = comp.front();
      Length d = 0;
      // Double sweep for a far pair.
      for (int sweep = 0; sweep < 2; ++sweep) {
        const std::size_t from = sweep == 0 ? comp.front() : a;
        for (auto v : comp) {
          if (space.dist(from, v) > d || sweep == 1) {
            if (space.dist(from, v) > (sweep == 0 ? d : space.dist(a, b))) {
              if (sweep == 0) {
                a = v;
                d = space.dist(from, v);
              } else {
                b = v;
              }
            }
          }
        }
        if (sweep == 0) b = a, d = 0;
      }
      if (space.dist(a, b) <= B) continue;
      auto path = hop_path(space, a, b, R);
      // The shortest prefix whose ends are farther apart than B already refutes.
      for (std::size_t k = 1; k < path.size(); ++k) {
        if (space.dist(path.front(), path[k]) > B) {
          path.resize(k + 1);
          break;
        }
      }
      if (path.empty() || path.size() > cap) continue;
      if (auto ref = try_instance(space, path, n, R, B, budget)) return ref;
    }
    return std::nullopt;
  }

  std::vector<Length> spacings;
  for (Length s : {R, std::ceil(3 * R / 4), std::ceil(2 * R / 3), std::floor(R / 2) + 1}) {
    if (s >= 1 && std::find(spacings.begin(), spacings.end(), s) == spacings.end()) spacings.push_back(s);
  }
  std::vector<std::size_t> sizes;
  for (std::size_t m : {4, 9, 16, 25, 36, 40}) {
    if (m >= static_cast<std::size_t>(n) + 2 && m <= cap) sizes.push_back(m);
  }
  if (sizes.empty() || sizes.back() != cap) sizes.push_back(cap);

  const Length half = space.max_depth() / 2;
  for (Length s : spacings) {
    const auto net = greedy_net(space, s);
    if (net.size() < static_cast<std::size_t>(n) + 2) continue;
    std::vector<std::size_t> centers = net;
    std::stable_sort(centers.begin(), centers.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(space.depth(a) - half) < std::abs(space.depth(b) - half);
    });
    auto nearest_base = std::min_element(net.begin(), net.end(), [&](std::size_t a, std::size_t b) {
      return space.depth(a) < space.depth(b);
    });
    centers.insert(centers.begin(), *nearest_base);
    if (centers.size() > 6) centers.resize(6);
    for (auto c : centers) {
      std::vector<std::size_t> by_dist = net;
      std::stable_sort(by_dist.begin(), by_dist.end(), [&](std::size_t a, std::size_t b) {
        const Length da = space.dist(c, a), db = space.dist(c, b);
        return da != db ? da < db : a < b;
      });
      for (std::size_t m : sizes) {
        if (m > by_dist.size()) break;
        std::vector<std::size_t> sub(by_dist.begin(), by_dist.begin() + static_cast<std::ptrdiff_t>(m));
        if (auto ref = try_instance(space, sub, n, R, B, budget)) return ref;
      }
    }
  }
  return std::nullopt;
}

bool verify_refutation(const FiniteMetricSpace& space, const Refutation& ref, std::uint64_t exhaustion_cap) {
  std::vector<std::size_t> idx;
  for (PointId p : ref.sub_instance) {
    auto i = space.index_of(p);
    if (!i) return false;
    idx.push_back(*i);
  }
  const std::size_t m = idx.size();
  if (m == 0) return false;
  const int colors = ref.n + 1;
  std::vector<int> color(m, -1);
  std::uint64_t visited = 0;
  bool found_valid = false;
  bool overflow = false;

  // Monochromatic R-component of point p among assigned points; its diameter
  // must stay within B.
  auto component_ok = [&](std::size_t p) {
    std::vector<std::size_t> comp{p};
    std::vector<bool> in(m, false);
    in[p] = true;
    for (std::size_t h = 0; h < comp.size(); ++h) {
      for (std::size_t v = 0; v < m; ++v) {
        if (!in[v] && color[v] == color[p] && space.dist(idx[comp[h]], idx[v]) <= ref.R) {
          in[v] = true;
          comp.push_back(v);
        }
      }
    }
    for (std::size_t a = 0; a < comp.size(); ++a) {
      for (std::size_t b = a + 1; b < comp.size(); ++b) {
        if (space.dist(idx[comp[a]], idx[comp[b]]) > ref.B) return false;
      }
    }
    return true;
  };

  std::vector<int> next(m, 0);
  std::size_t pos = 0;
  // Iterative depth-first enumeration; point 0 is pinned to color 0.
  while (true) {
    if (found_valid || overflow) break;
    if (pos == m) {
      found_valid = true;
      break;
    }
    const int limit = pos == 0 ? 1 : colors;
    if (next[pos] >= limit) {
      color[pos] = -1;
      next[pos] = 0;
      if (pos == 0) break;
      --pos;
      continue;
    }
    color[pos] = next[pos]++;
    if (++visited > exhaustion_cap) {
      overflow = true;
      break;
    }
    if (component_ok(pos)) ++pos;
  }
  return !found_valid && !overflow;
}

std::string to_string(UpperStrategy s) {
  switch (s) {
    case UpperStrategy::kComponents: return "components";
    case UpperStrategy::kLayered: return "layered";
    case UpperStrategy::kBrick: return "brick";
    case UpperStrategy::kGreedy: return "greedy";
    case UpperStrategy::kBest: return "best";
  }
  return "best";
}

UpperStrategy upper_strategy_from_string(const std::string& s) {
  if (s == "components") return UpperStrategy::kComponents;
  if (s == "layered") return UpperStrategy::kLayered;
  if (s == "brick") return UpperStrategy::kBrick;
  if (s == "greedy") return UpperStrategy::kGreedy;
  if (s == "best") return UpperStrategy::kBest;
  throw ConfigError("unknown strategy '" + s + "' (expected components|layered|brick|greedy|best)");
}

nlohmann::json AsdimReport::to_json() const {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : table) {
    cells.push_back({{"n", c.n}, {"R", c.R}, {"r", c.r}, {"B", c.B},
                     {"exactness", to_string(c.exactness)}, {"strategy", c.strategy},
                     {"verified", c.verified}, {"construction_B", c.construction_B}});
  }
  nlohmann::json lows = nlohmann::json::array();
  for (const auto& l : lower) {
    nlohmann::json row = {{"n", l.n}, {"R", l.R}, {"r", l.r}, {"B_cap", l.B_cap},
                          {"refuted", l.refutation.has_value()}, {"verified", l.verified}};
    if (l.refutation) row["certificate"] = l.refutation->to_json();
    lows.push_back(std::move(row));
  }
  return {{"tower", tower},
          {"radii", radii},
          {"R", R_list},
          {"n_max", n_max},
          {"table", cells},
          {"lower", lows},
          {"interval", {lo, hi ? nlohmann::json(*hi) : nlohmann::json(nullptr)}}};
}

AsdimReport asdim_estimate(const TruncationTower& tower, int n_max, const std::vector<Length>& R_list,
                           const std::vector<Length>& radii_in, const AsdimOptions& opts) {
  AsdimReport rep;
  rep.tower = tower.name();
  rep.radii = radii_in;
  std::sort(rep.radii.begin(), rep.radii.end());
  rep.R_list = R_list;
  rep.n_max = n_max;

  std::vector<std::shared_ptr<const FiniteMetricSpace>> spaces;
  for (Length r : rep.radii) spaces.push_back(tower.truncation(r));

  for (int n = 0; n <= n_max; ++n) {
    bool all_stable = !R_list.empty();
    for (Length R : R_list) {
      std::vector<Length> Bs, built;
      for (std::size_t k = 0; k < rep.radii.size(); ++k) {
        const auto& sp = *spaces[k];
        ControlCell cell;
        cell.n = n;
        cell.R = R;
        cell.r = rep.radii[k];
        ControlResult res;
        bool solved = false;
        if (sp.size() <= opts.limits.exact_cap && sp.size() <= 64) {
          try {
            res = control_exact(sp, n, R, opts.limits);
            solved = true;
          } catch (const BudgetExceeded&) {
          }
        }
        ControlResult upper;
        try {
          upper = control_upper(sp, n, R, opts.strategy, opts.seed);
        } catch (const PreconditionError&) {
          // A forced strategy that does not apply at this n (brick below 2, no chart).
          upper = control_upper(sp, n, R, UpperStrategy::kBest, opts.seed);
        }
        if (!solved) res = upper;
        cell.B = res.B;
        cell.construction_B = upper.B;
        cell.exactness = res.exactness;
        cell.strategy = res.strategy;
        cell.verified = verify_cover(sp, res.cover) && (!solved || verify_cover(sp, upper.cover));
        Bs.push_back(cell.B);
        built.push_back(upper.B);
        rep.table.push_back(cell);
      }
      all_stable = all_stable && (last_three_trend(Bs) == Trend::kStable ||
                                  last_three_trend(built) == Trend::kStable);
    }
    if (all_stable && !rep.hi) rep.hi = n;
  }

  if (opts.lower_bounds && rep.radii.size() >= 3) {
    const std::size_t first = rep.radii.size() - 3;
    std::vector<Length> caps;
    for (std::size_t k = first; k < rep.radii.size(); ++k) {
      caps.push_back(diameter(*spaces[k], all_points(*spaces[k])).value_or(0) / 4);
    }
    const int top = rep.hi ? *rep.hi - 1 : n_max;
    for (int n = 0; n <= top; ++n) {
      bool refuted = false;
      for (Length R : R_list) {
        bool all = true;
        std::vector<LowerCell> cells;
        for (std::size_t k = first; k < rep.radii.size(); ++k) {
          LowerCell cell;
          cell.n = n;
          cell.R = R;
          cell.r = rep.radii[k];
          cell.B_cap = caps[k - first];
          cell.refutation = control_lower(*spaces[k], n, R, cell.B_cap, opts.limits);
          if (cell.refutation) {
            cell.verified = verify_refutation(*spaces[k], *cell.refutation, opts.limits.exhaustion_cap);
          }
          all = all && cell.refutation && cell.verified;
          cells.push_back(std::move(cell));
          if (!all) break;
        }
        rep.lower.insert(rep.lower.end(), cells.begin(), cells.end());
        if (all) {
          refuted = true;
          break;
        }
      }
      if (!refuted) break;
      rep.lo = n + 1;
    }
  }
  return rep;
}

nlohmann::json RaisingVerdict::to_json() const {
  return {{"verdict", verdict},
          {"consistent", consistent},
          {"bound_attainable", bound_attainable},
          {"preserving_admissible", preserving_admissible},
          {"coarsely_open", coarsely_open}};
}

RaisingVerdict check_raising_inequality(const DimInterval& X, const DimInterval& Y, int n, bool coarsely_open) {
  RaisingVerdict v;
  v.coarsely_open = coarsely_open;
  const bool inequality = !X.hi || Y.lo <= *X.hi + n - 1;
  // Some a in X, b in Y with b = a + n - 1.
  {
    const int lo = std::max(X.lo + n - 1, Y.lo);
    const bool x_open = !X.hi, y_open = !Y.hi;
    const int hi_x = x_open ? lo : *X.hi + n - 1;
    const int hi_y = y_open ? lo : *Y.hi;
    v.bound_attainable = lo <= std::min(hi_x, hi_y);
  }
  {
    const int lo = std::max(X.lo, Y.lo);
    const int hi_x = X.hi ? *X.hi : lo;
    const int hi_y = Y.hi ? *Y.hi : lo;
    v.preserving_admissible = lo <= std::min(hi_x, hi_y);
  }
  v.consistent = inequality && (!coarsely_open || v.preserving_admissible);
  v.verdict = v.consistent ? "consistent" : "violation";
  return v;
}

}  // namespace coarse
