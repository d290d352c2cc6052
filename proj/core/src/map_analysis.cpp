#include <coarse/map_analysis.hpp>

#include <coarse/parallel.hpp>
#include <coarse/report.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace coarse {

Length image_radius(const MapSpec& f, Length r) {
  if (f.image_radius) return f.image_radius(r);
  auto src = f.source->truncation(r);
  const auto& d = f.target->metric();
  const PointId y0 = f.target->basepoint();
  Length best = 0;
  for (PointId x : src->ids()) best = std::max(best, d(y0, f.apply(x)));
  return best;
}

ImageView make_image_view(const MapSpec& f, Length r) {
  ImageView view;
  view.source = f.source->truncation(r);
  const auto& src = *view.source;
  std::vector<PointId> mapped(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) mapped[i] = f.apply(src.id(i));
  std::vector<PointId> ids = mapped;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  view.image = std::make_shared<const FiniteMetricSpace>(ids, f.target->basepoint(),
                                                         f.target->metric(), f.target->chart());
  view.image_of.resize(src.size());
  view.fibers.assign(ids.size(), {});
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::size_t j = static_cast<std::size_t>(
        std::lower_bound(ids.begin(), ids.end(), mapped[i]) - ids.begin());
    view.image_of[i] = j;
    view.fibers[j].push_back(i);
  }
  return view;
}

std::vector<Length> geometric_grid(Length cap) {
  std::vector<Length> out;
  for (Length v = 1; v <= cap; v *= 2) out.push_back(v);
  return out;
}

nlohmann::json ScaleProfile::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : samples) {
    nlohmann::json row = {{"scale", s.scale},       {"r", s.r},
                          {"value", s.value},       {"interior", s.interior},
                          {"saturated", s.saturated}, {"exactness", to_string(s.exactness)}};
    if (s.exactness == Exactness::kInterval) row["value_lo"] = s.value_lo;
    if (s.empty) row["empty"] = true;
    rows.push_back(std::move(row));
  }
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : per_scale) {
    verdicts.push_back({{"scale", v.scale}, {"trend", to_string(v.trend)}, {"verdict", to_string(v.verdict)}});
  }
  return {{"kind", kind}, {"samples", rows}, {"per_scale", verdicts}, {"verdict", to_string(verdict)}};
}

namespace {

void require_declared(const TruncationTower& tower, const std::vector<Length>& radii) {
  const auto& declared = tower.declared_radii();
  for (Length r : radii) {
    if (!std::binary_search(declared.begin(), declared.end(), r)) {
      throw PreconditionError("radius " + format_length(r) + " is not a declared radius of tower '" +
                              tower.name() + "'");
    }
  }
}

Length interior_limit(Length r) { return kInteriorFraction * r; }

// Trend of one scale across radii. Interval cells are judged conservatively:
// stable needs equal upper ends, growth needs strictly growing lower ends.
ScaleVerdict judge(Length scale, const std::vector<const ProfileSample*>& cells) {
  std::vector<Length> hi, lo;
  for (const auto* c : cells) {
    hi.push_back(c->interior);
    lo.push_back(c->exactness == Exactness::kInterval ? c->interior_lo : c->interior);
  }
  ScaleVerdict v;
  v.scale = scale;
  const Trend t_hi = last_three_trend(hi);
  const Trend t_lo = last_three_trend(lo);
  if (t_hi == Trend::kTooShort) {
    v.trend = Trend::kTooShort;
  } else if (t_hi == Trend::kStable) {
    v.trend = Trend::kStable;
  } else if (t_lo == Trend::kGrowing) {
    v.trend = Trend::kGrowing;
  } else {
    v.trend = Trend::kOther;
  }
  v.verdict = v.trend == Trend::kStable    ? Verdict::kEvidence
              : v.trend == Trend::kGrowing ? Verdict::kRefuted
                                           : Verdict::kInconclusive;
  return v;
}

void sort_samples(std::vector<ProfileSample>& samples) {
  std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
    return a.scale != b.scale ? a.scale < b.scale : a.r < b.r;
  });
}

// "every scale stabilizes" verdict used by coarse, proper and n-to-1.
void finish_all_scales(ScaleProfile& p) {
  sort_samples(p.samples);
  std::map<Length, std::vector<const ProfileSample*>> by_scale;
  for (const auto& s : p.samples) by_scale[s.scale].push_back(&s);
  bool all = !by_scale.empty(), refuted = false;
  for (const auto& [scale, cells] : by_scale) {
    auto v = judge(scale, cells);
    all = all && v.verdict == Verdict::kEvidence;
    refuted = refuted || v.verdict == Verdict::kRefuted;
    p.per_scale.push_back(v);
  }
  p.verdict = refuted ? Verdict::kRefuted : all ? Verdict::kEvidence : Verdict::kInconclusive;
}

// Pairs (i, j), i < j, with source distance <= R, visited via depth banding.
template <class Fn>
void for_close_pairs(const FiniteMetricSpace& s, Length R, Fn&& fn) {
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&s](std::size_t a, std::size_t b) { return s.depth(a) < s.depth(b); });
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t u = order[a];
    fn(u, u);
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t v = order[b];
      if (s.depth(v) - s.depth(u) > R) break;
      if (s.dist(u, v) <= R) fn(u, v);
    }
  }
}

ProfileSample coarseness_on(const ImageView& view, Length R, Length r) {
  ProfileSample out;
  out.scale = R;
  out.r = r;
  const auto& src = *view.source;
  const auto& img = *view.image;
  if (src.empty()) {
    out.empty = true;
    return out;
  }
  const Length lim = interior_limit(r);
  for_close_pairs(src, R, [&](std::size_t u, std::size_t v) {
    const Length d = img.dist(view.image_of[u], view.image_of[v]);
    out.value = std::max(out.value, d);
    if (src.depth(u) <= lim && src.depth(v) <= lim) out.interior = std::max(out.interior, d);
  });
  out.value_lo = out.value;
  out.interior_lo = out.interior;
  out.saturated = out.value > out.interior;
  return out;
}

ProfileSample properness_on(const ImageView& view, Length S, Length r) {
  ProfileSample out;
  out.scale = S;
  out.r = r;
  const auto& src = *view.source;
  const auto& img = *view.image;
  if (src.empty()) {
    out.empty = true;
    return out;
  }
  const Length lim = interior_limit(r);
  for (std::size_t j = 0; j < img.size(); ++j) {
    if (img.depth(j) > S) continue;
    for (auto x : view.fibers[j]) {
      out.value = std::max(out.value, src.depth(x));
      if (src.depth(x) <= lim) out.interior = std::max(out.interior, src.depth(x));
    }
  }
  out.value_lo = out.value;
  out.interior_lo = out.interior;
  out.saturated = out.value > lim;
  return out;
}

}  // namespace

ProfileSample coarseness_at(const MapSpec& f, Length R, Length r) {
  return coarseness_on(make_image_view(f, r), R, r);
}

ScaleProfile coarseness_profile(const MapSpec& f, const std::vector<Length>& R_list,
                                const std::vector<Length>& radii) {
  require_declared(*f.source, radii);
  ScaleProfile p;
  p.kind = "coarse";
  for (Length r : radii) {
    const auto view = make_image_view(f, r);
    for (Length R : R_list) p.samples.push_back(coarseness_on(view, R, r));
  }
  finish_all_scales(p);
  return p;
}

ProfileSample properness_at(const MapSpec& f, Length S, Length r) {
  return properness_on(make_image_view(f, r), S, r);
}

ScaleProfile properness_profile(const MapSpec& f, const std::vector<Length>& S_list,
                                const std::vector<Length>& radii) {
  require_declared(*f.source, radii);
  ScaleProfile p;
  p.kind = "proper";
  for (Length r : radii) {
    const auto view = make_image_view(f, r);
    for (Length S : S_list) p.samples.push_back(properness_on(view, S, r));
  }
  finish_all_scales(p);
  return p;
}

Length closeness_gap(const MapSpec& f, const MapSpec& g, Length r) {
  const bool same_source = f.source == g.source ||
                           (f.source->name() == g.source->name() &&
                            f.source->generator() == g.source->generator() &&
                            !f.source->generator().is_null());
  const bool same_target = f.target == g.target ||
                           (f.target->name() == g.target->name() &&
                            f.target->generator() == g.target->generator() &&
                            !f.target->generator().is_null());
  if (!same_source || !same_target) {
    throw PreconditionError("closeness_gap needs maps between the same towers ('" + f.name +
                            "' and '" + g.name + "' differ)");
  }
  auto src = f.source->truncation(r);
  const auto& d = f.target->metric();
  Length gap = 0;
  for (PointId x : src->ids()) gap = std::max(gap, d(f.apply(x), g.apply(x)));
  return gap;
}

SurjectivityResult surjectivity_defect(const MapSpec& f, Length r) {
  SurjectivityResult out;
  auto inner = f.source->truncation(r);
  auto outer = f.source->truncation(2 * r);
  const auto& dt = f.target->metric();
  const PointId y0 = f.target->basepoint();

  std::unordered_set<PointId> inner_ids(inner->ids().begin(), inner->ids().end());
  Length cov = kInfinity;
  for (PointId x : outer->ids()) {
    if (!inner_ids.count(x)) cov = std::min(cov, dt(y0, f.apply(x)));
  }
  const Length t = std::isfinite(cov) ? cov : image_radius(f, r);
  out.coverage_radius = cov;

  // Image points sorted by depth for banded nearest-point search.
  std::vector<PointId> image;
  image.reserve(inner->size());
  for (PointId x : inner->ids()) image.push_back(f.apply(x));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::vector<std::pair<Length, PointId>> by_depth;
  by_depth.reserve(image.size());
  for (PointId y : image) by_depth.emplace_back(dt(y0, y), y);
  std::sort(by_depth.begin(), by_depth.end());
  std::unordered_set<PointId> image_set(image.begin(), image.end());

  auto region = f.target->truncation(t);
  for (std::size_t i = 0; i < region->size(); ++i) {
    const PointId y = region->id(i);
    const Length dy = region->depth(i);
    Length best = 0;
    if (!image_set.count(y)) {
      best = kInfinity;
      // Expand outward from depth dy; stop once the depth gap exceeds best.
      auto mid = std::lower_bound(by_depth.begin(), by_depth.end(), std::make_pair(dy, PointId{0}),
                                  [](const auto& a, const auto& b) { return a.first < b.first; });
      auto lo = mid, hi = mid;
      while (lo != by_depth.begin() || hi != by_depth.end()) {
        const Length gl = lo != by_depth.begin() ? dy - std::prev(lo)->first : kInfinity;
        const Length gh = hi != by_depth.end() ? hi->first - dy : kInfinity;
        if (std::min(gl, gh) > best) break;
        if (gl <= gh) {
          --lo;
          best = std::min(best, dt(y, lo->second));
        } else {
          best = std::min(best, dt(y, hi->second));
          ++hi;
        }
      }
    }
    if (dy + best > cov) continue;
    ++out.evaluated;
    if (!out.witness || best > out.defect) {
      out.defect = best;
      out.witness = y;
    }
  }
  return out;
}

Graph conflict_graph(const FiniteMetricSpace& space, const std::vector<std::size_t>& pts, Length S) {
  const std::size_t m = pts.size();
  std::vector<char> far(m * m, 0);
  std::vector<std::size_t> degree(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (space.dist(pts[a], pts[b]) > S) {
        far[a * m + b] = far[b * m + a] = 1;
        ++degree[a];
        ++degree[b];
      }
    }
  }
  // Rows are filled in index order, so the lists come out sorted.
  Graph g(m);
  for (std::size_t a = 0; a < m; ++a) {
    g.adj[a].reserve(degree[a]);
    for (std::size_t b = 0; b < m; ++b) {
      if (far[a * m + b]) g.adj[a].push_back(static_cast<std::uint32_t>(b));
    }
  }
  return g;
}

SplitResult min_split_diameter(const FiniteMetricSpace& space, const std::vector<std::size_t>& pts,
                               int n, const KColorLimits& limits) {
  if (n <= 0) throw PreconditionError("n must be at least 1");
  SplitResult out;
  const std::size_t m = pts.size();
  if (m <= static_cast<std::size_t>(n)) {
    out.colors.resize(m);
    std::iota(out.colors.begin(), out.colors.end(), 0);
    return out;
  }
  std::vector<Length> cand{0};
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) cand.push_back(space.dist(pts[a], pts[b]));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  if (n == 1) {
    out.S = out.S_lo = cand.back();
    out.colors.assign(m, 0);
    return out;
  }
  std::map<std::size_t, KColorResult> memo;
  auto test = [&](std::size_t idx) -> const KColorResult& {
    auto it = memo.find(idx);
    if (it == memo.end()) {
      it = memo.emplace(idx, k_colorable(conflict_graph(space, pts, cand[idx]), n, limits)).first;
    }
    return it->second;
  };
  std::size_t lo = 0, hi = cand.size() - 1;
  bool unknown = false;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto& r = test(mid);
    if (r.outcome == ColorOutcome::kColorable) {
      hi = mid;
    } else {
      unknown = unknown || r.outcome == ColorOutcome::kUnknown;
      lo = mid + 1;
    }
  }
  out.S = cand[hi];
  const auto& top = test(hi);
  out.colors = top.outcome == ColorOutcome::kColorable ? top.coloring : std::vector<int>(m, 0);
  out.S_lo = out.S;
  if (unknown) {
    // Lower end: just above the largest threshold proven infeasible.
    std::size_t l2 = 0, h2 = hi;
    while (l2 < h2) {
      const std::size_t mid = l2 + (h2 - l2) / 2;
      if (test(mid).outcome == ColorOutcome::kNotColorable) {
        l2 = mid + 1;
      } else {
        h2 = mid;
      }
    }
    out.S_lo = cand[l2];
    out.exact = l2 == hi;
  }
  return out;
}

namespace {

struct FiberKeyHash {
  std::size_t operator()(const std::vector<std::size_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct WindowFiber {
  std::vector<std::size_t> window;
  std::size_t fiber_slot;
};

struct FiberTable {
  std::vector<std::vector<std::size_t>> fibers;  // distinct fibers
  std::vector<bool> interior;
  std::vector<WindowFiber> windows;
};

FiberTable collect_fibers(const ImageView& view, Length R, Length r, const WindowOptions& wopts) {
  FiberTable t;
  const auto windows = enumerate_windows(*view.image, R, wopts);
  std::unordered_map<std::vector<std::size_t>, std::size_t, FiberKeyHash> slot;
  const Length lim = interior_limit(r);
  t.windows.reserve(windows.size());
  for (const auto& w : windows) {
    std::vector<std::size_t> fiber;
    for (auto j : w) fiber.insert(fiber.end(), view.fibers[j].begin(), view.fibers[j].end());
    std::sort(fiber.begin(), fiber.end());
    auto [it, inserted] = slot.emplace(fiber, t.fibers.size());
    if (inserted) {
      bool in = true;
      for (auto x : fiber) in = in && view.source->depth(x) <= lim;
      t.fibers.push_back(std::move(fiber));
      t.interior.push_back(in);
    }
    t.windows.push_back({w, it->second});
  }
  return t;
}

// Fibers whose split cannot exceed the running maxima are skipped. Blocks of
// fibers are processed in a fixed order with thresholds frozen per block, so
// the maxima do not depend on the worker count.
// Blocks start small so the thresholds are useful early.
constexpr std::size_t kFirstBlock = 64;
constexpr std::size_t kMaxBlock = 4096;

template <typename Key>
std::vector<std::size_t> order_by_descending(std::size_t n, Key key) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Length> k(n);
  parallel_for(n, [&](std::size_t i) { k[i] = key(i); });
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return k[a] > k[b]; });
  return order;
}

Length fiber_diameter(const FiniteMetricSpace& space, const std::vector<std::size_t>& pts) {
  Length d = 0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) d = std::max(d, space.dist(pts[a], pts[b]));
  }
  return d;
}

void merge_split(NToOneResult& out, const SplitResult& s, bool interior) {
  out.S = std::max(out.S, s.S);
  out.S_lo = std::max(out.S_lo, s.S_lo);
  if (!s.exact) out.exactness = Exactness::kInterval;
  if (interior) {
    out.interior_S = std::max(out.interior_S, s.S);
    out.interior_S_lo = std::max(out.interior_S_lo, s.S_lo);
  }
}

NToOneResult n_to_1_on(const ImageView& view, int n, Length R, Length r, const NToOneOptions& opts) {
  if (n <= 0) throw PreconditionError("n_to_1_threshold needs n >= 1");
  NToOneResult out;
  const FiberTable t = collect_fibers(view, R, r, opts.windows);
  out.windows = t.windows.size();
  out.distinct_fibers = t.fibers.size();
  const auto& src = *view.source;

  if (!opts.keep_certificates) {
    const auto order = order_by_descending(t.fibers.size(),
                                           [&](std::size_t i) { return fiber_diameter(src, t.fibers[i]); });
    for (std::size_t begin = 0, block = kFirstBlock; begin < order.size();
         begin += block, block = std::min(2 * block, kMaxBlock)) {
      const std::size_t count = std::min(block, order.size() - begin);
      const Length T_all = out.S, T_in = out.interior_S;
      std::vector<std::optional<SplitResult>> part(count);
      parallel_for(count, [&](std::size_t j) {
        const std::size_t i = order[begin + j];
        const auto& fiber = t.fibers[i];
        const Length T = t.interior[i] ? std::min(T_all, T_in) : T_all;
        if (fiber.size() <= static_cast<std::size_t>(n) || fiber_diameter(src, fiber) <= T) return;
        if (k_colorable(conflict_graph(src, fiber, T), n, opts.limits).outcome == ColorOutcome::kColorable) return;
        part[j] = min_split_diameter(src, fiber, n, opts.limits);
      });
      for (std::size_t j = 0; j < count; ++j) {
        if (part[j]) merge_split(out, *part[j], t.interior[order[begin + j]]);
      }
    }
    out.saturated = out.S > out.interior_S;
    return out;
  }

  std::vector<SplitResult> splits(t.fibers.size());
  parallel_for(t.fibers.size(), [&](std::size_t i) {
    splits[i] = min_split_diameter(src, t.fibers[i], n, opts.limits);
  });
  for (std::size_t i = 0; i < splits.size(); ++i) merge_split(out, splits[i], t.interior[i]);
  out.saturated = out.S > out.interior_S;
  out.certificates.reserve(t.windows.size());
  for (const auto& w : t.windows) {
    WindowCertificate c;
    for (auto j : w.window) c.window.push_back(view.image->id(j));
    const auto& fiber = t.fibers[w.fiber_slot];
    for (auto x : fiber) c.fiber.push_back(src.id(x));
    const auto& sp = splits[w.fiber_slot];
    c.colors = sp.colors;
    c.S = sp.S;
    c.S_lo = sp.S_lo;
    c.exact = sp.exact;
    c.interior = t.interior[w.fiber_slot];
    out.certificates.push_back(std::move(c));
  }
  return out;
}

}  // namespace

NToOneResult n_to_1_threshold(const MapSpec& f, int n, Length R, Length r, const NToOneOptions& opts) {
  if (n <= 0) throw PreconditionError("n_to_1_threshold needs n >= 1");
  return n_to_1_on(make_image_view(f, r), n, R, r, opts);
}

ScaleProfile n_to_1_profile(const MapSpec& f, int n, const std::vector<Length>& R_list,
                            const std::vector<Length>& radii, const NToOneOptions& opts) {
  if (n <= 0) throw PreconditionError("n_to_1_profile needs n >= 1");
  require_declared(*f.source, radii);
  ScaleProfile p;
  p.kind = "ntone";
  NToOneOptions inner = opts;
  inner.keep_certificates = false;
  for (Length r : radii) {
    const auto view = make_image_view(f, r);
    for (Length R : R_list) {
      const auto res = n_to_1_on(view, n, R, r, inner);
      ProfileSample s;
      s.scale = R;
      s.r = r;
      s.value = res.S;
      s.value_lo = res.S_lo;
      s.interior = res.interior_S;
      s.interior_lo = res.interior_S_lo;
      s.saturated = res.saturated;
      s.exactness = res.exactness;
      s.empty = view.source->empty();
      p.samples.push_back(s);
    }
  }
  finish_all_scales(p);
  return p;
}

namespace {

std::vector<ProfileSample> finite_on(const ImageView& view, Length R, Length r,
                                     const std::vector<Length>& S_grid, const NToOneOptions& opts) {
  const FiberTable t = collect_fibers(view, R, r, opts.windows);
  const auto& src = *view.source;
  const auto order = order_by_descending(t.fibers.size(),
                                         [&](std::size_t i) { return static_cast<Length>(t.fibers[i].size()); });
  std::vector<ProfileSample> out;
  for (Length S : S_grid) {
    ProfileSample s;
    s.scale = S;
    s.r = r;
    s.empty = src.empty();
    // Same block pruning as the n-to-1 threshold, against a greedy coloring.
    for (std::size_t begin = 0, block = kFirstBlock; begin < order.size();
         begin += block, block = std::min(2 * block, kMaxBlock)) {
      const std::size_t count = std::min(block, order.size() - begin);
      const Length T_all = s.value, T_in = s.interior;
      std::vector<std::optional<ChromaticBounds>> part(count);
      parallel_for(count, [&](std::size_t j) {
        const std::size_t i = order[begin + j];
        const auto& fiber = t.fibers[i];
        const Length T = t.interior[i] ? std::min(T_all, T_in) : T_all;
        if (static_cast<Length>(fiber.size()) <= T) return;
        const Graph g = conflict_graph(src, fiber, S);
        const auto greedy = dsatur_greedy(g);
        const int used = greedy.empty() ? 0 : *std::max_element(greedy.begin(), greedy.end()) + 1;
        if (static_cast<Length>(used) <= T) return;
        part[j] = chromatic_number(g, opts.limits);
      });
      for (std::size_t j = 0; j < count; ++j) {
        if (!part[j]) continue;
        const auto& c = *part[j];
        s.value = std::max<Length>(s.value, c.hi);
        s.value_lo = std::max<Length>(s.value_lo, c.lo);
        if (!c.exact()) s.exactness = Exactness::kInterval;
        if (t.interior[order[begin + j]]) {
          s.interior = std::max<Length>(s.interior, c.hi);
          s.interior_lo = std::max<Length>(s.interior_lo, c.lo);
        }
      }
    }
    s.saturated = s.value > s.interior;
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<ProfileSample> finite_to_1_at(const MapSpec& f, Length R, Length r,
                                          const std::vector<Length>& S_grid,
                                          const NToOneOptions& opts) {
  if (S_grid.empty()) throw PreconditionError("finite_to_1_profile needs a nonempty S grid");
  return finite_on(make_image_view(f, r), R, r, S_grid, opts);
}

ScaleProfile finite_to_1_profile(const MapSpec& f, Length R, const std::vector<Length>& radii,
                                 const std::vector<Length>& S_grid, const NToOneOptions& opts) {
  if (S_grid.empty()) throw PreconditionError("finite_to_1_profile needs a nonempty S grid");
  require_declared(*f.source, radii);
  ScaleProfile p;
  p.kind = "finite";
  for (Length r : radii) {
    auto cells = finite_on(make_image_view(f, r), R, r, S_grid, opts);
    p.samples.insert(p.samples.end(), cells.begin(), cells.end());
  }
  sort_samples(p.samples);
  std::map<Length, std::vector<const ProfileSample*>> by_scale;
  for (const auto& s : p.samples) by_scale[s.scale].push_back(&s);
  bool any = false, all_growing = !by_scale.empty();
  for (const auto& [scale, cells] : by_scale) {
    auto v = judge(scale, cells);
    any = any || v.verdict == Verdict::kEvidence;
    all_growing = all_growing && v.verdict == Verdict::kRefuted;
    p.per_scale.push_back(v);
  }
  p.verdict = any ? Verdict::kEvidence : all_growing ? Verdict::kRefuted : Verdict::kInconclusive;
  return p;
}

}  // namespace coarse
