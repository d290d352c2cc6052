#include <coarse/openness.hpp>
#include <coarse/parallel.hpp>
#include <coarse/report.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace coarse {

TIStepFunction::TIStepFunction(std::vector<std::pair<Length, Length>> breakpoints,
                               std::optional<Length> tail_slope, std::string label)
    : points_(std::move(breakpoints)), tail_slope_(tail_slope), label_(std::move(label)) {
  if (points_.empty()) throw ConfigError("step function needs at least one breakpoint");
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].first == points_[i - 1].first) throw ConfigError("duplicate breakpoint in step function");
    if (points_[i].second < points_[i - 1].second) throw ConfigError("step function must be nondecreasing");
  }
  if (tail_slope_ && !(*tail_slope_ > 0)) throw ConfigError("tail slope must be positive");
  if (label_.empty()) {
    std::ostringstream out;
    out << "step" << points_.size() << (tail_slope_ ? "+tail" : "");
    label_ = out.str();
  }
}

TIStepFunction TIStepFunction::ramp(Length q) {
  std::ostringstream label;
  label << "t/" << q;
  return TIStepFunction({{0, 0}}, 1 / q, label.str());
}

TIStepFunction TIStepFunction::constant(Length c) {
  std::ostringstream label;
  label << "const " << c;
  return TIStepFunction({{0, c}}, std::nullopt, label.str());
}

Length TIStepFunction::operator()(Length t) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), std::make_pair(t, kInfinity));
  if (it == points_.begin()) return points_.front().second;
  --it;
  if (tail_slope_ && std::next(it) == points_.end()) return it->second + *tail_slope_ * (t - it->first);
  return it->second;
}

nlohmann::json TIStepFunction::to_json() const {
  nlohmann::json bp = nlohmann::json::array();
  for (const auto& [t, v] : points_) bp.push_back({t, v});
  return {{"label", label_},
          {"breakpoints", bp},
          {"tail_slope", tail_slope_ ? nlohmann::json(*tail_slope_) : nlohmann::json(nullptr)}};
}

TIStepFunction TIStepFunction::from_json(const nlohmann::json& j) {
  std::vector<std::pair<Length, Length>> bp;
  for (const auto& p : j.at("breakpoints")) bp.emplace_back(p.at(0).get<Length>(), p.at(1).get<Length>());
  std::optional<Length> slope;
  if (j.contains("tail_slope") && !j["tail_slope"].is_null()) slope = j["tail_slope"].get<Length>();
  return TIStepFunction(std::move(bp), slope, j.value("label", ""));
}

namespace {

std::vector<std::size_t> depth_order(const FiniteMetricSpace& space) {
  std::vector<std::size_t> order(space.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&space](std::size_t a, std::size_t b) { return space.depth(a) < space.depth(b); });
  return order;
}

}  // namespace

PointSet generalized_neighborhood(const FiniteMetricSpace& space, const PointSet& A, const TIStepFunction& rho) {
  const auto order = depth_order(space);
  std::vector<Length> depths(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) depths[k] = space.depth(order[k]);
  std::vector<bool> in(space.size(), false);
  for (std::size_t x : A) {
    const Length dx = space.depth(x);
    const Length radius = rho(dx);
    // Points within radius of x have depth within radius of dx.
    auto lo = std::lower_bound(depths.begin(), depths.end(), dx - radius);
    auto hi = std::upper_bound(depths.begin(), depths.end(), dx + radius);
    for (auto k = lo - depths.begin(); k < hi - depths.begin(); ++k) {
      const std::size_t z = order[static_cast<std::size_t>(k)];
      if (!in[z] && space.dist(x, z) <= radius) in[z] = true;
    }
  }
  return PointSet::from_mask(in);
}

namespace {

// Smallest depth that a ball N(x, rho(depth x)) can reach from a centre x
// lying beyond radius r.
Length reach_from_outside(const TIStepFunction& rho, Length r) {
  if (rho.tail_slope() && *rho.tail_slope() >= 1) return -kInfinity;
  Length m = r - rho(r);
  for (const auto& [t, v] : rho.breakpoints()) {
    if (t > r) m = std::min(m, t - v);
  }
  if (rho.tail_slope()) {
    const auto& last = rho.breakpoints().back();
    if (last.first > r) m = std::min(m, last.first - last.second);
  }
  return m;
}

}  // namespace

OpennessSample openness_feasible(const MapSpec& f, const Family& A, const TIStepFunction& rho, Length r) {
  OpennessSample out;
  out.r = r;
  auto src = f.source->truncation(r);
  std::vector<std::size_t> a_idx;
  bool reaches = false;
  for (std::size_t i = 0; i < src->size(); ++i) {
    if (A.contains(src->id(i))) {
      a_idx.push_back(i);
      reaches = reaches || src->depth(i) > r / 2;
    }
  }
  if (!reaches) {
    throw PreconditionError("set '" + A.name + "' does not reach depth " + std::to_string(r / 2) +
                            " at radius " + format_length(r) + "; openness needs an unbounded set");
  }
  const PointSet a_set(a_idx);
  const PointSet nbhd = generalized_neighborhood(*src, a_set, rho);
  std::unordered_set<PointId> T;
  for (std::size_t z : nbhd) T.insert(f.apply(src->id(z)));

  const auto& dt = f.target->metric();
  const PointId y0 = f.target->basepoint();
  // T is exact below `cut`: images of points beyond r land at depth >= cov,
  // and centres beyond r only add points deeper than `reach`.
  Length cov = kInfinity;
  {
    auto outer = f.source->truncation(2 * r);
    std::unordered_set<PointId> inner(src->ids().begin(), src->ids().end());
    for (PointId x : outer->ids()) {
      if (!inner.count(x)) cov = std::min(cov, dt(y0, f.apply(x)));
    }
  }
  Length hidden = kInfinity;
  const Length reach = reach_from_outside(rho, r);
  for (std::size_t i = 0; i < src->size(); ++i) {
    if (src->depth(i) > reach) hidden = std::min(hidden, dt(y0, f.apply(src->id(i))));
  }
  Length cut = std::min(cov, hidden);
  if (!std::isfinite(cut)) cut = image_radius(f, r);
  out.cut = cut;

  auto region = f.target->truncation(cut);
  std::vector<std::pair<Length, PointId>> outside;
  for (std::size_t i = 0; i < region->size(); ++i) {
    if (!T.count(region->id(i))) outside.emplace_back(region->depth(i), region->id(i));
  }
  std::sort(outside.begin(), outside.end());

  std::vector<PointId> fa;
  for (auto i : a_idx) fa.push_back(f.apply(src->id(i)));
  std::sort(fa.begin(), fa.end());
  fa.erase(std::unique(fa.begin(), fa.end()), fa.end());

  const Length width = std::max<Length>(1, cut / 8);
  for (PointId y : fa) {
    const Length dy = dt(y0, y);
    if (dy > cut) continue;
    Length best = kInfinity;
    auto mid = std::lower_bound(outside.begin(), outside.end(), std::make_pair(dy, PointId{0}),
                                [](const auto& a, const auto& b) { return a.first < b.first; });
    auto lo = mid, hi = mid;
    while (lo != outside.begin() || hi != outside.end()) {
      const Length gl = lo != outside.begin() ? dy - std::prev(lo)->first : kInfinity;
      const Length gh = hi != outside.end() ? hi->first - dy : kInfinity;
      if (std::min(gl, gh) > best) break;
      if (gl <= gh) {
        --lo;
        best = std::min(best, dt(y, lo->second));
      } else {
        best = std::min(best, dt(y, hi->second));
        ++hi;
      }
    }
    // A nearer complement point may lie past the cut; what is known is a floor.
    const bool saturated = dy + best > cut;
    const Length s = saturated ? cut - dy : best;
    const auto k = static_cast<std::size_t>(std::floor(dy / width));
    if (out.shells.size() <= k) {
      for (std::size_t j = out.shells.size(); j <= k; ++j) {
        OpennessShell sh;
        sh.t_lo = static_cast<Length>(j) * width;
        sh.t_hi = static_cast<Length>(j + 1) * width;
        sh.s = kInfinity;
        out.shells.push_back(sh);
      }
    }
    auto& sh = out.shells[k];
    sh.s = std::min(sh.s, s);
    ++sh.count;
    sh.saturated = sh.saturated || saturated;
    if (dy >= cut / 4 && dy <= cut / 2) out.value = out.value ? std::min(*out.value, s) : s;
  }
  std::erase_if(out.shells, [](const OpennessShell& sh) { return sh.count == 0; });
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

OpennessSuite default_openness_suite(const MapSpec& f, std::uint64_t seed) {
  OpennessSuite suite;
  const auto& radii = f.source->declared_radii();
  if (radii.empty()) throw PreconditionError("source tower has no declared radii");
  auto space = f.source->truncation(radii.back());
  const std::size_t x0 = space->basepoint_index();

  std::vector<std::size_t> far;
  const Length cutoff = kInteriorFraction * space->max_depth();
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (space->depth(i) >= cutoff) candidates.push_back(i);
  }
  // Farthest-point sampling, starting from the deepest point.
  constexpr std::size_t kRays = 3;
  while (far.size() < kRays && far.size() < candidates.size()) {
    std::size_t pick = candidates.front();
    Length pick_score = -1;
    for (auto c : candidates) {
      Length score = far.empty() ? space->depth(c) : kInfinity;
      for (auto p : far) score = std::min(score, space->dist(c, p));
      if (score > pick_score) {
        pick = c;
        pick_score = score;
      }
    }
    if (pick_score <= 0) break;
    far.push_back(pick);
  }

  for (auto p : far) {
    std::vector<PointId> ray;
    const Length total = space->dist(x0, p);
    for (std::size_t z = 0; z < space->size(); ++z) {
      if (space->depth(z) + space->dist(z, p) <= total) ray.push_back(space->id(z));
    }
    std::unordered_set<PointId> images;
    for (PointId z : ray) images.insert(f.apply(z));
    std::vector<PointId> fiber;
    for (std::size_t z = 0; z < space->size(); ++z) {
      if (images.count(f.apply(space->id(z)))) fiber.push_back(space->id(z));
    }
    const std::string tag = std::to_string(space->id(p));
    suite.sets.push_back(explicit_family("ray->" + tag, std::move(ray)));
    suite.sets.push_back(explicit_family("fiber(ray->" + tag + ")", std::move(fiber)));
  }
  for (std::uint64_t k = 0; k < 2; ++k) {
    const std::uint64_t salt = mix(seed * 2 + k);
    suite.sets.push_back(Family{"hash/4#" + std::to_string(k), [salt](PointId id) {
                                  return mix(static_cast<std::uint64_t>(id) ^ salt) % 4 == 0;
                                }});
  }
  for (Length c : {1, 2, 4, 8}) suite.rhos.push_back(TIStepFunction::constant(c));
  for (Length q : {8, 4, 2}) suite.rhos.push_back(TIStepFunction::ramp(q));
  return suite;
}

nlohmann::json OpennessReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : c.samples) {
      nlohmann::json shells = nlohmann::json::array();
      for (const auto& sh : s.shells) {
        shells.push_back({{"t_lo", sh.t_lo}, {"t_hi", sh.t_hi}, {"s", sh.s}, {"count", sh.count},
                          {"saturated", sh.saturated}});
      }
      samples.push_back({{"r", s.r},
                         {"cut", s.cut},
                         {"value", s.value ? nlohmann::json(*s.value) : nlohmann::json(nullptr)},
                         {"rho_tilde", shells}});
    }
    cs.push_back({{"set", c.set},
                  {"rho", c.rho},
                  {"diagnostic", c.diagnostic},
                  {"note", c.note},
                  {"trend", to_string(c.trend)},
                  {"verdict", to_string(c.verdict)},
                  {"samples", samples}});
  }
  nlohmann::json out = {{"map", map},    {"radii", radii}, {"basepoint", basepoint},
                        {"suite", suite}, {"cases", cs},    {"verdict", to_string(verdict)}};
  if (certificate) out["certificate"] = {{"set", cases[*certificate].set}, {"rho", cases[*certificate].rho}};
  return out;
}

OpennessReport openness_verdict(const MapSpec& f, const OpennessSuite& suite, std::vector<Length> radii) {
  OpennessReport rep;
  rep.map = f.name;
  rep.basepoint = f.source->basepoint();
  if (radii.empty()) radii = f.source->declared_radii();
  std::sort(radii.begin(), radii.end());
  rep.radii = radii;
  for (const auto& s : suite.sets) rep.suite.push_back(s.name);

  for (const auto& set : suite.sets) {
    for (const auto& rho : suite.rhos) {
      OpennessCase c;
      c.set = set.name;
      c.rho = rho.label();
      c.diagnostic = !rho.unbounded();
      if (c.diagnostic) c.note = "bounded rho";
      rep.cases.push_back(std::move(c));
    }
  }
  const std::size_t n_rho = suite.rhos.size();
  parallel_for(rep.cases.size(), [&](std::size_t i) {
    auto& c = rep.cases[i];
    const auto& set = suite.sets[i / n_rho];
    const auto& rho = suite.rhos[i % n_rho];
    std::vector<Length> values;
    bool complete = true;
    for (Length r : rep.radii) {
      try {
        c.samples.push_back(openness_feasible(f, set, rho, r));
      } catch (const PreconditionError&) {
        complete = false;
        continue;
      }
      if (c.samples.back().value) {
        values.push_back(*c.samples.back().value);
      } else {
        complete = false;
      }
    }
    if (!complete) {
      c.trend = Trend::kOther;
      return;
    }
    c.trend = last_three_trend(values);
    if (!c.diagnostic && c.samples.size() >= 3) {
      // Distances are integers: a ramp that stays within one integer step at
      // the probe depth cannot show growth, so stability there means nothing.
      const auto k = c.samples.size();
      std::vector<Length> steps;
      for (std::size_t j = k - 3; j < k; ++j) steps.push_back(std::floor(rho(c.samples[j].cut / 4)));
      if (last_three_trend(steps) != Trend::kGrowing) {
        c.diagnostic = true;
        c.note = "rho below resolution at these radii";
      }
    }
    if (c.trend == Trend::kGrowing) {
      c.verdict = Verdict::kEvidence;
    } else if (values.size() >= 3) {
      const auto n = values.size();
      if (values[n - 1] <= values[n - 2] && values[n - 2] <= values[n - 3]) c.verdict = Verdict::kRefuted;
    }
  });

  bool all_evidence = true;
  bool any_judged = false;
  for (std::size_t i = 0; i < rep.cases.size(); ++i) {
    const auto& c = rep.cases[i];
    if (c.diagnostic) continue;
    any_judged = true;
    if (c.verdict == Verdict::kRefuted && !rep.certificate) rep.certificate = i;
    all_evidence = all_evidence && c.verdict == Verdict::kEvidence;
  }
  if (rep.certificate) {
    rep.verdict = Verdict::kRefuted;
  } else if (any_judged && all_evidence) {
    rep.verdict = Verdict::kEvidence;
  }
  return rep;
}

}  // namespace coarse
