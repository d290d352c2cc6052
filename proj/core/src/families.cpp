#include <coarse/families.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_set>

namespace coarse {

Family explicit_family(std::string name, std::vector<PointId> ids) {
  auto set = std::make_shared<const std::unordered_set<PointId>>(ids.begin(), ids.end());
  return {std::move(name), [set](PointId p) { return set->count(p) > 0; }};
}

FamilyView view_at(const FamilyCollection& fams, Length r) {
  FamilyView v;
  v.space = fams.host->truncation(r);
  for (const auto& m : fams.members) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < v.space->size(); ++i) {
      if (m.contains(v.space->id(i))) idx.push_back(i);
    }
    v.members.emplace_back(std::move(idx));
  }
  return v;
}

FamilyView image_view_at(const MapSpec& f, const FamilyCollection& fams, Length r) {
  auto src = f.source->truncation(r);
  FamilyView v;
  v.space = f.target->truncation(image_radius(f, r));
  for (const auto& m : fams.members) {
    std::vector<std::size_t> idx;
    for (PointId x : src->ids()) {
      if (!m.contains(x)) continue;
      const PointId y = f.apply(x);
      auto j = v.space->index_of(y);
      if (!j) {
        throw PreconditionError("image of " + std::to_string(x) + " under '" + f.name +
                                "' lies outside the target truncation");
      }
      idx.push_back(*j);
    }
    v.members.emplace_back(std::move(idx));
  }
  return v;
}

namespace {

void require_disjoint(const FamilyView& view) {
  std::vector<int> owner(view.space->size(), -1);
  for (std::size_t i = 0; i < view.members.size(); ++i) {
    for (auto p : view.members[i]) {
      if (owner[p] != -1) {
        throw PreconditionError("family members " + std::to_string(owner[p]) + " and " +
                                std::to_string(i) + " share point " +
                                std::to_string(view.space->id(p)));
      }
      owner[p] = static_cast<int>(i);
    }
  }
}

std::vector<std::vector<bool>> neighborhood_masks(const FamilyView& view, Length R) {
  std::vector<std::vector<bool>> masks;
  masks.reserve(view.members.size());
  for (const auto& m : view.members) {
    const PointSet nb = neighborhood(*view.space, m, R);
    std::vector<bool> mask(view.space->size(), false);
    for (auto p : nb) mask[p] = true;
    masks.push_back(std::move(mask));
  }
  return masks;
}

void finish_bound(DisjointnessBound& out, Length r) {
  if (out.raw > kInteriorFraction * r) {
    out.b.reset();
  } else {
    out.b = out.raw;
  }
}

}  // namespace

DisjointnessBound gradual_disjointness(const FamilyView& view, Length R, Length r) {
  require_disjoint(view);
  const auto masks = neighborhood_masks(view, R);
  const auto& sp = *view.space;
  DisjointnessBound out;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      for (std::size_t p = 0; p < sp.size(); ++p) {
        if (masks[i][p] && masks[j][p] && (!out.witness || sp.depth(p) > out.raw)) {
          out.raw = sp.depth(p);
          out.witness = sp.id(p);
          out.pair = {static_cast<int>(i), static_cast<int>(j)};
        }
      }
    }
  }
  finish_bound(out, r);
  return out;
}

DisjointnessBound gradual_disjointness_joint(const FamilyView& view, Length R, Length r) {
  require_disjoint(view);
  const auto masks = neighborhood_masks(view, R);
  const auto& sp = *view.space;
  DisjointnessBound out;
  for (std::size_t p = 0; p < sp.size(); ++p) {
    int hits = 0;
    for (const auto& m : masks) hits += m[p] ? 1 : 0;
    if (hits >= 2 && (!out.witness || sp.depth(p) > out.raw)) {
      out.raw = sp.depth(p);
      out.witness = sp.id(p);
    }
  }
  finish_bound(out, r);
  return out;
}

DivergenceBound divergence(const FamilyView& view, Length R) {
  DivergenceBound out;
  if (view.members.empty()) return out;
  const auto masks = neighborhood_masks(view, R);
  const auto& sp = *view.space;
  for (std::size_t p = 0; p < sp.size(); ++p) {
    bool all = true;
    for (const auto& m : masks) all = all && m[p];
    if (all && (!out.s || sp.depth(p) > *out.s)) {
      out.s = sp.depth(p);
      out.witness = sp.id(p);
    }
  }
  return out;
}

nlohmann::json FamilyProfile::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_j.push_back({{"R", row.R}, {"r", row.r},
                      {"value", row.value ? nlohmann::json(*row.value) : nlohmann::json(nullptr)}});
  }
  nlohmann::json v = nlohmann::json::array();
  for (const auto& s : per_scale) {
    v.push_back({{"R", s.scale}, {"trend", to_string(s.trend)}, {"verdict", to_string(s.verdict)}});
  }
  return {{"kind", kind}, {"rows", rows_j}, {"per_scale", v}, {"verdict", to_string(verdict)}};
}

namespace {

FamilyProfile run_profile(const std::string& kind, const FamilyProvider& provider,
                          const std::vector<Length>& R_list, const std::vector<Length>& radii) {
  FamilyProfile p;
  p.kind = kind;
  std::vector<Length> sorted = radii;
  std::sort(sorted.begin(), sorted.end());
  std::map<Length, std::vector<std::optional<Length>>> by_R;
  for (Length r : sorted) {
    const FamilyView view = provider(r);
    for (Length R : R_list) {
      FamilyRow row{R, r, std::nullopt};
      if (kind == "gradual") {
        row.value = gradual_disjointness(view, R, r).b;
      } else {
        row.value = divergence(view, R).s;
      }
      by_R[R].push_back(row.value);
      p.rows.push_back(row);
    }
  }
  std::stable_sort(p.rows.begin(), p.rows.end(),
                   [](const auto& a, const auto& b) { return a.R != b.R ? a.R < b.R : a.r < b.r; });
  bool all = !by_R.empty(), refuted = false;
  for (const auto& [R, vals] : by_R) {
    ScaleVerdict sv;
    sv.scale = R;
    if (vals.size() < 3) {
      sv.trend = Trend::kTooShort;
    } else if (kind == "gradual") {
      const std::vector<std::optional<Length>> last(vals.end() - 3, vals.end());
      const bool none_all = std::all_of(last.begin(), last.end(), [](auto& v) { return !v; });
      const bool any_none = std::any_of(last.begin(), last.end(), [](auto& v) { return !v; });
      if (none_all) {
        sv.trend = Trend::kGrowing;  // overlap tracks the boundary at every radius
      } else if (any_none) {
        sv.trend = Trend::kOther;
      } else {
        sv.trend = last_three_trend({*last[0], *last[1], *last[2]});
      }
    } else {
      // Empty intersections count as -1 so empty -> nonempty is growth.
      std::vector<Length> nums;
      for (const auto& v : vals) nums.push_back(v ? *v : -1.0);
      sv.trend = last_three_trend(nums);
    }
    sv.verdict = sv.trend == Trend::kStable    ? Verdict::kEvidence
                 : sv.trend == Trend::kGrowing ? Verdict::kRefuted
                                               : Verdict::kInconclusive;
    all = all && sv.verdict == Verdict::kEvidence;
    refuted = refuted || sv.verdict == Verdict::kRefuted;
    p.per_scale.push_back(sv);
  }
  p.verdict = refuted ? Verdict::kRefuted : all ? Verdict::kEvidence : Verdict::kInconclusive;
  return p;
}

}  // namespace

FamilyProfile gradual_disjointness_profile(const FamilyProvider& provider,
                                           const std::vector<Length>& R_list,
                                           const std::vector<Length>& radii) {
  return run_profile("gradual", provider, R_list, radii);
}

FamilyProfile divergence_profile(const FamilyProvider& provider, const std::vector<Length>& R_list,
                                 const std::vector<Length>& radii) {
  return run_profile("divergence", provider, R_list, radii);
}

std::vector<std::pair<std::size_t, FamilyProfile>> prefix_divergence(
    const FamilyProvider& provider, const std::vector<std::size_t>& prefixes,
    const std::vector<Length>& R_list, const std::vector<Length>& radii) {
  std::vector<std::pair<std::size_t, FamilyProfile>> out;
  for (std::size_t k : prefixes) {
    FamilyProvider prefix = [&provider, k](Length r) {
      FamilyView v = provider(r);
      if (v.members.size() > k) v.members.resize(k);
      return v;
    };
    out.emplace_back(k, divergence_profile(prefix, R_list, radii));
  }
  return out;
}

}  // namespace coarse
