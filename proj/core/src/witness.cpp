#include <coarse/families.hpp>

#include <algorithm>
#include <cmath>

namespace coarse {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

FamilyCollection certificate_families(const TowerPtr& host, const WitnessCertificate& cert) {
  FamilyCollection fams;
  fams.host = host;
  for (std::size_t i = 0; i < cert.families.size(); ++i) {
    fams.members.push_back(explicit_family("A" + std::to_string(i), cert.families[i]));
  }
  return fams;
}

bool evaluate_certificate(const MapSpec& f, WitnessCertificate& cert) {
  const FamilyCollection fams = certificate_families(f.source, cert);
  cert.disjointness = gradual_disjointness_profile(
      [&fams](Length r) { return view_at(fams, r); }, cert.R_tested, cert.levels);
  cert.image_divergence = divergence_profile(
      [&f, &fams](Length r) { return image_view_at(f, fams, r); }, {cert.image_R}, cert.levels);
  return cert.disjointness.verdict == Verdict::kEvidence &&
         cert.image_divergence.verdict == Verdict::kRefuted;
}

class Search {
 public:
  Search(const MapSpec& f, std::size_t k, const WitnessOptions& opts)
      : f_(f), k_(k), opts_(opts), dt_(f.target->metric()), y0_(f.target->basepoint()) {}

  WitnessResult run() {
    WitnessResult res;
    const auto& declared = f_.source->declared_radii();
    const std::size_t L = std::min(opts_.max_levels, declared.size());
    if (L < 3) {
      res.note = "source tower declares fewer than three radii";
      return res;
    }
    levels_.assign(declared.end() - static_cast<std::ptrdiff_t>(L), declared.end());
    const std::size_t first = declared.size() - L;
    floor_ = first > 0 ? declared[first - 1] : 0;

    std::vector<Length> grid = opts_.R_grid.empty() ? geometric_grid(levels_.front() / 8) : opts_.R_grid;
    for (Length R : grid) {
      std::vector<std::vector<PointId>> tuples;
      bool complete = true;
      for (std::size_t j = 0; j < levels_.size(); ++j) {
        auto tuple = find_tuple(j, R, tuples);
        if (spent_) {
          res.expansions = expansions_;
          res.budget_spent = true;
          res.note = "budget consumed";
          return res;
        }
        if (!tuple) {
          complete = false;
          break;
        }
        tuples.push_back(std::move(*tuple));
      }
      if (!complete) continue;
      auto cert = assemble(R, tuples);
      if (evaluate_certificate(f_, cert)) {
        cert.expansions = expansions_;
        res.certificate = std::move(cert);
        res.expansions = expansions_;
        return res;
      }
    }
    res.expansions = expansions_;
    res.note = "search space exhausted without a certificate";
    return res;
  }

 private:
  bool charge() {
    if (++expansions_ > opts_.budget) spent_ = true;
    return !spent_;
  }

  // k points in the level-j shell, pairwise more than s_j apart in the source,
  // images within R (pairwise for diameter windows, of a common center for
  // ball windows), and more than s_j from every earlier choice.
  std::optional<std::vector<PointId>> find_tuple(std::size_t j, Length R,
                                                 const std::vector<std::vector<PointId>>& earlier) {
    const Length r = levels_[j];
    const Length lower = j == 0 ? floor_ : levels_[j - 1];
    const Length s = r / 4;
    auto space = f_.source->truncation(r);
    const auto& sp = *space;

    std::vector<std::size_t> earlier_idx;
    for (const auto& t : earlier) {
      for (PointId p : t) earlier_idx.push_back(*sp.index_of(p));
    }
    struct Cand {
      std::size_t idx;
      PointId image;
      Length image_depth;
    };
    std::vector<Cand> cands;
    for (std::size_t x = 0; x < sp.size(); ++x) {
      if (sp.depth(x) <= lower) continue;
      bool far = true;
      for (auto e : earlier_idx) {
        if (sp.dist(x, e) <= s) {
          far = false;
          break;
        }
      }
      if (!far) continue;
      const PointId y = f_.apply(sp.id(x));
      cands.push_back({x, y, dt_(y0_, y)});
    }
    if (cands.size() < k_) return std::nullopt;

    // Candidates banded by image depth for window lookups.
    std::vector<std::size_t> by_depth(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) by_depth[i] = i;
    std::sort(by_depth.begin(), by_depth.end(), [&](std::size_t a, std::size_t b) {
      return cands[a].image_depth != cands[b].image_depth ? cands[a].image_depth < cands[b].image_depth
                                                          : a < b;
    });
    std::vector<Length> depth_keys;
    for (auto i : by_depth) depth_keys.push_back(cands[i].image_depth);

    // Anchor order: middle of the shell first, seeded tie-break.
    const Length mid = (lower + r) / 2;
    std::vector<std::size_t> order(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Length da = std::abs(sp.depth(cands[a].idx) - mid);
      const Length db = std::abs(sp.depth(cands[b].idx) - mid);
      if (da != db) return da < db;
      const auto ha = mix64(opts_.seed ^ static_cast<std::uint64_t>(sp.id(cands[a].idx)));
      const auto hb = mix64(opts_.seed ^ static_cast<std::uint64_t>(sp.id(cands[b].idx)));
      return ha != hb ? ha < hb : a < b;
    });

    const bool diameter = opts_.family == WindowFamily::kDiameter;
    std::vector<PointId> used_centers;
    for (std::size_t a : order) {
      const PointId center = cands[a].image;
      if (!diameter) {
        if (std::find(used_centers.begin(), used_centers.end(), center) != used_centers.end()) continue;
        used_centers.push_back(center);
      }
      if (!charge()) return std::nullopt;
      const Length cd = cands[a].image_depth;
      auto lo = std::lower_bound(depth_keys.begin(), depth_keys.end(), cd - R) - depth_keys.begin();
      auto hi = std::upper_bound(depth_keys.begin(), depth_keys.end(), cd + R) - depth_keys.begin();
      std::vector<std::size_t> window;
      for (auto p = lo; p < hi; ++p) {
        const std::size_t c = by_depth[static_cast<std::size_t>(p)];
        if (diameter && c == a) continue;
        if (dt_(cands[c].image, center) <= R) window.push_back(c);
      }
      std::vector<std::size_t> chosen;
      if (diameter) {
        chosen.push_back(a);
        // Anchor stays in the tuple; keep window points compatible with it.
        std::vector<std::size_t> compat;
        for (auto c : window) {
          if (sp.dist(cands[c].idx, cands[a].idx) > s) compat.push_back(c);
        }
        window = std::move(compat);
      }
      if (window.size() + chosen.size() < k_) continue;
      std::sort(window.begin(), window.end());
      if (extend(sp, cands, window, 0, chosen, s, R, diameter)) {
        std::vector<PointId> ids;
        for (auto c : chosen) ids.push_back(sp.id(cands[c].idx));
        return ids;
      }
      if (spent_) return std::nullopt;
    }
    return std::nullopt;
  }

  template <class Cands>
  bool extend(const FiniteMetricSpace& sp, const Cands& cands, const std::vector<std::size_t>& window,
              std::size_t from, std::vector<std::size_t>& chosen, Length s, Length R, bool diameter) {
    if (chosen.size() == k_) return true;
    for (std::size_t w = from; w < window.size(); ++w) {
      if (window.size() - w < k_ - chosen.size()) return false;
      const std::size_t c = window[w];
      bool ok = true;
      for (auto q : chosen) {
        if (sp.dist(cands[c].idx, cands[q].idx) <= s ||
            (diameter && dt_(cands[c].image, cands[q].image) > R)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (!charge()) return false;
      chosen.push_back(c);
      if (extend(sp, cands, window, w + 1, chosen, s, R, diameter)) return true;
      chosen.pop_back();
      if (spent_) return false;
    }
    return false;
  }

  WitnessCertificate assemble(Length R, const std::vector<std::vector<PointId>>& tuples) const {
    WitnessCertificate cert;
    cert.k = k_;
    cert.levels = levels_;
    cert.pair_R = R;
    cert.image_R = opts_.family == WindowFamily::kDiameter ? R : 2 * R;
    cert.families.assign(k_, {});
    for (const auto& t : tuples) {
      for (std::size_t i = 0; i < k_; ++i) cert.families[i].push_back(t[i]);
    }
    cert.R_tested = geometric_grid(levels_.front() / 8);
    return cert;
  }

  const MapSpec& f_;
  std::size_t k_;
  WitnessOptions opts_;
  const DistanceFn& dt_;
  PointId y0_;
  std::vector<Length> levels_;
  Length floor_ = 0;
  std::uint64_t expansions_ = 0;
  bool spent_ = false;
};

}  // namespace

nlohmann::json WitnessCertificate::to_json() const {
  nlohmann::json fam = nlohmann::json::array();
  for (std::size_t i = 0; i < families.size(); ++i) {
    nlohmann::json per_level = nlohmann::json::array();
    for (std::size_t j = 0; j < levels.size() && j < families[i].size(); ++j) {
      per_level.push_back({{"r", levels[j]}, {"point", families[i][j]}});
    }
    fam.push_back({{"member", i}, {"points", per_level}});
  }
  return {{"k", k},
          {"levels", levels},
          {"pair_R", pair_R},
          {"image_R", image_R},
          {"R_tested", R_tested},
          {"families", fam},
          {"gradual_disjointness", disjointness.to_json()},
          {"image_divergence", image_divergence.to_json()},
          {"expansions", expansions}};
}

bool recheck_certificate(const MapSpec& f, const WitnessCertificate& cert) {
  WitnessCertificate copy = cert;
  return evaluate_certificate(f, copy);
}

WitnessResult witness_search(const MapSpec& f, std::size_t k, const WitnessOptions& opts) {
  if (k < 2) throw PreconditionError("witness_search needs k >= 2");
  return Search(f, k, opts).run();
}

}  // namespace coarse
