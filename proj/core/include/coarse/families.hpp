#pragma once

#include <coarse/map_analysis.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

// A subset of a tower's points, given by a membership predicate on ids so it
// can be evaluated at any truncation.
struct Family {
  std::string name;
  std::function<bool(PointId)> contains;
};

Family explicit_family(std::string name, std::vector<PointId> ids);

struct FamilyCollection {
  TowerPtr host;
  std::vector<Family> members;
};

// Members evaluated inside one finite space.
struct FamilyView {
  std::shared_ptr<const FiniteMetricSpace> space;
  std::vector<PointSet> members;
};

FamilyView view_at(const FamilyCollection& fams, Length r);
// f(A_i intersect source truncation(r)) inside target truncation(image_radius(r)).
FamilyView image_view_at(const MapSpec& f, const FamilyCollection& fams, Length r);

using FamilyProvider = std::function<FamilyView(Length r)>;

struct DisjointnessBound {
  // Minimal b with N(A_i, R) \ ball(x0, b) pairwise disjoint; nullopt when
  // the overlap reaches the outer shell of the truncation.
  std::optional<Length> b;
  Length raw = 0;            // overlap depth before the shell cut
  std::optional<PointId> witness;
  std::pair<int, int> pair{-1, -1};
};

// Pairwise form: max over member pairs. Throws PreconditionError when two
// members share a point.
DisjointnessBound gradual_disjointness(const FamilyView& view, Length R, Length r);
// Whole-collection form: depth of points lying in two or more neighborhoods.
DisjointnessBound gradual_disjointness_joint(const FamilyView& view, Length R, Length r);

struct DivergenceBound {
  std::optional<Length> s;  // nullopt: intersection empty
  std::optional<PointId> witness;
};

DivergenceBound divergence(const FamilyView& view, Length R);

struct FamilyRow {
  Length R = 0;
  Length r = 0;
  std::optional<Length> value;
};

struct FamilyProfile {
  std::string kind;  // "gradual" or "divergence"
  std::vector<FamilyRow> rows;
  std::vector<ScaleVerdict> per_scale;
  // gradual: evidence = gradually disjoint; divergence: evidence = divergent.
  Verdict verdict = Verdict::kInconclusive;

  nlohmann::json to_json() const;
};

FamilyProfile gradual_disjointness_profile(const FamilyProvider& provider,
                                           const std::vector<Length>& R_list,
                                           const std::vector<Length>& radii);
FamilyProfile divergence_profile(const FamilyProvider& provider, const std::vector<Length>& R_list,
                                 const std::vector<Length>& radii);

// Prefix test for generator families: divergence verdict of the first k
// members for each k in prefixes.
std::vector<std::pair<std::size_t, FamilyProfile>> prefix_divergence(
    const FamilyProvider& provider, const std::vector<std::size_t>& prefixes,
    const std::vector<Length>& R_list, const std::vector<Length>& radii);

struct WitnessOptions {
  std::uint64_t budget = 100'000;  // node expansions
  std::uint64_t seed = 0;
  // Pair-closeness scales to try; empty means {1, 2, 4, ...} up to r_first / 8.
  std::vector<Length> R_grid;
  WindowFamily family = WindowFamily::kDiameter;
  std::size_t max_levels = 4;
};

struct WitnessCertificate {
  std::size_t k = 0;
  std::vector<Length> levels;                    // source radii
  std::vector<std::vector<PointId>> families;    // member i: one point per level
  Length pair_R = 0;                             // image closeness of each tuple
  Length image_R = 0;                            // divergence radius for images
  std::vector<Length> R_tested;                  // gradual-disjointness grid
  FamilyProfile disjointness;
  FamilyProfile image_divergence;
  std::uint64_t expansions = 0;

  nlohmann::json to_json() const;
};

struct WitnessResult {
  std::optional<WitnessCertificate> certificate;
  std::uint64_t expansions = 0;
  bool budget_spent = false;
  std::string note;
};

// Best-effort search for k gradually disjoint families whose images do not
// diverge. Deterministic in (options, map).
WitnessResult witness_search(const MapSpec& f, std::size_t k, const WitnessOptions& opts = {});

// Re-evaluates a certificate with the two profile operations only.
bool recheck_certificate(const MapSpec& f, const WitnessCertificate& cert);

}  // namespace coarse
