#pragma once

#include <coarse/metric_ops.hpp>
#include <coarse/tower.hpp>
#include <coarse/verdict.hpp>

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

// (n+1)-coloring of a finite space; B is the largest diameter of a
// monochromatic R-component.
struct ColoredCover {
  int n = 0;
  Length R = 0;
  std::vector<int> coloring;  // by point index, values in [0, n]
  Length B = 0;

  nlohmann::json to_json(const FiniteMetricSpace& space) const;
};

// Recomputes components and diameters from scratch (pairwise scans, no shared
// code with the solvers) and checks every ColoredCover invariant.
bool verify_cover(const FiniteMetricSpace& space, const ColoredCover& cover);

// B of a coloring, computed the fast way (banded union-find).
Length cover_bound(const FiniteMetricSpace& space, const std::vector<int>& coloring, int n, Length R);

struct DimensionLimits {
  std::size_t exact_cap = 40;                 // points for control_exact
  std::uint64_t node_budget = 1ULL << 24;     // search nodes per feasibility test
  std::uint64_t exhaustion_cap = 1ULL << 24;  // colorings for refutation instances
};

struct ControlResult {
  Length B = 0;
  ColoredCover cover;
  Exactness exactness = Exactness::kExact;
  std::string strategy;
};

enum class Feasibility { kFeasible, kInfeasible, kUnknown };

// Is there an (n+1)-coloring with B <= bound? Exact branch-and-bound for at
// most 64 points; kUnknown when the node budget runs out.
Feasibility cover_feasible(const FiniteMetricSpace& space, int n, Length R, Length bound,
                           std::uint64_t node_budget, std::vector<int>* coloring = nullptr,
                           std::uint64_t* nodes = nullptr);

// Globally minimal B. Throws PreconditionError above limits.exact_cap points
// and BudgetExceeded if a feasibility test runs out of nodes.
ControlResult control_exact(const FiniteMetricSpace& space, int n, Length R,
                            const DimensionLimits& limits = {});

enum class UpperStrategy {
  kComponents,  // n = 0: one color, B = largest R-component
  kLayered,     // annuli around the basepoint, colored j mod (n+1)
  kBrick,       // staggered bricks on a planar chart, n >= 2
  kGreedy,      // greedy block growing plus local-search recoloring
  kBest,        // minimum over the structured strategies that apply
};

std::string to_string(UpperStrategy s);
UpperStrategy upper_strategy_from_string(const std::string& s);

// Feasible cover; B is an upper bound on the optimum. Throws
// PreconditionError when the strategy does not apply (brick without chart).
ControlResult control_upper(const FiniteMetricSpace& space, int n, Length R,
                            UpperStrategy strategy = UpperStrategy::kBest, std::uint64_t seed = 0);

struct Refutation {
  int n = 0;
  Length R = 0;
  Length B = 0;
  std::vector<PointId> sub_instance;
  std::uint64_t nodes = 0;

  nlohmann::json to_json() const;
};

// Proves that no (n+1)-coloring achieves bound B by exact search on a small
// sub-instance. nullopt means unknown.
std::optional<Refutation> control_lower(const FiniteMetricSpace& space, int n, Length R, Length B,
                                        const DimensionLimits& limits = {});

// Independent re-check: exhaustive enumeration over colorings of the
// sub-instance with prefix pruning. True iff every coloring violates B.
bool verify_refutation(const FiniteMetricSpace& space, const Refutation& ref,
                       std::uint64_t exhaustion_cap = 1ULL << 24);

struct ControlCell {
  int n = 0;
  Length R = 0;
  Length r = 0;
  Length B = 0;
  Exactness exactness = Exactness::kUpper;
  std::string strategy;
  bool verified = false;
  // B of the upper-bound construction; equals B unless the cell was solved
  // exactly. Stability is judged on this series so that exact small radii do
  // not mask a stable construction on the larger ones.
  Length construction_B = 0;
};

struct LowerCell {
  int n = 0;
  Length R = 0;
  Length r = 0;
  Length B_cap = 0;
  std::optional<Refutation> refutation;
  bool verified = false;
};

struct AsdimReport {
  std::string tower;
  std::vector<Length> radii;
  std::vector<Length> R_list;
  int n_max = 0;
  std::vector<ControlCell> table;
  std::vector<LowerCell> lower;
  int lo = 0;
  std::optional<int> hi;  // nullopt: no tested n stabilized

  nlohmann::json to_json() const;
};

struct AsdimOptions {
  DimensionLimits limits;
  UpperStrategy strategy = UpperStrategy::kBest;
  std::uint64_t seed = 0;
  bool lower_bounds = true;
};

// Fills the control table over (n, R, r). hi is the least n whose upper
// bounds (either the reported B or the construction B) are identical over the
// last three radii for every R; lo is one more
// than the largest n refuted at B_cap = diam/4 on the last three radii for
// some R.
AsdimReport asdim_estimate(const TruncationTower& tower, int n_max, const std::vector<Length>& R_list,
                           const std::vector<Length>& radii, const AsdimOptions& opts = {});

struct RaisingVerdict {
  bool consistent = false;          // lo(Y) <= hi(X) + n - 1
  bool bound_attainable = false;    // intervals allow asdim Y = asdim X + n - 1
  bool preserving_admissible = false;  // intervals allow asdim Y = asdim X
  bool coarsely_open = false;
  std::string verdict;              // "consistent" or "violation"

  nlohmann::json to_json() const;
};

struct DimInterval {
  int lo = 0;
  std::optional<int> hi;
};

RaisingVerdict check_raising_inequality(const DimInterval& X, const DimInterval& Y, int n,
                                        bool coarsely_open = false);

}  // namespace coarse
