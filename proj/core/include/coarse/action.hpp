#pragma once

#include <coarse/map_analysis.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

struct GroupElement {
  std::string name;
  std::function<PointId(PointId)> act;
  // Explicit permutations keyed by truncation radius, when the element was
  // given as tables. Checked for agreement on shared points.
  std::map<Length, std::unordered_map<PointId, PointId>> tables;
};

// A finite group acting on a tower. table[i][j] is the index of g_i g_j.
struct GroupAction {
  TowerPtr tower;
  std::vector<GroupElement> elements;
  std::vector<std::vector<std::size_t>> table;
  std::size_t identity = 0;
  nlohmann::json generator;  // {"name", "params"} for corpus-built actions

  std::size_t order() const { return elements.size(); }
  std::vector<PointId> orbit(PointId x) const;  // sorted, deduplicated
};

// Isometry, truncation preservation, identity, closure, inverses and table
// agreement across truncations, at every declared radius.
ValidationReport verify_action(const GroupAction& action, std::size_t max_listed = 256);

struct OrbitSpace {
  TowerPtr tower;    // points are orbits named by their largest member id
  MapPtr quotient;   // x -> G.x
  std::shared_ptr<const GroupAction> action;
};

// Orbit tower with the Hausdorff metric and the quotient map. Throws
// PreconditionError when verify_action reports violations.
OrbitSpace orbit_space(std::shared_ptr<const GroupAction> action);

// Pairs of orbits in the truncation where min over g of d(x, g y) differs from
// the two-sided Hausdorff distance.
ValidationReport check_orbit_shortcut(const OrbitSpace& orbits, Length r, std::size_t max_listed = 64);

}  // namespace coarse
