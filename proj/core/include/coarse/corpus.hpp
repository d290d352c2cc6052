#pragma once

#include <coarse/action.hpp>
#include <coarse/families.hpp>
#include <coarse/map_analysis.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

// Everything one corpus entry produces. `space` is the primary tower (the
// map's source when there is a map).
struct CorpusBundle {
  std::string name;
  nlohmann::json params;  // defaults merged with the caller's overrides
  TowerPtr space;
  MapPtr map;
  std::shared_ptr<const GroupAction> action;
  std::optional<FamilyCollection> families;
};

struct CorpusEntry {
  std::string name;
  nlohmann::json defaults;
  std::string summary;
  std::function<CorpusBundle(const nlohmann::json& params)> build;
};

const std::vector<CorpusEntry>& corpus_entries();
// Throws ConfigError for unknown names or parameters.
CorpusBundle corpus_build(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

// Direct builders. Each sets the tower's generator reference so the space
// can be written out and rebuilt.
TowerPtr integer_line(Length M, std::vector<Length> radii = {});
TowerPtr half_line(Length M, std::vector<Length> radii = {});
TowerPtr grid_linf(int d, Length M, std::vector<Length> radii = {});
TowerPtr quarter_plane(Length M, std::vector<Length> radii = {});
TowerPtr binary_tree(int depth, std::vector<Length> radii = {});
// d(a, b) = a xor b on the naturals.
TowerPtr xor_space(int k, std::vector<Length> radii = {});
// d(a, b) = sum |a_i - b_i| 2^i over binary digits indexed from 1, i.e.
// 2 (a xor b). Declared radii 2 (2^j - 1), j = 1..k: the j-digit strings.
TowerPtr coarse_cantor(int k);
// a -> sum a_i 2^(i-1) = a into the half-line.
MapPtr cantor_map(int k);

enum class CombMetric { kPath, kEuclidean };
// Rows (x, k), x >= k >= 1, joined by unit rungs from (k+1, k) to (k+1, k+1).
// The Euclidean metric is rounded up to integers.
Length comb_path_distance(std::int64_t x1, std::int64_t k1, std::int64_t x2, std::int64_t k2);
Length comb_euclidean_distance(std::int64_t x1, std::int64_t k1, std::int64_t x2, std::int64_t k2);
TowerPtr comb_tree(Length M, CombMetric metric);
// Identity from the path metric to the Euclidean metric.
MapPtr comb_identity(Length M);
// Rows A_1..A_rows on the given tower.
FamilyCollection comb_rows(TowerPtr host, int rows);

std::shared_ptr<const GroupAction> reflection_Z(Length M);
std::shared_ptr<const GroupAction> reflection_Z2(Length M);

// Ceil of the square root, exact for integers.
std::int64_t ceil_sqrt(std::int64_t q);

}  // namespace coarse
