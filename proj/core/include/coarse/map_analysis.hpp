#pragma once

#include <coarse/coloring.hpp>
#include <coarse/metric_ops.hpp>
#include <coarse/tower.hpp>
#include <coarse/verdict.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

// A truncation-compatible map between two towers.
struct MapSpec {
  std::string name;
  TowerPtr source;
  TowerPtr target;
  std::function<PointId(PointId)> apply;
  // Smallest target radius containing f(source.truncation(r)). When empty it
  // is computed from the images.
  std::function<Length(Length)> image_radius;
  nlohmann::json generator;  // {"name", "params"} for corpus-built maps
};

using MapPtr = std::shared_ptr<const MapSpec>;

Length image_radius(const MapSpec& f, Length r);

// f restricted to one source truncation, with the image as its own finite
// space (target metric, target basepoint) and the fibers over it.
struct ImageView {
  std::shared_ptr<const FiniteMetricSpace> source;
  std::shared_ptr<const FiniteMetricSpace> image;
  std::vector<std::size_t> image_of;               // source index -> image index
  std::vector<std::vector<std::size_t>> fibers;    // image index -> source indices
};

ImageView make_image_view(const MapSpec& f, Length r);

// Windows stand in for "every subset of diameter <= R" of the target.
enum class WindowFamily {
  kDiameter,  // maximal subsets of the image with diameter <= R (exact)
  kBalls,     // N(y, R) intersected with the image, y ranging over the image
};

std::string to_string(WindowFamily w);
WindowFamily window_family_from_string(const std::string& s);

struct WindowOptions {
  WindowFamily family = WindowFamily::kDiameter;
  std::size_t max_windows = 4'000'000;  // BudgetExceeded beyond this
};

// Windows as sorted index lists into `image`, deduplicated, sorted
// lexicographically. Every subset of diameter <= R lies in some window.
std::vector<std::vector<std::size_t>> enumerate_windows(const FiniteMetricSpace& image, Length R,
                                                        const WindowOptions& opts = {});

struct ProfileSample {
  Length scale = 0;    // R for coarse / ntone, S for proper / finite
  Length r = 0;        // source truncation radius
  Length value = 0;    // S, R(S) or m; the upper end for brackets
  Length value_lo = 0; // equals value unless exactness is kInterval
  Length interior = 0; // same quantity over witnesses clear of the outer shell
  Length interior_lo = 0;
  bool saturated = false;
  bool empty = false;
  Exactness exactness = Exactness::kExact;
};

struct ScaleVerdict {
  Length scale = 0;
  Trend trend = Trend::kTooShort;
  Verdict verdict = Verdict::kInconclusive;
};

struct ScaleProfile {
  std::string kind;
  std::vector<ProfileSample> samples;  // ordered by (scale, r)
  std::vector<ScaleVerdict> per_scale;
  Verdict verdict = Verdict::kInconclusive;

  nlohmann::json to_json() const;
};

// S(R) at one truncation.
ProfileSample coarseness_at(const MapSpec& f, Length R, Length r);
ScaleProfile coarseness_profile(const MapSpec& f, const std::vector<Length>& R_list,
                                const std::vector<Length>& radii);

// R(S) at one truncation.
ProfileSample properness_at(const MapSpec& f, Length S, Length r);
ScaleProfile properness_profile(const MapSpec& f, const std::vector<Length>& S_list,
                                const std::vector<Length>& radii);

// max over x in truncation(r) of d(f x, g x). Both maps must share towers.
Length closeness_gap(const MapSpec& f, const MapSpec& g, Length r);

struct SurjectivityResult {
  Length defect = 0;
  // Target depth below which every image point comes from truncation(r).
  Length coverage_radius = 0;
  std::size_t evaluated = 0;  // target points counted
  std::optional<PointId> witness;
};

// Largest distance from a fully-covered target point to the image of
// truncation(r). A target point y counts when depth(y) + d(y, image) is at
// most the coverage radius, so its distance is exact rather than an artifact
// of the truncation.
SurjectivityResult surjectivity_defect(const MapSpec& f, Length r);

struct WindowCertificate {
  std::vector<PointId> window;  // target ids
  std::vector<PointId> fiber;   // source ids
  std::vector<int> colors;      // class per fiber point, n classes
  Length S = 0;
  Length S_lo = 0;
  bool exact = true;
  bool interior = true;  // fiber clear of the outer shell
};

struct NToOneOptions {
  WindowOptions windows;
  KColorLimits limits;
  bool keep_certificates = true;
};

struct NToOneResult {
  Length S = 0;         // upper end when inexact
  Length S_lo = 0;
  Length interior_S = 0;
  Length interior_S_lo = 0;
  bool saturated = false;
  Exactness exactness = Exactness::kExact;
  std::size_t windows = 0;
  std::size_t distinct_fibers = 0;
  std::vector<WindowCertificate> certificates;
};

// Minimal S such that every window's fiber splits into n sets of diameter
// <= S. Throws PreconditionError for n == 0.
NToOneResult n_to_1_threshold(const MapSpec& f, int n, Length R, Length r,
                              const NToOneOptions& opts = {});

ScaleProfile n_to_1_profile(const MapSpec& f, int n, const std::vector<Length>& R_list,
                            const std::vector<Length>& radii, const NToOneOptions& opts = {});

// m(S): max over windows of the chromatic number of the fiber's conflict
// graph (edges between points farther apart than S). One sample per S.
std::vector<ProfileSample> finite_to_1_at(const MapSpec& f, Length R, Length r,
                                          const std::vector<Length>& S_grid,
                                          const NToOneOptions& opts = {});
ScaleProfile finite_to_1_profile(const MapSpec& f, Length R, const std::vector<Length>& radii,
                                 const std::vector<Length>& S_grid, const NToOneOptions& opts = {});

// Minimal S for one finite point set to split into n parts of diameter <= S.
struct SplitResult {
  Length S = 0;
  Length S_lo = 0;
  bool exact = true;
  std::vector<int> colors;
};
SplitResult min_split_diameter(const FiniteMetricSpace& space, const std::vector<std::size_t>& pts,
                               int n, const KColorLimits& limits = {});

// Conflict graph on pts: edge when dist > S.
Graph conflict_graph(const FiniteMetricSpace& space, const std::vector<std::size_t>& pts, Length S);

// {1, 2, 4, ...} up to cap (inclusive).
std::vector<Length> geometric_grid(Length cap);

}  // namespace coarse
