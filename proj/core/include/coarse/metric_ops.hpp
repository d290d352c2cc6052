#pragma once

#include <coarse/metric_space.hpp>

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

inline constexpr Length kInfinity = std::numeric_limits<Length>::infinity();

enum class ViolationKind {
  kNonFinite,
  kNegative,
  kNonzeroSelf,
  kZeroDistinct,
  kAsymmetric,
  kTriangle,
  kMissingBasepoint,
  // Used by action validation.
  kNotIsometry,
  kLeavesTruncation,
  kIdentity,
  kClosure,
  kInverse,
  kInconsistent,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<PointId> witness;  // pair or triple; element indices for group checks
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Violations found but not listed because the report cap was reached.
  std::size_t omitted = 0;

  bool ok() const { return violations.empty() && omitted == 0; }
  std::size_t count(ViolationKind kind) const;
  nlohmann::json to_json() const;
};

// Checks every FiniteMetricSpace axiom. The triangle check is exhaustive over
// all triples; at most `max_listed` violations are listed, the rest counted.
ValidationReport validate_metric(const FiniteMetricSpace& space, std::size_t max_listed = 256);

PointSet all_points(const FiniteMetricSpace& space);

// {y : dist(y, A) <= R}.
PointSet neighborhood(const FiniteMetricSpace& space, const PointSet& A, Length R);

// Closed ball around one point.
PointSet ball(const FiniteMetricSpace& space, std::size_t center, Length R);

// dist(y, A) for every point y; +inf when A is empty.
std::vector<Length> distance_to_set(const FiniteMetricSpace& space, const PointSet& A);

// Connected components of the graph on A with edges dist <= R. Components are
// ordered by their smallest index.
std::vector<PointSet> threshold_components(const FiniteMetricSpace& space, const PointSet& A,
                                           Length R);

// nullopt for the empty set.
std::optional<Length> diameter(const FiniteMetricSpace& space, const PointSet& A);

// min over a in A, b in B of dist(a, b); +inf when either is empty.
Length set_distance(const FiniteMetricSpace& space, const PointSet& A, const PointSet& B);

}  // namespace coarse
