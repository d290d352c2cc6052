#pragma once

#include <coarse/types.hpp>

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace coarse {

// Distance between two point ids of one space. Must be pure and thread-safe.
using DistanceFn = std::function<Length(PointId, PointId)>;

// Optional integer planar coordinates for spaces that live on a lattice.
// Only used by coordinate-aware cover constructions; every metric computation
// goes through the DistanceFn.
using Chart = std::function<std::array<std::int64_t, 2>(PointId)>;

// Sorted set of point indices into one FiniteMetricSpace.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<std::size_t> indices);
  static PointSet from_mask(const std::vector<bool>& mask);

  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t index) const;
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  std::size_t operator[](std::size_t k) const { return members_[k]; }
  const std::vector<std::size_t>& indices() const { return members_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<std::size_t> members_;
};

// A finite metric space with a basepoint. Immutable after construction.
class FiniteMetricSpace {
 public:
  // Spaces with at most this many points cache the full distance matrix.
  static constexpr std::size_t kDenseCacheLimit = 2048;

  FiniteMetricSpace(std::vector<PointId> points, PointId basepoint,
                    DistanceFn dist, std::optional<Chart> chart = std::nullopt);

  // Row-major matrix metric. Rows must be square and match `points`.
  static FiniteMetricSpace from_matrix(std::vector<PointId> points,
                                       PointId basepoint,
                                       const std::vector<std::vector<Length>>& rows);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  PointId id(std::size_t i) const { return ids_[i]; }
  std::span<const PointId> ids() const { return ids_; }
  std::optional<std::size_t> index_of(PointId id) const;
  bool has_basepoint() const { return basepoint_index_.has_value(); }
  PointId basepoint() const { return basepoint_; }
  // Throws PreconditionError when the basepoint is not one of the points.
  std::size_t basepoint_index() const;

  Length dist(std::size_t i, std::size_t j) const {
    if (!dense_.empty()) return dense_[i * ids_.size() + j];
    return metric_(ids_[i], ids_[j]);
  }
  // Distance from the basepoint (computed even when the basepoint is absent).
  Length depth(std::size_t i) const { return depth_[i]; }
  Length max_depth() const;

  const DistanceFn& metric() const { return metric_; }
  const std::optional<Chart>& chart() const { return chart_; }

  // Sub-space on the given indices, sharing the metric; basepoint kept.
  FiniteMetricSpace subspace(const PointSet& subset) const;

 private:
  std::vector<PointId> ids_;
  PointId basepoint_;
  std::optional<std::size_t> basepoint_index_;
  DistanceFn metric_;
  std::optional<Chart> chart_;
  std::unordered_map<PointId, std::size_t> index_;
  std::vector<Length> depth_;
  std::vector<Length> dense_;
};

}  // namespace coarse
