#include <coarse/metric_space.hpp>

#include <algorithm>
#include <limits>

namespace coarse {

PointSet::PointSet(std::vector<std::size_t> indices) : members_(std::move(indices)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

PointSet PointSet::from_mask(const std::vector<bool>& mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  PointSet s;
  s.members_ = std::move(out);
  return s;
}

bool PointSet::contains(std::size_t index) const {
  return std::binary_search(members_.begin(), members_.end(), index);
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<PointId> points, PointId basepoint,
                                     DistanceFn dist, std::optional<Chart> chart)
    : ids_(std::move(points)),
      basepoint_(basepoint),
      metric_(std::move(dist)),
      chart_(std::move(chart)) {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw ConfigError("duplicate point id " + std::to_string(ids_[i]));
    }
  }
  if (auto it = index_.find(basepoint_); it != index_.end()) basepoint_index_ = it->second;

  const std::size_t n = ids_.size();
  if (n <= kDenseCacheLimit) {
    dense_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) dense_[i * n + j] = metric_(ids_[i], ids_[j]);
    }
  }
  depth_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    depth_[i] = basepoint_index_ ? this->dist(*basepoint_index_, i) : metric_(basepoint_, ids_[i]);
  }
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<PointId> points,
                                                 PointId basepoint,
                                                 const std::vector<std::vector<Length>>& rows) {
  const std::size_t n = points.size();
  if (rows.size() != n) {
    throw ConfigError("distance matrix has " + std::to_string(rows.size()) +
                      " rows for " + std::to_string(n) + " points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ConfigError("distance matrix row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " +
                        std::to_string(n));
    }
  }
  auto table = std::make_shared<std::vector<Length>>(n * n);
  auto index = std::make_shared<std::unordered_map<PointId, std::size_t>>();
  for (std::size_t i = 0; i < n; ++i) {
    index->emplace(points[i], i);
    std::copy(rows[i].begin(), rows[i].end(), table->begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  // Ids outside the matrix (an absent basepoint) are infinitely far away.
  DistanceFn fn = [table, index, n](PointId a, PointId b) {
    const auto ia = index->find(a), ib = index->find(b);
    if (ia == index->end() || ib == index->end()) return std::numeric_limits<Length>::infinity();
    return (*table)[ia->second * n + ib->second];
  };
  return FiniteMetricSpace(std::move(points), basepoint, std::move(fn));
}

std::optional<std::size_t> FiniteMetricSpace::index_of(PointId id) const {
  if (auto it = index_.find(id); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t FiniteMetricSpace::basepoint_index() const {
  if (!basepoint_index_) {
    throw PreconditionError("basepoint " + std::to_string(basepoint_) + " is not a point of the space");
  }
  return *basepoint_index_;
}

Length FiniteMetricSpace::max_depth() const {
  Length m = 0;
  for (Length d : depth_) m = std::max(m, d);
  return m;
}

FiniteMetricSpace FiniteMetricSpace::subspace(const PointSet& subset) const {
  std::vector<PointId> ids;
  ids.reserve(subset.size());
  for (std::size_t i : subset) ids.push_back(ids_[i]);
  return FiniteMetricSpace(std::move(ids), basepoint_, metric_, chart_);
}

}  // namespace coarse
