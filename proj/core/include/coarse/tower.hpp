#pragma once

#include <coarse/metric_space.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

// Enumerates every point within distance r of the basepoint, in any order.
using BallEnumerator = std::function<std::vector<PointId>(Length r)>;

// A proper metric space presented as nested finite balls around a basepoint.
// Truncations are generated lazily and memoized per radius; concurrent first
// access is serialized by a mutex.
class TruncationTower {
 public:
  TruncationTower(std::string name, PointId basepoint, DistanceFn dist,
                  BallEnumerator ball, std::vector<Length> declared_radii,
                  std::optional<Chart> chart = std::nullopt);

  const std::string& name() const { return name_; }
  PointId basepoint() const { return basepoint_; }
  const DistanceFn& metric() const { return metric_; }
  const BallEnumerator& ball() const { return ball_; }
  const std::vector<Length>& declared_radii() const { return radii_; }
  const std::optional<Chart>& chart() const { return chart_; }

  // Ball of radius r around the basepoint, points sorted by id.
  std::shared_ptr<const FiniteMetricSpace> truncation(Length r) const;
  // The last `count` declared radii (all of them when there are fewer).
  std::vector<Length> last_radii(std::size_t count) const;

  // Generator reference for JSON round trips: {"name": ..., "params": ...}.
  // Null for towers that were not built from a named generator.
  const nlohmann::json& generator() const { return generator_; }
  void set_generator(nlohmann::json ref) { generator_ = std::move(ref); }

 private:
  std::string name_;
  PointId basepoint_;
  DistanceFn metric_;
  BallEnumerator ball_;
  std::vector<Length> radii_;
  std::optional<Chart> chart_;
  nlohmann::json generator_;

  mutable std::mutex mutex_;
  mutable std::map<Length, std::shared_ptr<const FiniteMetricSpace>> memo_;
};

using TowerPtr = std::shared_ptr<const TruncationTower>;

// Tower over a single finite space: truncation(r) is the ball of radius r in it.
TowerPtr tower_from_space(std::string name, const FiniteMetricSpace& space,
                          std::vector<Length> declared_radii = {});

// Same space and generator, analysed at a different radius list.
TowerPtr with_radii(const TruncationTower& tower, std::vector<Length> radii);

}  // namespace coarse
