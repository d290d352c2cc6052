#include <coarse/tower.hpp>

#include <coarse/cache.hpp>

#include <algorithm>
#include <cmath>

namespace coarse {

TruncationTower::TruncationTower(std::string name, PointId basepoint, DistanceFn dist,
                                 BallEnumerator ball, std::vector<Length> declared_radii,
                                 std::optional<Chart> chart)
    : name_(std::move(name)),
      basepoint_(basepoint),
      metric_(std::move(dist)),
      ball_(std::move(ball)),
      radii_(std::move(declared_radii)),
      chart_(std::move(chart)) {
  std::sort(radii_.begin(), radii_.end());
  radii_.erase(std::unique(radii_.begin(), radii_.end()), radii_.end());
}

std::shared_ptr<const FiniteMetricSpace> TruncationTower::truncation(Length r) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(r); it != memo_.end()) return it->second;
  }
  std::vector<PointId> ids;
  if (auto cached = PointCache::instance().load(generator_, r)) {
    ids = std::move(*cached);
  } else {
    ids = ball_(r);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    PointCache::instance().store(generator_, r, ids);
  }
  auto space = std::make_shared<const FiniteMetricSpace>(std::move(ids), basepoint_, metric_, chart_);
  std::lock_guard lock(mutex_);
  // Idempotent fill: a concurrent builder may have won; keep the first.
  auto [it, inserted] = memo_.emplace(r, std::move(space));
  return it->second;
}

std::vector<Length> TruncationTower::last_radii(std::size_t count) const {
  if (radii_.size() <= count) return radii_;
  return {radii_.end() - static_cast<std::ptrdiff_t>(count), radii_.end()};
}

TowerPtr tower_from_space(std::string name, const FiniteMetricSpace& space,
                          std::vector<Length> declared_radii) {
  auto ids = std::make_shared<std::vector<PointId>>(space.ids().begin(), space.ids().end());
  auto depth = std::make_shared<std::vector<Length>>();
  depth->reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) depth->push_back(space.depth(i));
  if (declared_radii.empty()) declared_radii.push_back(space.max_depth());
  BallEnumerator ball = [ids, depth](Length r) {
    std::vector<PointId> out;
    for (std::size_t i = 0; i < ids->size(); ++i) {
      if ((*depth)[i] <= r) out.push_back((*ids)[i]);
    }
    return out;
  };
  return std::make_shared<TruncationTower>(std::move(name), space.basepoint(), space.metric(),
                                           std::move(ball), std::move(declared_radii),
                                           space.chart());
}

TowerPtr with_radii(const TruncationTower& tower, std::vector<Length> radii) {
  for (Length r : radii) {
    if (!(r >= 0) || !std::isfinite(r)) throw ConfigError("radius must be finite and non-negative");
  }
  auto t = std::make_shared<TruncationTower>(tower.name(), tower.basepoint(), tower.metric(), tower.ball(),
                                             std::move(radii), tower.chart());
  t->set_generator(tower.generator());
  return t;
}

}  // namespace coarse
