#pragma once

#include <coarse/types.hpp>

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

// On-disk memo of truncation point lists, keyed by a content hash of the
// generator reference and the radius. Disabled until a directory is set; the
// only process-wide setting the library has.
class PointCache {
 public:
  static PointCache& instance();

  void set_directory(std::optional<std::filesystem::path> dir);
  bool enabled() const;

  // Both are no-ops (load returns nullopt) for null generator references.
  std::optional<std::vector<PointId>> load(const nlohmann::json& generator, double radius) const;
  void store(const nlohmann::json& generator, double radius, const std::vector<PointId>& ids) const;

  // FNV-1a over the canonical JSON dump plus the radius bits; stable across runs.
  static std::string key(const nlohmann::json& generator, double radius);

 private:
  PointCache() = default;
  mutable std::mutex mutex_;
  std::optional<std::filesystem::path> dir_;
};

}  // namespace coarse
