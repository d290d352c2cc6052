#include <coarse/cache.hpp>

#include <bit>
#include <cstdio>
#include <fstream>
#include <functional>
#include <thread>

namespace coarse {

PointCache& PointCache::instance() {
  static PointCache cache;
  return cache;
}

void PointCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::lock_guard lock(mutex_);
  if (dir) std::filesystem::create_directories(*dir);
  dir_ = std::move(dir);
}

bool PointCache::enabled() const {
  std::lock_guard lock(mutex_);
  return dir_.has_value();
}

std::string PointCache::key(const nlohmann::json& generator, double radius) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (char c : generator.dump()) mix(static_cast<unsigned char>(c));
  const auto bits = std::bit_cast<std::uint64_t>(radius);
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(bits >> (8 * i)));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::vector<PointId>> PointCache::load(const nlohmann::json& generator,
                                                     double radius) const {
  if (generator.is_null()) return std::nullopt;
  std::filesystem::path path;
  {
    std::lock_guard lock(mutex_);
    if (!dir_) return std::nullopt;
    path = *dir_ / (key(generator, radius) + ".json");
  }
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    auto doc = nlohmann::json::parse(in);
    // Guard against hash collisions: the stored reference must match.
    if (doc.at("generator") != generator || doc.at("radius").get<double>() != radius) {
      return std::nullopt;
    }
    return doc.at("points").get<std::vector<PointId>>();
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void PointCache::store(const nlohmann::json& generator, double radius,
                       const std::vector<PointId>& ids) const {
  if (generator.is_null()) return;
  std::filesystem::path path;
  {
    std::lock_guard lock(mutex_);
    if (!dir_) return;
    path = *dir_ / (key(generator, radius) + ".json");
  }
  nlohmann::json doc = {{"generator", generator}, {"radius", radius}, {"points", ids}};
  // Write-then-rename so concurrent readers never see a partial file.
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    out << doc.dump();
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace coarse
