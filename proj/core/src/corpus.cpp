#include <coarse/corpus.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

namespace coarse {

namespace {

using nlohmann::json;

std::vector<Length> quarters(Length M) { return {std::floor(M / 4), std::floor(M / 2), M}; }
std::vector<Length> thirds(Length M) { return {std::floor(M / 3), std::floor(2 * M / 3), M}; }

json generator(const std::string& name, json params) { return {{"name", name}, {"params", std::move(params)}}; }

std::shared_ptr<TruncationTower> finish(std::shared_ptr<TruncationTower> t, json gen) {
  t->set_generator(std::move(gen));
  return t;
}

MapPtr make_map(std::string name, TowerPtr source, TowerPtr target, std::function<PointId(PointId)> apply,
                std::function<Length(Length)> radius, json gen) {
  auto m = std::make_shared<MapSpec>();
  m->name = std::move(name);
  m->source = std::move(source);
  m->target = std::move(target);
  m->apply = std::move(apply);
  m->image_radius = std::move(radius);
  m->generator = std::move(gen);
  return m;
}

std::int64_t floor_int(Length r) { return static_cast<std::int64_t>(std::floor(r)); }

}  // namespace

std::int64_t ceil_sqrt(std::int64_t q) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q)));
  while (s * s > q) --s;
  while (s * s < q) ++s;
  return s;
}

TowerPtr integer_line(Length M, std::vector<Length> radii) {
  if (radii.empty()) radii = quarters(M);
  BallEnumerator ball = [](Length r) {
    std::vector<PointId> out;
    for (std::int64_t x = -floor_int(r); x <= floor_int(r); ++x) out.push_back(x);
    return out;
  };
  return finish(std::make_shared<TruncationTower>(
                    "integer_line", 0, [](PointId a, PointId b) { return static_cast<Length>(std::llabs(a - b)); },
                    std::move(ball), radii),
                generator("integer_line", {{"M", M}, {"radii", radii}}));
}

TowerPtr half_line(Length M, std::vector<Length> radii) {
  if (radii.empty()) radii = quarters(M);
  BallEnumerator ball = [](Length r) {
    std::vector<PointId> out;
    for (std::int64_t x = 0; x <= floor_int(r); ++x) out.push_back(x);
    return out;
  };
  return finish(std::make_shared<TruncationTower>(
                    "half_line", 0, [](PointId a, PointId b) { return static_cast<Length>(std::llabs(a - b)); },
                    std::move(ball), radii),
                generator("half_line", {{"M", M}, {"radii", radii}}));
}

namespace {

Length linf(PointId a, PointId b) {
  const auto [xa, ya] = decode_xy(a);
  const auto [xb, yb] = decode_xy(b);
  return static_cast<Length>(std::max(std::llabs(xa - xb), std::llabs(ya - yb)));
}

Chart lattice_chart() {
  return [](PointId p) {
    const auto [x, y] = decode_xy(p);
    return std::array<std::int64_t, 2>{x, y};
  };
}

}  // namespace

TowerPtr grid_linf(int d, Length M, std::vector<Length> radii) {
  if (d == 1) {
    auto t = integer_line(M, radii);
    auto copy = std::const_pointer_cast<TruncationTower>(t);
    copy->set_generator(generator("grid", {{"d", 1}, {"M", M}, {"radii", t->declared_radii()}}));
    return copy;
  }
  if (d != 2) throw ConfigError("grid: d must be 1 or 2, got " + std::to_string(d));
  if (radii.empty()) radii = thirds(M);
  BallEnumerator ball = [](Length r) {
    std::vector<PointId> out;
    const std::int64_t m = floor_int(r);
    for (std::int64_t x = -m; x <= m; ++x) {
      for (std::int64_t y = -m; y <= m; ++y) out.push_back(encode_xy(x, y));
    }
    return out;
  };
  return finish(std::make_shared<TruncationTower>("grid", encode_xy(0, 0), linf, std::move(ball), radii,
                                                  lattice_chart()),
                generator("grid", {{"d", 2}, {"M", M}, {"radii", radii}}));
}

TowerPtr quarter_plane(Length M, std::vector<Length> radii) {
  if (radii.empty()) radii = thirds(M);
  BallEnumerator ball = [](Length r) {
    std::vector<PointId> out;
    const std::int64_t m = floor_int(r);
    for (std::int64_t x = 0; x <= m; ++x) {
      for (std::int64_t y = 0; y <= m; ++y) out.push_back(encode_xy(x, y));
    }
    return out;
  };
  return finish(std::make_shared<TruncationTower>("quarter_plane", encode_xy(0, 0), linf, std::move(ball),
                                                  radii, lattice_chart()),
                generator("quarter_plane", {{"M", M}, {"radii", radii}}));
}

TowerPtr binary_tree(int depth, std::vector<Length> radii) {
  if (depth < 1 || depth > 20) throw ConfigError("binary_tree: depth must be in [1, 20]");
  if (radii.empty()) {
    for (int j = std::max(1, depth - 2); j <= depth; ++j) radii.push_back(j);
  }
  // Heap numbering: root 1, children 2i and 2i+1.
  auto dist = [](PointId a, PointId b) {
    auto level = [](PointId v) { return 63 - std::countl_zero(static_cast<std::uint64_t>(v)); };
    Length d = 0;
    while (a != b) {
      if (level(a) >= level(b)) {
        a >>= 1;
      } else {
        b >>= 1;
      }
      ++d;
    }
    return d;
  };
  BallEnumerator ball = [](Length r) {
    std::vector<PointId> out;
    const std::int64_t levels = std::min<std::int64_t>(floor_int(r), 40);
    for (PointId v = 1; v < (PointId{1} << (levels + 1)); ++v) out.push_back(v);
    return out;
  };
  return finish(std::make_shared<TruncationTower>("binary_tree", 1, dist, std::move(ball), radii),
                generator("binary_tree", {{"depth", depth}, {"radii", radii}}));
}

TowerPtr xor_space(int k, std::vector<Length> radii) {
  if (k < 1 || k > 24) throw ConfigError("xor: k must be in [1, 24]");
  if (radii.empty()) {
    for (int j = 1; j <= k; ++j) radii.push_back(static_cast<Length>((1LL << j) - 1));
  }
  BallEnumerator ball = [](Length r) {
    std::vector<PointId> out;
    for (PointId a = 0; a <= floor_int(r); ++a) out.push_back(a);
    return out;
  };
  return finish(std::make_shared<TruncationTower>(
                    "xor", 0, [](PointId a, PointId b) { return static_cast<Length>(a ^ b); }, std::move(ball),
                    radii),
                generator("xor", {{"k", k}, {"radii", radii}}));
}

TowerPtr coarse_cantor(int k) {
  if (k < 1 || k > 20) throw ConfigError("coarse_cantor: k must be in [1, 20], got " + std::to_string(k));
  std::vector<Length> radii;
  for (int j = 1; j <= k; ++j) radii.push_back(static_cast<Length>(2 * ((1LL << j) - 1)));
  BallEnumerator ball = [](Length r) {
    std::vector<PointId> out;
    for (PointId a = 0; 2 * a <= floor_int(r); ++a) out.push_back(a);
    return out;
  };
  return finish(std::make_shared<TruncationTower>(
                    "coarse_cantor", 0, [](PointId a, PointId b) { return static_cast<Length>(2 * (a ^ b)); },
                    std::move(ball), radii),
                generator("coarse_cantor", {{"k", k}}));
}

namespace {

TowerPtr cantor_target(int k) {
  std::vector<Length> radii;
  for (int j = 1; j <= k; ++j) radii.push_back(static_cast<Length>((1LL << j) - 1));
  return half_line(radii.back(), radii);
}

}  // namespace

MapPtr cantor_map(int k) {
  return make_map(
      "cantor_map", coarse_cantor(k), cantor_target(k), [](PointId a) { return a; },
      [](Length r) { return std::floor(r / 2); }, generator("coarse_cantor", {{"k", k}}));
}

Length comb_path_distance(std::int64_t x1, std::int64_t k1, std::int64_t x2, std::int64_t k2) {
  if (k1 == k2) return static_cast<Length>(std::llabs(x1 - x2));
  if (k1 > k2) {
    std::swap(x1, x2);
    std::swap(k1, k2);
  }
  // Walk row k1 to its rung at x = k1 + 1, climb the staircase to (k2, k2),
  // then walk row k2.
  return static_cast<Length>(std::llabs(x1 - k1 - 1) + 2 * (k2 - k1) - 1 + (x2 - k2));
}

Length comb_euclidean_distance(std::int64_t x1, std::int64_t k1, std::int64_t x2, std::int64_t k2) {
  const std::int64_t dx = x1 - x2, dy = k1 - k2;
  return static_cast<Length>(ceil_sqrt(dx * dx + dy * dy));
}

TowerPtr comb_tree(Length M, CombMetric metric) {
  if (M < 2) throw ConfigError("comb_tree: M must be >= 2");
  const bool path = metric == CombMetric::kPath;
  DistanceFn dist = [path](PointId a, PointId b) {
    const auto [x1, k1] = decode_xy(a);
    const auto [x2, k2] = decode_xy(b);
    return path ? comb_path_distance(x1, k1, x2, k2) : comb_euclidean_distance(x1, k1, x2, k2);
  };
  BallEnumerator ball = [path](Length r) {
    std::vector<PointId> out;
    const std::int64_t m = floor_int(r);
    for (std::int64_t x = 1; x <= m + 1; ++x) {
      for (std::int64_t k = 1; k <= x; ++k) {
        const bool in = path ? (x + k - 2 <= m) : ((x - 1) * (x - 1) + (k - 1) * (k - 1) <= m * m);
        if (in) out.push_back(encode_xy(x, k));
      }
    }
    return out;
  };
  const std::string metric_name = path ? "path" : "euclidean";
  return finish(std::make_shared<TruncationTower>("comb_tree_" + metric_name, encode_xy(1, 1), dist,
                                                  std::move(ball), quarters(M), lattice_chart()),
                generator("comb_tree", {{"M", M}, {"metric", metric_name}}));
}

MapPtr comb_identity(Length M) {
  // Euclidean never exceeds path distance, so balls map into balls.
  return make_map(
      "comb_identity", comb_tree(M, CombMetric::kPath), comb_tree(M, CombMetric::kEuclidean),
      [](PointId a) { return a; }, [](Length r) { return r; }, generator("comb_tree", {{"M", M}}));
}

FamilyCollection comb_rows(TowerPtr host, int rows) {
  FamilyCollection fams;
  fams.host = std::move(host);
  for (int k = 1; k <= rows; ++k) {
    fams.members.push_back(
        Family{"A" + std::to_string(k), [k](PointId p) { return decode_xy(p).second == k; }});
  }
  return fams;
}

namespace {

GroupElement element(std::string name, std::function<PointId(PointId)> act) {
  return GroupElement{std::move(name), std::move(act), {}};
}

}  // namespace

std::shared_ptr<const GroupAction> reflection_Z(Length M) {
  auto a = std::make_shared<GroupAction>();
  a->tower = integer_line(M);
  a->elements = {element("id", [](PointId x) { return x; }), element("neg", [](PointId x) { return -x; })};
  a->table = {{0, 1}, {1, 0}};
  a->identity = 0;
  a->generator = generator("reflection_Z", {{"M", M}});
  return a;
}

std::shared_ptr<const GroupAction> reflection_Z2(Length M) {
  auto a = std::make_shared<GroupAction>();
  a->tower = grid_linf(2, M);
  auto flip = [](bool fx, bool fy) {
    return [fx, fy](PointId p) {
      const auto [x, y] = decode_xy(p);
      return encode_xy(fx ? -x : x, fy ? -y : y);
    };
  };
  a->elements = {element("id", flip(false, false)), element("flip_x", flip(true, false)),
                 element("flip_y", flip(false, true)), element("flip_xy", flip(true, true))};
  // Klein four-group: index bits are (flip_x, flip_y), composition is xor.
  a->table = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  a->identity = 0;
  a->generator = generator("reflection_Z2", {{"M", M}});
  return a;
}

namespace {

json merged(const CorpusEntry& e, const json& params) {
  json out = e.defaults;
  if (!params.is_null() && !params.is_object()) throw ConfigError("corpus params must be a JSON object");
  if (params.is_object()) {
    for (const auto& [key, value] : params.items()) {
      if (!out.contains(key)) throw ConfigError("corpus entry '" + e.name + "' has no parameter '" + key + "'");
      out[key] = value;
    }
  }
  return out;
}

std::vector<Length> radii_of(const json& p) {
  if (!p.contains("radii") || p["radii"].is_null()) return {};
  return p["radii"].get<std::vector<Length>>();
}

CorpusBundle bundle(const CorpusEntry& e, const json& p) {
  CorpusBundle b;
  b.name = e.name;
  b.params = p;
  return b;
}

MapPtr line_map(const std::string& name, const json& p, std::function<PointId(PointId)> apply,
                std::function<Length(Length)> radius, TowerPtr target = nullptr) {
  const Length M = p.at("M").get<Length>();
  auto src = integer_line(M);
  if (!target) target = integer_line(M);
  return make_map(name, src, target, std::move(apply), std::move(radius), generator(name, p));
}

std::vector<CorpusEntry> build_entries() {
  std::vector<CorpusEntry> es;
  auto add = [&es](std::string name, json defaults, std::string summary,
                   std::function<void(CorpusBundle&, const json&)> fill) {
    CorpusEntry e{std::move(name), std::move(defaults), std::move(summary), nullptr};
    const std::string key = e.name;
    const json defs = e.defaults;
    const std::string summ = e.summary;
    e.build = [key, defs, summ, fill](const json& params) {
      CorpusEntry self{key, defs, summ, nullptr};
      CorpusBundle b = bundle(self, merged(self, params));
      fill(b, b.params);
      return b;
    };
    es.push_back(std::move(e));
  };

  add("integer_line", {{"M", 200}, {"radii", nullptr}}, "integers, |a - b|, basepoint 0",
      [](CorpusBundle& b, const json& p) { b.space = integer_line(p.at("M").get<Length>(), radii_of(p)); });
  add("half_line", {{"M", 100}, {"radii", nullptr}}, "naturals, |a - b|, basepoint 0",
      [](CorpusBundle& b, const json& p) { b.space = half_line(p.at("M").get<Length>(), radii_of(p)); });
  add("grid", {{"d", 2}, {"M", 30}, {"radii", nullptr}}, "Z^d with the l-infinity metric",
      [](CorpusBundle& b, const json& p) {
        b.space = grid_linf(p.at("d").get<int>(), p.at("M").get<Length>(), radii_of(p));
      });
  add("quarter_plane", {{"M", 30}, {"radii", nullptr}}, "N^2 with the l-infinity metric",
      [](CorpusBundle& b, const json& p) { b.space = quarter_plane(p.at("M").get<Length>(), radii_of(p)); });
  add("binary_tree", {{"depth", 10}, {"radii", nullptr}}, "rooted binary tree, path metric",
      [](CorpusBundle& b, const json& p) { b.space = binary_tree(p.at("depth").get<int>(), radii_of(p)); });
  add("xor", {{"k", 8}, {"radii", nullptr}}, "naturals with d(a, b) = a xor b",
      [](CorpusBundle& b, const json& p) { b.space = xor_space(p.at("k").get<int>(), radii_of(p)); });
  add("coarse_cantor", {{"k", 12}}, "binary strings, d = 2 (a xor b), mapped onto the half-line",
      [](CorpusBundle& b, const json& p) {
        b.map = cantor_map(p.at("k").get<int>());
        b.space = b.map->source;
      });
  add("cantor_lowbit", {{"k", 12}}, "coarse Cantor set to the half-line, a -> a with the lowest bit cleared",
      [](CorpusBundle& b, const json& p) {
        const int k = p.at("k").get<int>();
        b.map = make_map(
            "cantor_lowbit", coarse_cantor(k), cantor_target(k), [](PointId a) { return a & ~PointId{1}; },
            [](Length r) { return std::floor(r / 2); }, generator("cantor_lowbit", p));
        b.space = b.map->source;
      });
  add("comb_tree", {{"M", 200}, {"metric", "path"}, {"rows", 5}},
      "comb tree rows A_k = [k, inf) x {k}; identity from the path metric to the Euclidean metric",
      [](CorpusBundle& b, const json& p) {
        const Length M = p.at("M").get<Length>();
        const auto metric = p.at("metric").get<std::string>();
        if (metric != "path" && metric != "euclidean") {
          throw ConfigError("comb_tree: metric must be path or euclidean");
        }
        b.map = comb_identity(M);
        auto m = std::const_pointer_cast<MapSpec>(b.map);
        m->generator = generator("comb_tree", {{"M", M}, {"metric", "path"}, {"rows", p.at("rows")}});
        b.space = metric == "path" ? b.map->source : b.map->target;
        b.families = comb_rows(b.map->source, p.at("rows").get<int>());
      });
  add("identity_line", {{"M", 200}}, "identity on the integer line", [](CorpusBundle& b, const json& p) {
    b.map = line_map("identity_line", p, [](PointId x) { return x; }, [](Length r) { return r; });
    b.space = b.map->source;
  });
  add("even_inclusion", {{"M", 200}}, "integer line into itself, x -> 2x", [](CorpusBundle& b, const json& p) {
    const Length M = p.at("M").get<Length>();
    b.map = line_map("even_inclusion", p, [](PointId x) { return 2 * x; }, [](Length r) { return 2 * r; },
                     integer_line(2 * M));
    b.space = b.map->source;
  });
  add("shift_line", {{"M", 200}, {"shift", 3}}, "integer line into itself, x -> x + shift",
      [](CorpusBundle& b, const json& p) {
        const auto s = p.at("shift").get<std::int64_t>();
        const Length M = p.at("M").get<Length>();
        b.map = line_map("shift_line", p, [s](PointId x) { return x + s; },
                         [s](Length r) { return r + static_cast<Length>(std::llabs(s)); },
                         integer_line(M + static_cast<Length>(std::llabs(s))));
        b.space = b.map->source;
      });
  add("constant_map", {{"M", 200}}, "integer line to a point of the half-line, x -> 0",
      [](CorpusBundle& b, const json& p) {
        const Length M = p.at("M").get<Length>();
        b.map = line_map("constant_map", p, [](PointId) { return PointId{0}; }, [](Length) { return Length{0}; },
                         half_line(M));
        b.space = b.map->source;
      });
  add("reflection_Z", {{"M", 200}}, "Z with x -> -x; quotient onto the orbit space",
      [](CorpusBundle& b, const json& p) {
        b.action = reflection_Z(p.at("M").get<Length>());
        b.space = b.action->tower;
        auto q = std::const_pointer_cast<MapSpec>(orbit_space(b.action).quotient);
        q->generator = generator(b.name, p);
        b.map = q;
      });
  add("reflection_Z2", {{"M", 30}}, "Z^2 (l-infinity) with both coordinate reflections; quotient",
      [](CorpusBundle& b, const json& p) {
        b.action = reflection_Z2(p.at("M").get<Length>());
        b.space = b.action->tower;
        auto q = std::const_pointer_cast<MapSpec>(orbit_space(b.action).quotient);
        q->generator = generator(b.name, p);
        b.map = q;
      });
  return es;
}

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = build_entries();
  return entries;
}

CorpusBundle corpus_build(const std::string& name, const nlohmann::json& params) {
  for (const auto& e : corpus_entries()) {
    if (e.name == name) return e.build(params);
  }
  std::string known;
  for (const auto& e : corpus_entries()) known += (known.empty() ? "" : ", ") + e.name;
  throw ConfigError("unknown corpus entry '" + name + "' (known: " + known + ")");
}

}  // namespace coarse
