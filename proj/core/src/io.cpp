#include <coarse/io.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace coarse {

using nlohmann::json;

json parse_json_text(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ConfigError(source_name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

namespace {

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  if (!j.contains(key)) throw ConfigError(where + "." + key + ": missing");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": wrong type (" + std::string(j.type_name()) + ")");
  }
}

std::vector<Length> radii_field(const json& j, const std::string& where) {
  if (!j.contains("radii") || j["radii"].is_null()) return {};
  return get_as<std::vector<Length>>(j["radii"], where + ".radii");
}

TowerPtr generator_tower(const json& gen, const std::string& where) {
  const auto name = get_as<std::string>(field(gen, "name", where), where + ".name");
  const json params = gen.contains("params") ? gen["params"] : json::object();
  if (name == "orbit_space") {
    auto base = generator_tower(field(params, "space", where + ".params"), where + ".params.space");
    auto action = action_from_json(field(params, "action", where + ".params"), base);
    return orbit_space(action).tower;
  }
  auto b = corpus_build(name, params);
  if (!b.space) throw ConfigError(where + ": corpus entry '" + name + "' has no space");
  return b.space;
}

bool is_generator_ref(const json& j) {
  return j.is_object() && j.contains("kind") && j["kind"] == "generator";
}

}  // namespace

TowerPtr space_from_json(const json& j) {
  const std::string where = "space";
  const json& metric = field(j, "metric", where);
  const auto kind = get_as<std::string>(field(metric, "kind", where + ".metric"), where + ".metric.kind");
  if (kind == "generator") {
    auto tower = generator_tower(metric, where + ".metric");
    if (j.contains("points")) {
      const auto pts = get_as<std::vector<PointId>>(j["points"], where + ".points");
      auto top = tower->truncation(tower->declared_radii().back());
      std::vector<PointId> have(top->ids().begin(), top->ids().end());
      auto sorted = pts;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != have) {
        throw ConfigError(where + ".points: " + std::to_string(pts.size()) +
                          " points do not match the generator's truncation at radius " +
                          std::to_string(tower->declared_radii().back()) + " (" + std::to_string(have.size()) +
                          " points)");
      }
    }
    if (j.contains("basepoint") && get_as<PointId>(j["basepoint"], where + ".basepoint") != tower->basepoint()) {
      throw ConfigError(where + ".basepoint: does not match the generator's basepoint " +
                        std::to_string(tower->basepoint()));
    }
    return tower;
  }
  if (kind != "matrix") throw ConfigError(where + ".metric.kind: expected 'matrix' or 'generator', got '" + kind + "'");
  const auto pts = get_as<std::vector<PointId>>(field(j, "points", where), where + ".points");
  const auto base = get_as<PointId>(field(j, "basepoint", where), where + ".basepoint");
  const auto rows = get_as<std::vector<std::vector<Length>>>(field(metric, "rows", where + ".metric"),
                                                            where + ".metric.rows");
  if (std::find(pts.begin(), pts.end(), base) == pts.end()) {
    throw ConfigError(where + ".basepoint: " + std::to_string(base) + " is not among the points");
  }
  auto space = FiniteMetricSpace::from_matrix(pts, base, rows);
  return tower_from_space(j.value("name", std::string("matrix")), space, radii_field(j, where));
}

json space_to_json(const TruncationTower& tower, Length r) {
  auto space = tower.truncation(r);
  json out;
  out["points"] = std::vector<PointId>(space->ids().begin(), space->ids().end());
  out["basepoint"] = tower.basepoint();
  if (!tower.generator().is_null()) {
    out["metric"] = {{"kind", "generator"},
                     {"name", tower.generator().at("name")},
                     {"params", tower.generator().value("params", json::object())}};
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < space->size(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < space->size(); ++k) row.push_back(space->dist(i, k));
      rows.push_back(std::move(row));
    }
    out["metric"] = {{"kind", "matrix"}, {"rows", std::move(rows)}};
    out["radii"] = tower.declared_radii();
  }
  return out;
}

MapPtr map_from_json(const json& j) {
  if (j.is_object() && j.contains("map")) return map_from_json(j["map"]);
  if (is_generator_ref(j)) {
    const auto name = get_as<std::string>(field(j, "name", "map"), "map.name");
    auto b = corpus_build(name, j.contains("params") ? j["params"] : json::object());
    if (!b.map) throw ConfigError("map.name: corpus entry '" + name + "' has no map");
    return b.map;
  }
  const std::string where = "map";
  auto m = std::make_shared<MapSpec>();
  m->name = j.value("name", std::string("explicit"));
  m->source = space_from_json(field(j, "source", where));
  m->target = space_from_json(field(j, "target", where));
  auto table = std::make_shared<std::unordered_map<PointId, PointId>>();
  const json& t = field(j, "table", where);
  if (!t.is_object()) throw ConfigError(where + ".table: expected an object of id -> id");
  for (const auto& [k, v] : t.items()) {
    PointId x = 0;
    try {
      x = std::stoll(k);
    } catch (const std::exception&) {
      throw ConfigError(where + ".table: key '" + k + "' is not a point id");
    }
    table->emplace(x, get_as<PointId>(v, where + ".table." + k));
  }
  m->apply = [table, name = m->name](PointId x) {
    auto it = table->find(x);
    if (it == table->end()) throw PreconditionError("map " + name + " is undefined at " + std::to_string(x));
    return it->second;
  };
  return m;
}

std::shared_ptr<const GroupAction> action_from_json(const json& j, TowerPtr tower) {
  if (j.is_object() && j.contains("action")) {
    if (!tower && j.contains("metric")) tower = space_from_json(j);
    return action_from_json(j["action"], tower);
  }
  if (is_generator_ref(j) || (j.is_object() && j.contains("name") && !j.contains("elements"))) {
    const auto name = get_as<std::string>(field(j, "name", "action"), "action.name");
    auto b = corpus_build(name, j.contains("params") ? j["params"] : json::object());
    if (!b.action) throw ConfigError("action.name: corpus entry '" + name + "' has no action");
    return b.action;
  }
  const std::string where = "action";
  if (!tower) throw ConfigError(where + ": explicit actions need a space");
  auto a = std::make_shared<GroupAction>();
  a->tower = tower;
  const json& elements = field(j, "elements", where);
  if (!elements.is_array()) throw ConfigError(where + ".elements: expected an array");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string ew = where + ".elements[" + std::to_string(i) + "]";
    GroupElement g;
    g.name = elements[i].value("name", "g" + std::to_string(i));
    const json& perm = field(elements[i], "perm", ew);
    if (!perm.is_object()) throw ConfigError(ew + ".perm: expected an object keyed by radius");
    for (const auto& [rk, table] : perm.items()) {
      Length r = 0;
      try {
        r = std::stod(rk);
      } catch (const std::exception&) {
        throw ConfigError(ew + ".perm: key '" + rk + "' is not a radius");
      }
      auto& dst = g.tables[r];
      for (const auto& [xk, y] : table.items()) {
        try {
          dst[std::stoll(xk)] = get_as<PointId>(y, ew + ".perm." + rk + "." + xk);
        } catch (const std::invalid_argument&) {
          throw ConfigError(ew + ".perm." + rk + ": key '" + xk + "' is not a point id");
        }
      }
    }
    // Largest table wins; missing points are left fixed and flagged by
    // verify_action through the coverage check.
    auto tables = g.tables;
    g.act = [tables](PointId x) {
      for (auto it = tables.rbegin(); it != tables.rend(); ++it) {
        if (auto f = it->second.find(x); f != it->second.end()) return f->second;
      }
      return x;
    };
    a->elements.push_back(std::move(g));
  }
  a->table = get_as<std::vector<std::vector<std::size_t>>>(field(j, "table", where), where + ".table");
  a->identity = j.value("identity", std::size_t{0});
  return a;
}

FamilyCollection families_from_json(const json& j, TowerPtr host) {
  const json& f = j.is_object() && j.contains("families") ? j["families"] : j;
  if (is_generator_ref(f)) {
    const auto name = get_as<std::string>(field(f, "name", "families"), "families.name");
    auto b = corpus_build(name, f.contains("params") ? f["params"] : json::object());
    if (!b.families) throw ConfigError("families.name: corpus entry '" + name + "' has no families");
    return *b.families;
  }
  if (!f.is_array()) throw ConfigError("families: expected a generator reference or an array");
  FamilyCollection out;
  out.host = std::move(host);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string w = "families[" + std::to_string(i) + "]";
    out.members.push_back(explicit_family(f[i].value("name", "A" + std::to_string(i + 1)),
                                          get_as<std::vector<PointId>>(field(f[i], "points", w), w + ".points")));
  }
  return out;
}

json corpus_document(const CorpusBundle& b) {
  json doc = space_to_json(*b.space, b.space->declared_radii().back());
  doc["radii"] = b.space->declared_radii();
  const json ref = {{"kind", "generator"}, {"name", b.name}, {"params", b.params}};
  if (b.map) doc["map"] = ref;
  if (b.action) doc["action"] = ref;
  if (b.families) doc["families"] = ref;
  return doc;
}

}  // namespace coarse
