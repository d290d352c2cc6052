#pragma once

#include <coarse/action.hpp>
#include <coarse/corpus.hpp>
#include <coarse/families.hpp>

#include <string>

#include <nlohmann/json.hpp>

namespace coarse {

// Parse errors become ConfigError carrying "<source>:<line>:<column>".
nlohmann::json parse_json_text(const std::string& text, const std::string& source_name);
nlohmann::json read_json_file(const std::string& path);

// Space schema: {"points": [...], "basepoint": id, "metric": {"kind": "matrix",
// "rows": [[...]]} | {"kind": "generator", "name": ..., "params": {...}},
// "radii": [...] (optional)}.
TowerPtr space_from_json(const nlohmann::json& j);
// Generator form when the tower has one, otherwise the matrix of truncation(r).
nlohmann::json space_to_json(const TruncationTower& tower, Length r);

// A corpus document ({"map": {...}} next to the space fields), a bare
// generator reference, or an explicit {"source", "target", "table"} map.
MapPtr map_from_json(const nlohmann::json& j);

// A corpus document ({"action": {...}}), a generator reference, or explicit
// {"elements": [{"name", "perm": {"<radius>": {"<id>": id}}}], "table",
// "identity"} over `tower`.
std::shared_ptr<const GroupAction> action_from_json(const nlohmann::json& j, TowerPtr tower = nullptr);

// {"families": generator} or {"families": [{"name", "points": [...]}]}.
FamilyCollection families_from_json(const nlohmann::json& j, TowerPtr host);

// Corpus document: the primary space in schema form plus generator references
// for whatever else the entry carries.
nlohmann::json corpus_document(const CorpusBundle& b);

}  // namespace coarse
