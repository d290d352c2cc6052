#pragma once

#include <coarse/types.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

// One command's output: a TSV table plus a JSON mirror. The header (seed,
// caps, inputs) is echoed into both.
struct Report {
  std::string command;
  nlohmann::json header = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json body = nlohmann::json::object();

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string tsv() const;
  nlohmann::json to_json() const;
};

// Shortest round-trip decimal; integers without a fraction, "inf" and "-inf"
// for infinities, "-" for missing values.
std::string format_length(Length v);
std::string format_length(const std::optional<Length>& v);

// With a prefix, writes <prefix>.tsv and <prefix>.json; the stream gets the
// requested format either way.
void write_report(const Report& report, const std::optional<std::string>& out_prefix, const std::string& format,
                  std::ostream& out);

}  // namespace coarse
