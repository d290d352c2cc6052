#include <coarse/report.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace coarse {

std::string format_length(Length v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == std::floor(v) && std::abs(v) < 9.0e15) return std::to_string(static_cast<long long>(v));
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_length(const std::optional<Length>& v) { return v ? format_length(*v) : "-"; }

namespace {

std::string header_value(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string Report::tsv() const {
  std::ostringstream out;
  out << "# command\t" << command << '\n';
  for (const auto& [k, v] : header.items()) out << "# " << k << '\t' << header_value(v) << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "\t" : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
    out << '\n';
  }
  return out.str();
}

nlohmann::json Report::to_json() const {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) r[columns[i]] = row[i];
    table.push_back(std::move(r));
  }
  return {{"command", command}, {"header", header}, {"table", table}, {"result", body}};
}

void write_report(const Report& report, const std::optional<std::string>& out_prefix, const std::string& format,
                  std::ostream& out) {
  const std::string tsv = report.tsv();
  const std::string json = report.to_json().dump(2) + "\n";
  if (out_prefix) {
    std::ofstream t(*out_prefix + ".tsv", std::ios::binary);
    std::ofstream j(*out_prefix + ".json", std::ios::binary);
    if (!t || !j) throw ConfigError("cannot write report files with prefix " + *out_prefix);
    t << tsv;
    j << json;
  }
  out << (format == "json" ? json : tsv);
}

}  // namespace coarse
