#include "mediagraph/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "mediagraph/error.hpp"

namespace mediagraph {
namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          out.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

Cell parse_cell(const std::string& text) {
  if (text.empty()) return std::monostate{};
  const char* first = text.data();
  const char* last = first + text.size();
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc{} && p == last) {
    return i;
  }
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc{} && p == last) {
    return d;
  }
  return text;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
  return out;
}

}  // namespace

std::string format_number(double value, NumberStyle style) {
  if (std::isnan(value)) return {};
  if (style == NumberStyle::Machine) return fmt::format("{}", value);
  if (value == 0.0) return "0";
  if (std::fabs(value) < 0.01) return fmt::format("{:.2e}", value);
  return fmt::format("{:.2f}", value);
}

std::string format_cell(const Cell& cell, NumberStyle style) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return fmt::format("{}", *i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d, style);
  return {};
}

std::string to_csv(const Table& table, NumberStyle style) {
  std::string out;
  for (const auto& [key, value] : table.metadata) {
    out += fmt::format("# {}: {}\n", key, value);
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_escape(format_cell(row[c], style));
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Table& table, NumberStyle style) {
  open_out(path) << to_csv(table, style);
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) j["metadata"][key] = value;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const auto* s = std::get_if<std::string>(&cell)) r.push_back(*s);
      else if (const auto* i = std::get_if<std::int64_t>(&cell)) r.push_back(*i);
      else if (const auto* d = std::get_if<double>(&cell); d && !std::isnan(*d)) r.push_back(*d);
      else r.push_back(nullptr);
    }
    j["rows"].push_back(std::move(r));
  }
  return j.dump(1) + "\n";
}

void write_json(const std::filesystem::path& path, const Table& table) {
  open_out(path) << to_json(table);
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header && line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) {
        throw ParseError(path.string(), line_no, "metadata line without ': '");
      }
      table.add_meta(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    if (!header) {
      table.columns = split_csv_line(line);
      header = true;
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != table.columns.size()) {
      throw ParseError(path.string(), line_no,
                       fmt::format("expected {} fields, got {}", table.columns.size(),
                                   fields.size()));
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    table.rows.push_back(std::move(row));
  }
  if (!header) throw ParseError(path.string(), line_no, "missing CSV header");
  return table;
}

}  // namespace mediagraph
