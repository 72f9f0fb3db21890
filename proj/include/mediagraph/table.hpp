#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mediagraph {

/// Empty cells hold std::monostate; NaN doubles are written empty too.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

struct Table {
  /// "# key: value" lines written ahead of the CSV header.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
};

/// Machine: shortest round-trip representation. Display: two decimals, with
/// values below 0.01 in magnitude in "2.91e-04" form.
enum class NumberStyle { Machine, Display };

std::string format_number(double value, NumberStyle style);
std::string format_cell(const Cell& cell, NumberStyle style);

std::string to_csv(const Table& table, NumberStyle style = NumberStyle::Machine);
void write_csv(const std::filesystem::path& path, const Table& table,
               NumberStyle style = NumberStyle::Machine);

/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]} with numbers
/// as JSON numbers and empty cells as null.
std::string to_json(const Table& table);
void write_json(const std::filesystem::path& path, const Table& table);

/// Reads a CSV written by write_csv in machine style. Cells that parse
/// completely as integers or doubles come back numeric.
Table read_csv(const std::filesystem::path& path);

}  // namespace mediagraph
