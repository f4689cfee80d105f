#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qdl::cli {

enum class Format { Csv, Json, Table };

/// Empty cell, integer, real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// csv: header plus rows, reals with 17 significant digits.
/// json: array of objects keyed by column (empty cells become null).
/// table: space-aligned columns for reading on a terminal.
void render(const Table& t, Format f, std::ostream& os);

std::string join(const std::vector<double>& v, char sep = ' ');

}  // namespace qdl::cli
