#include "table.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "qdl/serialize.hpp"

namespace qdl::cli {

namespace {

std::string csv_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
  };
  return std::visit(Visitor{}, c);
}

std::string display_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return fmt::format("{:.10g}", *d);
  if (std::holds_alternative<std::monostate>(c)) return "-";
  return csv_text(c);
}

nlohmann::json json_value(const Cell& c) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(double v) const { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }
    nlohmann::json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row has the wrong number of cells");
  rows.push_back(std::move(row));
}

void render(const Table& t, Format f, std::ostream& os) {
  switch (f) {
    case Format::Csv: {
      for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
      os << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_text(row[j]);
        os << '\n';
      }
      return;
    }
    case Format::Json: {
      nlohmann::json doc = nlohmann::json::array();
      for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t j = 0; j < row.size(); ++j) obj[t.columns[j]] = json_value(row[j]);
        doc.push_back(std::move(obj));
      }
      os << doc.dump(2) << '\n';
      return;
    }
    case Format::Table: {
      std::vector<std::vector<std::string>> text;
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
      for (const auto& row : t.rows) {
        auto& line = text.emplace_back();
        for (std::size_t j = 0; j < row.size(); ++j) {
          line.push_back(display_text(row[j]));
          width[j] = std::max(width[j], line.back().size());
        }
      }
      auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
          os << (j ? "  " : "") << fmt::format("{:>{}}", cells[j], width[j]);
        }
        os << '\n';
      };
      emit(t.columns);
      for (const auto& line : text) emit(line);
      return;
    }
  }
}

std::string join(const std::vector<double>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += format_real(v[i]);
  }
  return s;
}

}  // namespace qdl::cli
