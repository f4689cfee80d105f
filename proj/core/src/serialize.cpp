#include "qdl/serialize.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace qdl {

namespace {

nlohmann::json box_json(const WitnessBox& box) {
  if (const auto* a = std::get_if<AnchoredBox>(&box)) {
    return {{"type", "anchored"}, {"upper", a->upper}, {"closed", a->closed}};
  }
  const auto& c = std::get<CornerBox>(box);
  return {{"type", "corner"}, {"lower", c.lower}, {"upper", c.upper}, {"closed", c.closed}};
}

double parse_real(const std::string& cell, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size()) {
    throw std::invalid_argument(fmt::format("CSV line {}: '{}' is not a number", line, cell));
  }
  return v;
}

}  // namespace

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

void write_csv(std::ostream& os, const PointSet& p) {
  const std::size_t d = p.dimension();
  for (std::size_t j = 0; j < d; ++j) os << (j ? "," : "") << 'x' << (j + 1);
  os << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) os << (j ? "," : "") << format_real(p(i, j));
    os << '\n';
  }
}

std::string to_csv(const PointSet& p) {
  std::ostringstream os;
  write_csv(os, p);
  return os.str();
}

PointSet read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("CSV input is empty");
  std::size_t d = 1;
  for (char c : line) d += c == ',';
  std::vector<double> coords;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::size_t n = 0;
    while (std::getline(row, cell, ',')) {
      coords.push_back(parse_real(cell, line_no));
      ++n;
    }
    if (n != d) throw std::invalid_argument(fmt::format("CSV line {}: expected {} columns, got {}", line_no, d, n));
  }
  return PointSet(d, std::move(coords));
}

std::string to_json(const PointSet& p, const PrimeBases& bases, int indent) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto row = p.point(i);
    points.push_back(std::vector<double>(row.begin(), row.end()));
  }
  const nlohmann::json doc = {
      {"d", p.dimension()}, {"N", p.size()}, {"bases", bases.bases()}, {"points", std::move(points)}};
  return doc.dump(indent);
}

std::string to_json(const DiscrepancyResult& r, int indent) {
  nlohmann::json doc = {{"value", r.value}, {"witness_box", box_json(r.witness_box)}, {"witness_subset", nullptr}};
  if (r.witness_subset) doc["witness_subset"] = r.witness_subset->indices();
  return doc.dump(indent);
}

}  // namespace qdl
