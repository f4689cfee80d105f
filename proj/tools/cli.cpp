#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qdl/bounds.hpp"
#include "qdl/constants.hpp"
#include "qdl/discrepancy.hpp"
#include "qdl/halton.hpp"
#include "qdl/lambert_w.hpp"
#include "qdl/parallel.hpp"
#include "qdl/serialize.hpp"
#include "table.hpp"

namespace qdl::cli {

namespace {

// Raised when a bound falls below an exact value it should dominate.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument(fmt::format("{}: '{}' is not a non-negative integer", what, s));
  }
  return v;
}

struct Globals {
  std::string format;
  std::string output;
  std::optional<std::size_t> threads;
  bool no_assert = false;
};

class Sink {
 public:
  Sink(const Globals& g, const Environment& env, std::ostream& out) : out_(&out) {
    if (!g.output.empty()) {
      file_ = std::make_unique<std::ofstream>(g.output, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open output file '" + g.output + "'");
      out_ = file_.get();
    }
    if (g.format.empty()) {
      format_ = env.stdout_is_tty && g.output.empty() ? Format::Table : Format::Csv;
    } else {
      static const std::map<std::string, Format> names{
          {"csv", Format::Csv}, {"json", Format::Json}, {"table", Format::Table}};
      format_ = names.at(g.format);
    }
  }
  std::ostream& stream() { return *out_; }
  Format format() const { return format_; }
  void emit(const Table& t) { render(t, format_, *out_); }

 private:
  std::ostream* out_;
  std::unique_ptr<std::ofstream> file_;
  Format format_ = Format::Csv;
};

void check_bound(bool enabled, double bound, double exact, std::string_view what, std::vector<std::string>& failures) {
  if (enabled && !(bound >= exact - 1e-12)) failures.push_back(fmt::format("{}: {} < exact {}", what, bound, exact));
}

void raise_failures(const std::vector<std::string>& failures) {
  if (failures.empty()) return;
  std::string msg = fmt::format("{} assertion(s) failed", failures.size());
  for (std::size_t i = 0; i < std::min<std::size_t>(failures.size(), 10); ++i) msg += "\n  " + failures[i];
  throw AssertionFailure(msg);
}

std::string witness_kind(const WitnessBox& b) { return std::holds_alternative<AnchoredBox>(b) ? "anchored" : "corner"; }

std::vector<double> witness_lower(const WitnessBox& b) {
  if (const auto* c = std::get_if<CornerBox>(&b)) return c->lower;
  return std::vector<double>(std::get<AnchoredBox>(b).upper.size(), 0.0);
}

std::vector<double> witness_upper(const WitnessBox& b) {
  if (const auto* c = std::get_if<CornerBox>(&b)) return c->upper;
  return std::get<AnchoredBox>(b).upper;
}

bool witness_closed(const WitnessBox& b) {
  return std::visit([](const auto& box) { return box.closed; }, b);
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint64_t start = 0;
  bool incremental = false;
};

void cmd_generate(const GenerateArgs& a, Sink& sink) {
  if (a.d == 0) throw std::invalid_argument("generate: dimension must be >= 1");
  if (a.n == 0) throw std::invalid_argument("generate: N must be >= 1");
  const auto bases = first_primes(a.d);
  const auto p = a.incremental ? halton_points_incremental(bases, a.n, a.start) : halton_points(bases, a.n, a.start);
  switch (sink.format()) {
    case Format::Csv: write_csv(sink.stream(), p); return;
    case Format::Json: sink.stream() << to_json(p, bases, 2) << '\n'; return;
    case Format::Table: {
      Table t;
      t.columns.push_back("n");
      for (std::size_t j = 1; j <= a.d; ++j) t.columns.push_back(fmt::format("x{}", j));
      for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<Cell> row{static_cast<std::int64_t>(a.start + i)};
        for (double x : p.point(i)) row.emplace_back(x);
        t.add(std::move(row));
      }
      sink.emit(t);
      return;
    }
  }
}

// ------------------------------------------------------------ discrepancy

struct DiscrepancyArgs {
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint64_t start = 0;
  std::string sequence = "halton";
  std::string input;
  bool unanchored = false;
  std::string weights;
  bool per_subset = false;
};

void cmd_discrepancy(const DiscrepancyArgs& a, Sink& sink) {
  std::optional<PointSet> points;
  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) throw std::runtime_error("cannot open input file '" + a.input + "'");
    points = read_csv(in);
  } else {
    if (a.d == 0) throw std::invalid_argument("discrepancy: dimension must be >= 1");
    if (a.n == 0) throw std::invalid_argument("discrepancy: N must be >= 1");
    points = halton_points(first_primes(a.d), a.n, a.start);
  }
  const PointSet& p = *points;

  const bool weighted = !a.weights.empty() || a.per_subset;
  if (!weighted) {
    const auto r = a.unanchored ? unanchored_discrepancy_exact(p) : star_discrepancy_exact(p);
    if (sink.format() == Format::Json) {
      sink.stream() << to_json(r, 2) << '\n';
      return;
    }
    Table t{{"value", "witness_kind", "witness_lower", "witness_upper", "witness_closed"}, {}};
    t.add({r.value, witness_kind(r.witness_box), join(witness_lower(r.witness_box)),
           join(witness_upper(r.witness_box)), std::int64_t{witness_closed(r.witness_box)}});
    sink.emit(t);
    return;
  }

  const auto w = a.weights.empty() ? WeightFamily::unit(p.dimension()) : WeightFamily::parse(a.weights);
  const auto fn = product_weight_fn(w);
  const auto contributions = a.unanchored ? unanchored_contributions(p, fn) : star_contributions(p, fn);
  const auto best = select_weighted_max(contributions);

  if (!a.per_subset) {
    if (sink.format() == Format::Json) {
      sink.stream() << to_json(best, 2) << '\n';
      return;
    }
    Table t{{"value", "witness_subset", "witness_kind", "witness_lower", "witness_upper", "witness_closed"}, {}};
    t.add({best.value, best.witness_subset->to_string(), witness_kind(best.witness_box),
           join(witness_lower(best.witness_box)), join(witness_upper(best.witness_box)),
           std::int64_t{witness_closed(best.witness_box)}});
    sink.emit(t);
    return;
  }

  Table t{{"subset", "weight", "discrepancy", "weighted", "is_max"}, {}};
  for (const auto& c : contributions) {
    t.add({c.subset.to_string(), c.weight, c.discrepancy.value, c.weighted(),
           std::int64_t{c.subset == *best.witness_subset}});
  }
  if (sink.format() == Format::Json) {
    std::ostringstream rows;
    render(t, Format::Json, rows);
    const nlohmann::json doc = {{"result", nlohmann::json::parse(to_json(best))},
                                {"contributions", nlohmann::json::parse(rows.str())}};
    sink.stream() << doc.dump(2) << '\n';
    return;
  }
  sink.emit(t);
}

// ------------------------------------------------------------------ bound

struct BoundArgs {
  std::string model;
  std::string u;
  double n = 0.0;
  std::string n_range;
  double c = 2.0;
  std::uint64_t b = 2;
  double g = 0.0;
  bool exact = false;
};

BoundModel make_model(const BoundArgs& a) {
  switch (parse_bound_kind(a.model)) {
    case BoundKind::HaltonH60: return BoundModel::halton_h60();
    case BoundKind::NiederreiterClassic: return BoundModel::niederreiter_classic();
    case BoundKind::SixJLinear: return BoundModel::six_j_linear();
    case BoundKind::NiederreiterT16: return BoundModel::niederreiter_t16(a.b);
    case BoundKind::XingNiederreiter: return BoundModel::xing_niederreiter(a.b, a.g, a.c);
    case BoundKind::HoferNiederreiter: return BoundModel::hofer_niederreiter(a.b, a.g, a.c);
    case BoundKind::Sobol: return BoundModel::sobol(a.c);
  }
  throw std::logic_error("unhandled bound model");
}

void cmd_bound(const BoundArgs& a, Sink& sink) {
  const auto model = make_model(a);
  model.validate();
  const auto u = Subset::parse(a.u);
  const auto bases = first_primes(u.max_index());
  Table t{{"model", "u", "N", "bound"}, {}};
  t.add({to_string(model.kind), u.to_string(), a.n, projection_bound(model, u, a.n, bases)});
  sink.emit(t);
}

void cmd_bound_sweep(const BoundArgs& a, bool assert_on, Sink& sink) {
  const auto model = make_model(a);
  model.validate();
  const auto u = Subset::parse(a.u);
  const auto bases = first_primes(u.max_index());
  const auto range = parse_n_range(a.n_range);
  Table t{{"N", "bound"}, {}};
  if (a.exact) t.columns.push_back("exact_star");
  std::vector<std::string> failures;
  const auto all = a.exact ? halton_points(bases, range.last) : PointSet(1, {0.0});
  for (std::uint64_t n = range.first; n <= range.last; n += range.step) {
    const double nd = static_cast<double>(n);
    const double bound = projection_bound(model, u, nd, bases);
    std::vector<Cell> row{static_cast<std::int64_t>(n), bound};
    if (a.exact) {
      const auto head = PointSet(all.dimension(), std::vector<double>(all.coords().begin(),
                                                                      all.coords().begin() + n * all.dimension()));
      const double exact = star_discrepancy_exact(project(head, u)).value;
      row.emplace_back(exact);
      check_bound(assert_on, bound, exact, fmt::format("N={} bound", n), failures);
    }
    t.add(std::move(row));
  }
  sink.emit(t);
  raise_failures(failures);
}

// ----------------------------------------------------------------- report

struct ReportArgs {
  std::size_t d = 2;
  std::string n_range = "2:64:1";
  std::string weights = "reciprocal";
  bool unanchored = false;
};

void cmd_report(const ReportArgs& a, bool assert_on, Sink& sink) {
  if (a.d == 0) throw std::invalid_argument("report: dimension must be >= 1");
  const auto range = parse_n_range(a.n_range);
  if (range.first < 2) throw std::invalid_argument("report: bounds need N >= 2");
  const auto w = WeightFamily::parse(a.weights);
  const auto bases = first_primes(a.d);
  const auto full = Subset::full(a.d);
  const auto variant = a.unanchored ? DiscrepancyVariant::Unanchored : DiscrepancyVariant::Anchored;
  const auto all = halton_points(bases, range.last);

  Table t{{"N", "exact_star", "bound_HaltonH60", "bound_SixJLinear", "bound_NiederreiterClassic",
           "weighted_bound_max", "weighted_bound_product", "final_bound", "exact_weighted_star"},
          {}};
  std::vector<std::string> failures;
  for (std::uint64_t n = range.first; n <= range.last; n += range.step) {
    const double nd = static_cast<double>(n);
    const PointSet p(a.d, std::vector<double>(all.coords().begin(), all.coords().begin() + n * a.d));
    std::optional<double> exact, exact_weighted;
    if (star_grid_size(p) <= kGridBudget) {
      exact = star_discrepancy_exact(p).value;
      exact_weighted = weighted_star_discrepancy_exact(p, w).value;
    }
    const double h60 = projection_bound(BoundModel::halton_h60(), full, nd, bases);
    const double six = projection_bound(BoundModel::six_j_linear(), full, nd, bases);
    const double classic = projection_bound(BoundModel::niederreiter_classic(), full, nd, bases);
    const double wmax = weighted_bound_max(w, a.d, nd);
    const double wprod = weighted_bound_product(w, a.d, nd);
    std::optional<double> final_bound;
    if (nd >= 10.0) final_bound = halton_weighted_bound_final(w, a.d, nd, variant);

    auto cell = [](const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; };
    t.add({static_cast<std::int64_t>(n), cell(exact), h60, six, classic, wmax, wprod, cell(final_bound),
           cell(exact_weighted)});

    if (exact) {
      check_bound(assert_on, h60, *exact, fmt::format("N={} bound_HaltonH60", n), failures);
      check_bound(assert_on, six, *exact, fmt::format("N={} bound_SixJLinear", n), failures);
      check_bound(assert_on, classic, *exact, fmt::format("N={} bound_NiederreiterClassic", n), failures);
      check_bound(assert_on, wmax, *exact_weighted, fmt::format("N={} weighted_bound_max", n), failures);
      check_bound(assert_on, wprod, *exact_weighted, fmt::format("N={} weighted_bound_product", n), failures);
      if (final_bound) {
        check_bound(assert_on, *final_bound, *exact_weighted, fmt::format("N={} final_bound", n), failures);
      }
    }
  }
  sink.emit(t);
  raise_failures(failures);
}

// ----------------------------------------------------------------- cdelta

struct CDeltaArgs {
  double alpha = 0.0;
  double delta = 0.0;
  std::string route = "table";
};

std::vector<Cell> cdelta_row(const CDeltaReport& r) {
  return {r.alpha,
          r.delta,
          to_string(r.route),
          r.w,
          r.sigma_w ? Cell{*r.sigma_w} : Cell{},
          r.c_delta.to_string(6),
          r.c_delta.log10(),
          r.maximizer_verified ? Cell{std::int64_t{*r.maximizer_verified}} : Cell{}};
}

void cmd_cdelta(const CDeltaArgs& a, Sink& sink) {
  Table t{{"alpha", "delta", "route", "w", "sigma_w", "c_delta", "log10_c_delta", "maximizer_verified"}, {}};
  t.add(cdelta_row(c_delta(a.alpha, a.delta, parse_route(a.route))));
  sink.emit(t);
}

void cmd_cdelta_table(const std::string& route_name, bool assert_on, Sink& sink) {
  const auto route = parse_route(route_name);
  const auto& cells = reference_c_delta_table();
  const std::vector<double> alphas{1.5, 2.0, 3.0, 4.0};
  const std::vector<double> deltas{0.9, 0.5, 0.1};

  std::vector<LogValue> computed(cells.size());
  parallel_chunks(cells.size(), 1, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) computed[i] = c_delta(cells[i].alpha, cells[i].delta, route).c_delta;
  });

  Table t{{"delta"}, {}};
  for (double al : alphas) {
    t.columns.push_back(fmt::format("c_alpha={}", al));
    t.columns.push_back(fmt::format("reference_alpha={}", al));
    t.columns.push_back(fmt::format("log10_diff_alpha={}", al));
  }
  std::vector<std::string> failures;
  for (double de : deltas) {
    std::vector<Cell> row{de};
    for (double al : alphas) {
      const auto it = std::find_if(cells.begin(), cells.end(),
                                   [&](const ReferenceCell& c) { return c.alpha == al && c.delta == de; });
      const auto& got = computed[static_cast<std::size_t>(it - cells.begin())];
      const int sig = it->precision == CellPrecision::Small ? 6 : 2;
      row.emplace_back(got.to_string(sig));
      row.emplace_back(it->printed);
      row.emplace_back(got.log10() - it->value.log10());
      if (route == CDeltaRoute::ClosedFormTable && assert_on && !within_tolerance(*it, got)) {
        failures.push_back(fmt::format("alpha={} delta={}: {} vs reference {}", al, de, got.to_string(6), it->printed));
      }
    }
    t.add(std::move(row));
  }
  sink.emit(t);
  raise_failures(failures);
}

// ------------------------------------------------------------------- nmin

struct NMinArgs {
  double epsilon = 0.0;
  double delta = 0.0;
  std::string c;
  std::optional<double> alpha;
  std::string route = "table";
};

void cmd_nmin(const NMinArgs& a, Sink& sink) {
  LogValue c;
  if (!a.c.empty()) {
    c = LogValue::parse(a.c);
  } else if (a.alpha) {
    c = c_delta(*a.alpha, a.delta, parse_route(a.route)).c_delta;
  } else {
    throw std::invalid_argument("nmin: give either --c or --alpha");
  }
  const auto n = n_min({a.epsilon, c, a.delta});
  Table t{{"epsilon", "delta", "c_delta", "n_min"}, {}};
  t.add({a.epsilon, a.delta, c.to_string(6), to_string(n)});
  sink.emit(t);
}

// -------------------------------------------------------- lambertw, deltastar

void cmd_lambertw(const std::vector<double>& zs, Sink& sink) {
  Table t{{"z", "W", "residual"}, {}};
  for (double z : zs) {
    const double w = lambert_w(z);
    t.add({z, w, std::abs(w * std::exp(w) - z)});
  }
  sink.emit(t);
}

struct DeltaStarArgs {
  std::vector<double> n;
  std::vector<double> log_n;
  bool unanchored = false;
  bool crossing = false;
};

void cmd_deltastar(const DeltaStarArgs& a, Sink& sink) {
  const auto v = a.unanchored ? DiscrepancyVariant::Unanchored : DiscrepancyVariant::Anchored;
  if (a.crossing) {
    Table t{{"variant", "N_crossing"}, {}};
    t.add({std::string(a.unanchored ? "unanchored" : "anchored"), delta_star_unit_crossing(v)});
    sink.emit(t);
    return;
  }
  if (a.n.empty() && a.log_n.empty()) throw std::invalid_argument("deltastar: give --N, --log-N or --crossing");
  Table t{{"log_N", "N", "delta_star", "ell_star"}, {}};
  for (double n : a.n) {
    t.add({std::log(n), LogValue::from_double(n).to_string(6), delta_star(n, v), ell_star(n, v)});
  }
  for (double ln : a.log_n) {
    const double n = std::exp(ln);
    t.add({ln, LogValue::from_log(ln).to_string(6), delta_star_from_log(ln, v),
           std::isfinite(n) ? Cell{ell_star(n, v)} : Cell{}});
  }
  sink.emit(t);
}

std::size_t resolve_threads(const Globals& g, const Environment& env) {
  if (g.threads) return *g.threads;
  if (env.threads && !env.threads->empty()) {
    const auto n = parse_uint(*env.threads, "QDL_THREADS");
    if (n == 0) throw std::invalid_argument("QDL_THREADS must be >= 1");
    return n;
  }
  return 0;
}

}  // namespace

NRange parse_n_range(const std::string& text) {
  std::vector<std::string_view> parts;
  std::string_view rest(text);
  for (auto pos = rest.find(':'); pos != std::string_view::npos; pos = rest.find(':')) {
    parts.push_back(rest.substr(0, pos));
    rest.remove_prefix(pos + 1);
  }
  parts.push_back(rest);
  if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("N-range must be a:b or a:b:step");
  NRange r{parse_uint(parts[0], "N-range"), parse_uint(parts[1], "N-range"),
           parts.size() == 3 ? parse_uint(parts[2], "N-range") : 1};
  if (r.step == 0) throw std::invalid_argument("N-range step must be positive");
  if (r.first == 0 || r.first > r.last) throw std::invalid_argument(fmt::format("N-range '{}' is empty", text));
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Halton sequences, exact discrepancies and weighted discrepancy bounds", "qdl"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "csv, json or table (default: table on a terminal, csv otherwise)")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_option("--output,-o", g.output, "Write to this file instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads (default: QDL_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-assert", g.no_assert, "Do not fail when a bound falls below an exact value");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  GenerateArgs gen;
  auto* generate = sub("generate", "Emit the first N Halton points");
  generate->add_option("-d,--dimension", gen.d, "Dimension")->required();
  generate->add_option("-N,--count", gen.n, "Number of points")->required();
  generate->add_option("--start", gen.start, "Index of the first point");
  generate->add_flag("--incremental", gen.incremental, "Build coordinates by block extension");

  DiscrepancyArgs disc;
  auto* discrepancy = sub("discrepancy", "Exact star, unanchored or weighted discrepancy");
  discrepancy->add_option("-d,--dimension", disc.d, "Dimension");
  discrepancy->add_option("-N,--count", disc.n, "Number of points");
  discrepancy->add_option("--start", disc.start, "Index of the first point");
  discrepancy->add_option("--sequence", disc.sequence, "Point sequence")->check(CLI::IsMember({"halton"}));
  discrepancy->add_option("--input", disc.input, "Read points from a CSV file instead");
  discrepancy->add_flag("--unanchored", disc.unanchored, "Unanchored (extreme) discrepancy");
  discrepancy->add_option("--weights", disc.weights, "power:a, reciprocal, logsqrt:c, explicit:g1,g2,..., unit:d");
  discrepancy->add_flag("--per-subset", disc.per_subset, "List every subset's contribution");

  BoundArgs bnd;
  auto* bound = sub("bound", "Evaluate a per-projection discrepancy bound");
  auto* sweep = sub("bound-sweep", "Evaluate a per-projection bound over a range of N");
  for (auto* s : {bound, sweep}) {
    s->add_option("--model", bnd.model, "HaltonH60, NiederreiterClassic, SixJLinear, NiederreiterT16, "
                                        "XingNiederreiter, HoferNiederreiter or Sobol")
        ->required();
    s->add_option("--u", bnd.u, "Coordinate subset, e.g. 1,3")->required();
    s->add_option("--C", bnd.c, "Constant C > 1 for the Sobol, Xing and Hofer models")->capture_default_str();
    s->add_option("--b", bnd.b, "Prime-power base of the digital-sequence models")->capture_default_str();
    s->add_option("--g", bnd.g, "Genus for the Xing and Hofer models")->capture_default_str();
  }
  bound->add_option("-N,--count", bnd.n, "Number of points (N >= 2)")->required();
  sweep->add_option("--N-range", bnd.n_range, "a:b or a:b:step")->required();
  sweep->add_option("--csv", g.output, "Write CSV to this file");
  sweep->add_flag("--exact", bnd.exact, "Add the exact star discrepancy of the Halton projection");

  ReportArgs rep;
  auto* report = sub("report", "Exact discrepancies against every bound over an N sweep");
  report->add_option("-d,--dimension", rep.d, "Dimension")->capture_default_str();
  report->add_option("--N-range", rep.n_range, "a:b or a:b:step")->capture_default_str();
  report->add_option("--weights", rep.weights, "Weight family")->capture_default_str();
  report->add_flag("--unanchored", rep.unanchored, "Use the constant 12 in final_bound");

  CDeltaArgs cd;
  auto* cdelta = sub("cdelta", "Tractability constant c_delta for gamma_j = j^-(1+alpha)");
  cdelta->add_option("--alpha", cd.alpha, "alpha > 1")->required();
  cdelta->add_option("--delta", cd.delta, "delta in (0, 1)")->required();
  cdelta->add_option("--route", cd.route, "table, hn or alt")->capture_default_str();

  std::string table_route = "table";
  auto* cdelta_table = sub("cdelta-table", "c_delta for delta in {0.9, 0.5, 0.1}, alpha in {1.5, 2, 3, 4}");
  cdelta_table->add_option("--route", table_route, "table, hn or alt")->capture_default_str();

  NMinArgs nm;
  auto* nmin = sub("nmin", "Smallest N with c_delta / N^(1-delta) <= epsilon");
  nmin->add_option("--epsilon", nm.epsilon, "epsilon in (0, 1)")->required();
  nmin->add_option("--delta", nm.delta, "delta in [0, 1)")->required();
  nmin->add_option("--c", nm.c, "c_delta, e.g. 24.5 or 1.7E775");
  nmin->add_option("--alpha", nm.alpha, "Compute c_delta for this alpha instead");
  nmin->add_option("--route", nm.route, "Route for --alpha")->capture_default_str();

  std::vector<double> zs;
  auto* lambertw = sub("lambertw", "Principal branch of the Lambert W function");
  lambertw->add_option("z", zs, "Arguments z >= 0")->required();

  DeltaStarArgs ds;
  auto* deltastar = sub("deltastar", "Exponent defect delta*(N) and the optimal l*(N)");
  deltastar->add_option("-N,--count", ds.n, "Values of N >= 10");
  deltastar->add_option("--log-N", ds.log_n, "Values of log N, for N beyond double range");
  deltastar->add_flag("--unanchored", ds.unanchored, "Use the constant 12");
  deltastar->add_flag("--crossing", ds.crossing, "Find the N where delta* = 1");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const std::size_t threads = resolve_threads(g, env);
    if (threads > 0) set_thread_count(threads);
    const bool assert_on = !g.no_assert;
    Sink sink(g, env, out);

    if (generate->parsed()) cmd_generate(gen, sink);
    else if (discrepancy->parsed()) cmd_discrepancy(disc, sink);
    else if (bound->parsed()) cmd_bound(bnd, sink);
    else if (sweep->parsed()) cmd_bound_sweep(bnd, assert_on, sink);
    else if (report->parsed()) cmd_report(rep, assert_on, sink);
    else if (cdelta->parsed()) cmd_cdelta(cd, sink);
    else if (cdelta_table->parsed()) cmd_cdelta_table(table_route, assert_on, sink);
    else if (nmin->parsed()) cmd_nmin(nm, sink);
    else if (lambertw->parsed()) cmd_lambertw(zs, sink);
    else if (deltastar->parsed()) cmd_deltastar(ds, sink);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}

}  // namespace qdl::cli
