#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdl/log_value.hpp"

namespace qdl {

/// Tractability constants for power-law weights gamma_j = j^-(1+alpha),
/// alpha > 1, in bounds of the form D*_{N,gamma} <= c_delta / N^(1-delta).

/// Tail sum 6 sum_{j>w} j^-alpha with rigorous bracketing.
struct SigmaW {
  double value;  ///< best estimate
  double lower;  ///< guaranteed lower bound
  double upper;  ///< guaranteed upper bound
};

/// 6 sum_{j>w} j^-alpha: explicit terms up to max(w, 10^6), then an
/// Euler-Maclaurin tail bracketed by the integral bounds. Throws
/// std::invalid_argument for alpha <= 1.
SigmaW sigma_w_bracket(double alpha, std::uint64_t w);
double sigma_w(double alpha, std::uint64_t w);

enum class CDeltaRoute {
  HNLemma3,         ///< minimal integer w with sigma_w <= delta/(1+sigma_0)
  ClosedFormTable,  ///< closed-form real w, lower-bound expression for c
  StirlingX0,       ///< maximiser x0 of alpha(6x)^(1/alpha) - delta x
};

std::string to_string(CDeltaRoute route);
/// "hn", "table", "alt" (or the enum names).
CDeltaRoute parse_route(std::string_view name);

struct CDeltaReport {
  double alpha;
  double delta;
  CDeltaRoute route;
  /// Integer w (HNLemma3), closed-form w (ClosedFormTable), x0 (StirlingX0).
  double w;
  std::optional<double> sigma_w;  ///< HNLemma3 only
  LogValue c_delta;
  /// StirlingX0: x0 verified as the maximiser (derivative changes sign).
  std::optional<bool> maximizer_verified;
};

CDeltaReport c_delta_hn(double alpha, double delta);
CDeltaReport c_delta_table(double alpha, double delta);
CDeltaReport c_delta_alt(double alpha, double delta);
CDeltaReport c_delta(double alpha, double delta, CDeltaRoute route);

/// Closed-form lower bound on w:
/// -1 + (6/((alpha-1) delta) (1 + 6/(alpha-1)))^(1/(alpha-1)), as a LogValue
/// so that alpha near 1 does not overflow.
LogValue w_closed_form(double alpha, double delta);

/// The worked instance delta = 0.1, alpha = 1.1: -1 + (600 * 61)^10.
LogValue w_lower_example();

/// max_{1 <= k <= cap} x^k / k! and its Stirling bound 2 e^y / sqrt(2 pi y),
/// y = ceil(x). Values are kept as natural logs (they overflow doubles for
/// x around 700).
struct StirlingMax {
  std::uint64_t argmax_k;
  double log_max;
  double log_bound;
  double value() const;
  double bound() const;
};

/// Uses the unimodality of x^k / k! (ratio (k+1)/x): the maximiser is
/// max(1, ceil(x) - 1), clipped to d_cap. Throws std::invalid_argument for
/// x <= 0 or d_cap == 0.
StirlingMax stirling_max_ratio(double x, std::optional<std::uint64_t> d_cap = std::nullopt);

/// (1/N) (max_k x^k/k!)^alpha <= c_delta_alt(alpha, delta) / N^(1-delta) with
/// x = (6 log N)^(1/alpha), compared in log domain. Needs N >= 3.
bool bound_chain_check(double alpha, double delta, double n);

struct NMinQuery {
  double epsilon;
  LogValue c_delta;
  double delta;
};

/// ceil((c/eps)^(1/(1-delta))): an exact integer while log10 < 15, otherwise
/// the un-ceiled power as a LogValue.
using NMin = std::variant<std::uint64_t, LogValue>;

/// Throws std::invalid_argument unless 0 < eps < 1 and 0 <= delta < 1.
NMin n_min(const NMinQuery& q);

std::string to_string(const NMin& n);

/// How a reference cell was printed, which fixes its comparison tolerance.
enum class CellPrecision {
  Mantissa,    ///< m x 10^e: |log10 difference| <= 1
  PowerOfTen,  ///< bare 10^e: |log10 difference| <= 5
  Small,       ///< plain decimal: relative error <= 5%
};

struct ReferenceCell {
  double alpha;
  double delta;
  LogValue value;
  CellPrecision precision;
  std::string printed;
};

/// The 12 published closed-form c_delta values, delta in {0.9, 0.5, 0.1} by
/// alpha in {1.5, 2, 3, 4}, row-major by alpha.
const std::vector<ReferenceCell>& reference_c_delta_table();

/// Whether `computed` is within the cell's tolerance.
bool within_tolerance(const ReferenceCell& cell, const LogValue& computed);

}  // namespace qdl
