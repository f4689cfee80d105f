#include "qdl/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace qdl {

double lambert_w(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw std::domain_error("lambert_w: argument must be finite and >= 0");
  if (z == 0.0) return 0.0;

  constexpr int kMaxIterations = 50;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double w = std::log1p(z);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    if (f == 0.0) break;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(w))) break;
  }
  const double residual = std::abs(w * std::exp(w) - z);
  if (!(residual <= 1e-12 * std::max(1.0, z))) {
    throw std::runtime_error(fmt::format("lambert_w: no convergence at z = {} (residual {})", z, residual));
  }
  return w;
}

double lambert_w_asymptotic(double x) {
  if (!(x > std::exp(1.0))) throw std::domain_error("lambert_w_asymptotic: needs x > e");
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

double solve_power_equation(double a, double z) {
  const double t = a * std::log(z);
  if (!(t >= 0.0)) throw std::domain_error("solve_power_equation: needs a log z >= 0");
  if (t == 0.0) throw std::domain_error("solve_power_equation: degenerate at a log z = 0");
  return std::log(z) / lambert_w(t);
}

}  // namespace qdl
