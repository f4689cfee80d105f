#pragma once

namespace qdl {

/// Principal branch W(z) for z >= 0: the w with w e^w = z.
///
/// Halley iteration from log(1 + z); at most 50 steps. The result satisfies
/// |W e^W - z| <= 1e-12 max(1, z). Throws std::domain_error for z < 0 or
/// non-finite z, std::runtime_error if the iteration fails to converge.
double lambert_w(double z);

/// log x - log log x + log log x / log x, for x > e. Approximation only.
double lambert_w_asymptotic(double x);

/// Solves (a x)^x = z for x via x = log z / W(a log z); needs a log z >= 0.
double solve_power_equation(double a, double z);

}  // namespace qdl
