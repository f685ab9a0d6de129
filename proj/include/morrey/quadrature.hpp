#pragma once

#include <functional>

namespace morrey {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated error estimate
};

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval. Bisects until the
/// local K15-G7 discrepancy meets rel_tol/abs_tol or max_depth is reached.
/// Deterministic: evaluation order depends only on the inputs.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double rel_tol = 1e-12,
                              double abs_tol = 1e-300, int max_depth = 48);

/// Integral of r^{A-1} * g(r) over (0, upper] with A > 0 and g bounded.
/// Substitutes u = r^A so the integrand is bounded near the origin.
QuadResult integrate_power_weight(const std::function<double(double)>& g, double A,
                                  double upper, double rel_tol = 1e-12);

}  // namespace morrey
