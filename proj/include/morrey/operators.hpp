#pragma once

#include <cstdint>

#include "morrey/field.hpp"
#include "morrey/params.hpp"

namespace morrey {

/// Direct discrete convolution out(x) = sum_y K(x-y) f(y) h^n. The y = x cell
/// contributes f(x) times the exact integral of K over the radius-h/2 ball
/// (power-transform quadrature), so the kernel singularity is never sampled.
/// O(N^2) with a precomputed difference-lattice kernel table; parallel over
/// output points with fixed per-point summation order.
struct OperatorResult {
  GridFunction output;
  double singular_cell_integral = 0.0;  // int_{|z|<h/2} K
};

OperatorResult apply_bessel_riesz(const KernelParams& kp, const GridFunction& f,
                                  int threads = 0);

/// Uncentred Hardy-Littlewood maximal function restricted to candidate balls
/// B(a, r): a on the grid, r in the geometric ladder {h, 2h, 4h, ...} up to
/// the grid diameter. Averages are discrete means over the open-ball lattice
/// points that lie inside the grid, so ||Mf||_inf <= ||f||_inf holds exactly
/// and balls clipped at the boundary average over what they actually cover.
/// Ball membership is exact integer arithmetic.
GridFunction maximal(const GridFunction& f, int threads = 0);

/// Near/far split of the convolution at radius R around one output point:
/// I1 sums |x-y| < R (plus the singular cell), I2 sums |x-y| >= R.
struct HedbergSplit {
  double R = 0.0;
  double I1 = 0.0;
  double I2 = 0.0;
};

HedbergSplit hedberg_split(const KernelParams& kp, const GridFunction& f,
                           std::int64_t x_flat, double R);

/// Balance radius R with R^{-beta} = f_norm / mf_x.
double hedberg_radius(double f_norm, double mf_x, double beta);

/// Pointwise bound: T7/T9 use kernel_norm * f_norm^{-alpha/beta} *
/// mf_x^{1+alpha/beta}; T11 uses f_norm^{(alpha-n)/beta} *
/// mf_x^{1+(n-alpha)/beta}. Zero input (mf_x = 0) gives 0 by convention.
double hedberg_bound(TheoremId theorem, const KernelParams& kp, double beta,
                     double kernel_norm, double f_norm, double mf_x);

}  // namespace morrey
