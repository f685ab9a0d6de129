#pragma once

// Closed-form and brute-force oracles shared by the test binaries. Everything
// here is derived independently of the library internals: Gamma-function
// identities, Simpson quadrature on desingularized integrands, and exhaustive
// scans over all candidate intervals.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

constexpr double kPi = 3.14159265358979323846;

// surface measure of the unit sphere S^{n-1}
inline double sphere_measure(int n) {
  if (n == 1) return 2.0;
  if (n == 2) return 2.0 * kPi;
  return 4.0 * kPi;
}

// ||K||_{L^t}^t = omega_{n-1} Int_0^inf r^{A-1} (1+r)^{-G} dr with
// A = (alpha - n) t + n and G = gamma t. The integral is the Beta function
// B(A, G - A); NaN signals divergence (A <= 0 or G <= A).
inline double lebesgue_kernel_norm(int n, double alpha, double gamma, double t) {
  const double A = (alpha - n) * t + n;
  const double G = gamma * t;
  if (A <= 0.0 || G - A <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double beta = std::exp(std::lgamma(A) + std::lgamma(G - A) - std::lgamma(G));
  return std::pow(sphere_measure(n) * beta, 1.0 / t);
}

template <class F>
double simpson(F f, double a, double b, int panels) {
  const double w = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * w);
  return s * w / 3.0;
}

// Int_{|z| < rho} K dz = omega Int_0^rho r^{alpha-1} (1+r)^{-gamma} dr. The
// substitution u = r^alpha removes the singularity:
// (omega / alpha) Int_0^{rho^alpha} (1 + u^{1/alpha})^{-gamma} du.
inline double kernel_ball_integral(int n, double alpha, double gamma, double rho) {
  const double top = std::pow(rho, alpha);
  const double val = simpson(
      [&](double u) { return std::pow(1.0 + std::pow(u, 1.0 / alpha), -gamma); }, 0.0,
      top, 4096);
  return sphere_measure(n) / alpha * val;
}

// Exhaustive uncentred maximal function on a 1-d grid: every interval of
// grid points [i..j] containing x, discrete point means. O(m^3); for the
// 129-point oracle grid that is nothing.
inline std::vector<double> brute_maximal_1d(const std::vector<double>& v) {
  const std::int64_t m = static_cast<std::int64_t>(v.size());
  std::vector<double> prefix(static_cast<std::size_t>(m + 1), 0.0);
  for (std::int64_t i = 0; i < m; ++i)
    prefix[static_cast<std::size_t>(i + 1)] =
        prefix[static_cast<std::size_t>(i)] + std::abs(v[static_cast<std::size_t>(i)]);
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  for (std::int64_t x = 0; x < m; ++x) {
    double best = 0.0;
    for (std::int64_t i = 0; i <= x; ++i)
      for (std::int64_t j = x; j < m; ++j) {
        const double mean = (prefix[static_cast<std::size_t>(j + 1)] -
                             prefix[static_cast<std::size_t>(i)]) /
                            double(j - i + 1);
        best = std::max(best, mean);
      }
    out[static_cast<std::size_t>(x)] = best;
  }
  return out;
}

}  // namespace oracle
