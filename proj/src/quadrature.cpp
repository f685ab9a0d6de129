#include "morrey/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace morrey {
namespace {

// Kronrod-15 abscissae on [0,1] side (symmetric) with K15 weights and the
// embedded Gauss-7 weights at the shared nodes (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double k15 = 0.0;
  double err = 0.0;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - hw * kXgk[i]);
    fv[14 - i] = f(c + hw * kXgk[i]);
  }
  fv[7] = f(c);
  double k15 = kWgk[7] * fv[7];
  double g7 = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    k15 += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) g7 += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  Panel p;
  p.k15 = k15 * hw;
  p.err = std::abs((k15 - g7) * hw);
  return p;
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, QuadResult& acc) {
  const Panel p = gk15(f, a, b);
  if (depth <= 0 || p.err <= tol || !std::isfinite(p.k15)) {
    acc.value += p.k15;
    acc.error += p.err;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, depth - 1, acc);
  adapt(f, c, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double rel_tol, double abs_tol,
                              int max_depth) {
  if (!(a <= b)) throw std::invalid_argument("integrate_adaptive: a > b");
  QuadResult acc;
  if (a == b) return acc;
  const Panel probe = gk15(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(probe.k15));
  adapt(f, a, b, std::max(tol, 1e-305), max_depth, acc);
  return acc;
}

QuadResult integrate_power_weight(const std::function<double(double)>& g, double A,
                                  double upper, double rel_tol) {
  if (!(A > 0.0)) throw std::invalid_argument("integrate_power_weight: A <= 0");
  if (!(upper > 0.0)) return {};
  // u = r^A: int_0^upper r^{A-1} g(r) dr = (1/A) int_0^{upper^A} g(u^{1/A}) du.
  const double top = std::pow(upper, A);
  const double inv_A = 1.0 / A;
  auto integrand = [&](double u) { return u > 0.0 ? g(std::pow(u, inv_A)) : g(0.0); };
  QuadResult r = integrate_adaptive(integrand, 0.0, top, rel_tol);
  r.value *= inv_A;
  r.error *= inv_A;
  return r;
}

}  // namespace morrey
