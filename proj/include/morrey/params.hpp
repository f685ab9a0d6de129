#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace morrey {

/// Kernel parameter triple for K(x) = |x|^{alpha-n} / (1+|x|)^gamma.
/// gamma = 0 is the Riesz kernel and must be requested explicitly.
struct KernelParams {
  int n = 1;
  double alpha = 0.5;
  double gamma = 1.0;

  static KernelParams bessel_riesz(int n, double alpha, double gamma);
  static KernelParams riesz(int n, double alpha);

  /// Empty when 1 <= n <= 3, 0 < alpha < n and gamma >= 0.
  std::vector<std::string> validate() const;
  void require_valid() const;  // throws std::invalid_argument on violation
};

/// Lebesgue exponent with its Hoelder conjugate; t = +inf is the sup norm.
struct LebesgueExponent {
  double t = 1.0;

  explicit LebesgueExponent(double t_);
  double conjugate() const;  // t' with 1/t + 1/t' = 1 (t=1 -> +inf)
};

/// Second Morrey index: classical exponent q (p <= q) or a growth function;
/// the growth-function case lives in GrowthFunction (growth.hpp), this struct
/// only carries the classical pair.
struct MorreyExponents {
  double p = 1.0;
  double q = 1.0;

  MorreyExponents(double p_, double q_);
};

enum class TheoremId { T4, T5, T6, T7, T9, T11 };

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
inline bool is_set(double v) { return !std::isnan(v); }

/// One theorem's scalar hypotheses. Fields not constrained by the chosen
/// theorem may stay unset. q1 only participates in T5.
struct TheoremHypothesis {
  TheoremId theorem = TheoremId::T7;
  KernelParams kernel;
  double p1 = kUnset;
  double q1 = kUnset;
  double t = kUnset;
  double s = kUnset;
  double beta = kUnset;
  double t1 = kUnset;

  nlohmann::json to_json() const;
  static TheoremHypothesis from_json(const nlohmann::json& j);
};

/// Open interval (n/(n+gamma-alpha), n/(n-alpha)) of t with K in L^t.
/// Rejects gamma = 0: the Riesz kernel lies in no Lebesgue space.
std::pair<double, double> admissible_t_interval(const KernelParams& kp);

/// Target exponent p2: T7/T9 use beta*p1/(alpha+beta), T11 uses
/// beta*p1/(beta+n-alpha). Requires a negative denominator (valid hypotheses).
double derived_p2(TheoremId theorem, const KernelParams& kp, double p1, double beta);

/// Every violated inequality, named with actual vs required values.
/// Empty result == hypothesis admissible.
std::vector<std::string> validate_hypothesis(const TheoremHypothesis& h);

}  // namespace morrey
