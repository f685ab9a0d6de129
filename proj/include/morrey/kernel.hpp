#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "morrey/growth.hpp"
#include "morrey/params.hpp"

namespace morrey {

enum class NormMethod { RadialQuadrature, DyadicSum, ClosedForm };

std::string to_string(NormMethod m);

/// Outcome of a kernel-norm computation. `value` is +inf when divergent.
/// For dyadic sums k_min/k_max are the used rung range relative to the input
/// R; for ladder-based Morrey norms they are the 2^j ladder bounds.
struct KernelNormEstimate {
  std::string space;  // "Lt", "Ls,t" or "Ls,sigma"
  double value = 0.0;
  bool divergent = false;
  NormMethod method = NormMethod::RadialQuadrature;
  int k_min = 0;
  int k_max = 0;
  double tail_bound = 0.0;

  nlohmann::json to_json() const;
  static KernelNormEstimate from_json(const nlohmann::json& j);
};

/// Point evaluation |x|^{alpha-n}/(1+|x|)^gamma; x = 0 raises std::domain_error.
double kernel_eval(const KernelParams& kp, std::span<const double> x);
double kernel_eval_radius(const KernelParams& kp, double r);

/// ||K||_{L^t} by radial quadrature on (0, inf), sphere factor included.
/// Divergence is decided analytically from the exponent signs:
/// (alpha-n)t + n <= 0 (origin) or (alpha-n-gamma)t + n >= 0 (tail).
KernelNormEstimate lebesgue_norm(const KernelParams& kp, double t);

/// Dyadic surrogate S = sum_k (2^k R)^{(alpha-n)t+n} / (1+2^k R)^{gamma t},
/// returned as S^{1/t}. Rungs auto-extend until both geometric tails drop
/// below rel 1e-10; the window anchors near r = 1 so doubling R reuses the
/// identical rung set. An explicit window (relative to R) overrides.
struct DyadicWindow {
  int k_lo = 0;
  int k_hi = 0;
};

KernelNormEstimate dyadic_sum_estimate(const KernelParams& kp, double t, double R,
                                       std::optional<DyadicWindow> window = {});

/// Explicit bracketing factor 2^{|(alpha-n)t| + gamma t + n}: dyadic^t and
/// Lebesgue^t agree within [1/c, c] whenever both are finite.
double shell_bracketing_factor(const KernelParams& kp, double t);

/// Second index for a kernel Morrey norm: classical exponent t or a growth
/// function sigma.
using MorreySecondIndex = std::variant<double, GrowthFunction>;

/// sup over the origin-centred radius ladder R = 2^j (j in [-30, 30], auto-
/// extended while the running sup grows by > rel 1e-9) of
///   classical:  R^{n(1/t - 1/s)} (int_{|x|<R} K^s)^{1/s}
///   generalized: (int_{|x|<R} K^s)^{1/s} / (sigma(R) R^{n/s}).
/// Ball integrals accumulate incrementally over shells; both asymptotic ends
/// are certified by exponent analysis, else the divergent flag is set.
KernelNormEstimate morrey_norm_kernel(const KernelParams& kp, double s,
                                      const MorreySecondIndex& second);

/// Lemma-style membership test: sup over the ladder of
/// [R^{(alpha-n)s+n} / ((alpha-n)s+n)] / (sigma^s(R) R^n), with closed-form
/// numerator. holds <=> the sup stays bounded at both asymptotic ends.
struct Lemma8Check {
  bool holds = false;
  double c_best = 0.0;
  double argmax_R = 0.0;
};

struct RadiusLadder {
  int j_min = -30;
  int j_max = 30;
};

Lemma8Check lemma8_hypothesis_check(const KernelParams& kp, double s,
                                    const GrowthFunction& sigma,
                                    const RadiusLadder& ladder = {});

/// (R, Q(R)) samples of the Morrey quotient along the ladder 2^j,
/// j in [j_min, j_max]; feeds the plot CSV emitted by `compare`.
std::vector<std::pair<double, double>> kernel_quotient_series(
    const KernelParams& kp, double s, const MorreySecondIndex& second, int j_min,
    int j_max);

}  // namespace morrey
