#include "morrey/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "morrey/geometry.hpp"
#include "morrey/quadrature.hpp"

namespace morrey {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDyadicTailTol = 1e-10;
constexpr double kLadderSupTol = 1e-9;

// Radial profile T(r) = r^A / (1+r)^G of K^t; A = (alpha-n)t + n, G = gamma*t.
struct RadialPowers {
  double A;
  double G;
};

RadialPowers radial_powers(const KernelParams& kp, double t) {
  return {(kp.alpha - kp.n) * t + kp.n, kp.gamma * t};
}

bool diverges_at_origin(const RadialPowers& rp) { return rp.A <= 0.0; }
bool diverges_at_tail(const RadialPowers& rp) { return rp.A - rp.G >= 0.0; }

double radial_term(const RadialPowers& rp, double r) {
  return std::pow(r, rp.A) / std::pow(1.0 + r, rp.G);
}

// int_0^upper r^{A-1} (1+r)^{-G} dr
QuadResult base_integral(const RadialPowers& rp, double upper) {
  const double G = rp.G;
  return integrate_power_weight([G](double r) { return std::pow(1.0 + r, -G); },
                                rp.A, upper, 1e-11);
}

// int_lo^hi r^{A-1} (1+r)^{-G} dr away from the origin
QuadResult shell_integral(const RadialPowers& rp, double lo, double hi) {
  const double A = rp.A, G = rp.G;
  return integrate_adaptive(
      [A, G](double r) { return std::pow(r, A - 1.0) / std::pow(1.0 + r, G); }, lo,
      hi, 1e-11);
}

KernelNormEstimate divergent_estimate(std::string space, NormMethod method) {
  KernelNormEstimate e;
  e.space = std::move(space);
  e.value = kInf;
  e.divergent = true;
  e.method = method;
  return e;
}

struct SigmaView {
  // weight denominator sigma(R) * R^{n/s}; classical t realises sigma = R^{-n/t}
  const GrowthFunction* sigma = nullptr;
  double classical_t = 0.0;
  double exponent_at_zero() const {
    return sigma ? sigma->exponent_at_zero() : -classical_t;
  }
  double exponent_at_infinity() const {
    return sigma ? sigma->exponent_at_infinity() : -classical_t;
  }
  double operator()(double R) const {
    return sigma ? (*sigma)(R) : std::pow(R, -classical_t);
  }
};

SigmaView make_view(int n, const MorreySecondIndex& second) {
  SigmaView view;
  if (const double* t = std::get_if<double>(&second)) {
    if (!(*t > 0.0)) throw std::invalid_argument("morrey_norm_kernel: t must be > 0");
    view.classical_t = double(n) / *t;
  } else {
    view.sigma = &std::get<GrowthFunction>(second);
  }
  return view;
}

// Asymptotic exponents of the quotient Q(R) = (int_{|x|<R} K^s)^{1/s} /
// (sigma(R) R^{n/s}); bounded iff >= 0 at the origin and <= 0 at infinity.
struct QuotientAsymptotics {
  double at_zero;
  double at_infinity;
  bool log_at_infinity;  // borderline tail (alpha-n-gamma)s + n == 0
};

QuotientAsymptotics quotient_asymptotics(const KernelParams& kp, double s,
                                         const SigmaView& view) {
  QuotientAsymptotics qa{};
  qa.at_zero = kp.alpha - kp.n - view.exponent_at_zero();
  const double tail = (kp.alpha - kp.n - kp.gamma) * s + kp.n;
  qa.log_at_infinity = tail == 0.0;
  if (tail > 0.0)
    qa.at_infinity = kp.alpha - kp.n - kp.gamma - view.exponent_at_infinity();
  else
    qa.at_infinity = -view.exponent_at_infinity() - kp.n / s;
  return qa;
}

bool quotient_divergent(const RadialPowers& rp, const QuotientAsymptotics& qa) {
  if (diverges_at_origin(rp)) return true;
  if (qa.at_zero < 0.0) return true;
  if (qa.at_infinity > 0.0) return true;
  if (qa.log_at_infinity && qa.at_infinity >= 0.0) return true;
  return false;
}

}  // namespace

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::RadialQuadrature: return "radial-quadrature";
    case NormMethod::DyadicSum: return "dyadic-sum";
    case NormMethod::ClosedForm: return "closed-form";
  }
  return "?";
}

nlohmann::json KernelNormEstimate::to_json() const {
  nlohmann::json j{{"space", space},       {"divergent", divergent},
                   {"method", to_string(method)}, {"k_min", k_min},
                   {"k_max", k_max},       {"tail_bound", tail_bound}};
  if (divergent)
    j["value"] = nullptr;
  else
    j["value"] = value;
  return j;
}

KernelNormEstimate KernelNormEstimate::from_json(const nlohmann::json& j) {
  KernelNormEstimate e;
  e.space = j.at("space").get<std::string>();
  e.divergent = j.at("divergent").get<bool>();
  e.value = j.at("value").is_null() ? kInf : j.at("value").get<double>();
  const std::string m = j.at("method").get<std::string>();
  if (m == "radial-quadrature") e.method = NormMethod::RadialQuadrature;
  else if (m == "dyadic-sum") e.method = NormMethod::DyadicSum;
  else if (m == "closed-form") e.method = NormMethod::ClosedForm;
  else throw std::invalid_argument("unknown norm method: " + m);
  e.k_min = j.at("k_min").get<int>();
  e.k_max = j.at("k_max").get<int>();
  e.tail_bound = j.at("tail_bound").get<double>();
  return e;
}

double kernel_eval_radius(const KernelParams& kp, double r) {
  if (!(r > 0.0))
    throw std::domain_error("kernel_eval: the kernel is singular at x = 0");
  return std::pow(r, kp.alpha - kp.n) / std::pow(1.0 + r, kp.gamma);
}

double kernel_eval(const KernelParams& kp, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(kp.n))
    throw std::invalid_argument("kernel_eval: point dimension mismatch");
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  return kernel_eval_radius(kp, std::sqrt(r2));
}

KernelNormEstimate lebesgue_norm(const KernelParams& kp, double t) {
  kp.require_valid();
  if (!(t > 0.0)) throw std::invalid_argument("lebesgue_norm: t > 0 required");
  const RadialPowers rp = radial_powers(kp, t);
  if (diverges_at_origin(rp) || diverges_at_tail(rp))
    return divergent_estimate("Lt", NormMethod::RadialQuadrature);

  const QuadResult near = base_integral(rp, 1.0);
  // r -> 1/v maps int_1^inf onto the same bounded form with A' = G - A
  const RadialPowers far_rp{rp.G - rp.A, rp.G};
  const QuadResult far = base_integral(far_rp, 1.0);

  const double omega = unit_sphere_area(kp.n);
  KernelNormEstimate e;
  e.space = "Lt";
  e.method = NormMethod::RadialQuadrature;
  e.value = std::pow(omega * (near.value + far.value), 1.0 / t);
  e.tail_bound = omega * (near.error + far.error);
  return e;
}

double shell_bracketing_factor(const KernelParams& kp, double t) {
  return std::exp2(std::abs((kp.alpha - kp.n) * t) + kp.gamma * t + kp.n);
}

KernelNormEstimate dyadic_sum_estimate(const KernelParams& kp, double t, double R,
                                       std::optional<DyadicWindow> window) {
  kp.require_valid();
  if (!(t > 0.0)) throw std::invalid_argument("dyadic_sum_estimate: t > 0 required");
  if (!(R > 0.0)) throw std::invalid_argument("dyadic_sum_estimate: R > 0 required");
  const RadialPowers rp = radial_powers(kp, t);
  if (diverges_at_origin(rp) || diverges_at_tail(rp))
    return divergent_estimate("Lt", NormMethod::DyadicSum);

  auto term = [&](int k) { return radial_term(rp, std::exp2(double(k)) * R); };

  int k_lo, k_hi;
  std::deque<double> terms;
  if (window) {
    k_lo = window->k_lo;
    k_hi = window->k_hi;
    if (k_lo > k_hi) throw std::invalid_argument("dyadic window: k_lo > k_hi");
    for (int k = k_lo; k <= k_hi; ++k) terms.push_back(term(k));
  } else {
    // anchor near r = 1 so that R and 2R walk the identical rung set
    const int k0 = static_cast<int>(std::lround(-std::log2(R)));
    k_lo = k0 - 4;
    k_hi = k0 + 4;
    for (int k = k_lo; k <= k_hi; ++k) terms.push_back(term(k));
    double running = 0.0;
    for (double v : terms) running += v;
    // measured edge ratios bound the true tails: the downward term ratio
    // decreases towards 2^{-A} and the upward one towards 2^{A-G}
    constexpr int kMaxRungs = 4000;
    auto tail_below = [&] {
      const double edge = terms.front();
      const double m = term(k_lo - 1) / edge;
      return m < 1.0 ? term(k_lo - 1) / (1.0 - m) : kInf;
    };
    auto tail_above = [&] {
      const double edge = terms.back();
      const double m = term(k_hi + 1) / edge;
      return m < 1.0 ? term(k_hi + 1) / (1.0 - m) : kInf;
    };
    while (tail_below() > kDyadicTailTol * running && k_hi - k_lo < kMaxRungs) {
      terms.push_front(term(--k_lo));
      running += terms.front();
    }
    while (tail_above() > kDyadicTailTol * running && k_hi - k_lo < kMaxRungs) {
      terms.push_back(term(++k_hi));
      running += terms.back();
    }
  }

  // final ascending resum: deterministic and identical for R vs 2R
  double S = 0.0;
  for (double v : terms) S += v;

  KernelNormEstimate e;
  e.space = "Lt";
  e.method = NormMethod::DyadicSum;
  e.value = std::pow(S, 1.0 / t);
  e.k_min = k_lo;
  e.k_max = k_hi;
  {
    const double m_lo = term(k_lo - 1) / terms.front();
    const double m_hi = term(k_hi + 1) / terms.back();
    const double lo = m_lo < 1.0 ? term(k_lo - 1) / (1.0 - m_lo) : kInf;
    const double hi = m_hi < 1.0 ? term(k_hi + 1) / (1.0 - m_hi) : kInf;
    e.tail_bound = lo + hi;
  }
  return e;
}

namespace {

// Walks the quotient ladder R = 2^j with incremental ball integrals,
// invoking visit(j, R, Q); extends while the running sup keeps growing.
template <typename Visit>
void walk_quotient_ladder(const KernelParams& kp, double s, const SigmaView& view,
                          int j_min, int j_max, bool auto_extend, Visit&& visit) {
  const RadialPowers rp = radial_powers(kp, s);
  const double omega = unit_sphere_area(kp.n);
  const double n_over_s = double(kp.n) / s;

  double F = omega * base_integral(rp, std::exp2(double(j_min))).value;
  auto quotient = [&](double R, double Fval) {
    return std::pow(Fval, 1.0 / s) / (view(R) * std::pow(R, n_over_s));
  };

  double sup = 0.0;
  int j = j_min;
  double R = std::exp2(double(j_min));
  {
    const double q = quotient(R, F);
    sup = std::max(sup, q);
    visit(j, R, q);
  }
  int stale = 0;
  constexpr int kGrace = 3;
  constexpr int kHardCap = 240;
  while (j < j_max || (auto_extend && stale < kGrace && j < kHardCap)) {
    const double R_next = 2.0 * R;
    F += omega * shell_integral(rp, R, R_next).value;
    ++j;
    R = R_next;
    const double q = quotient(R, F);
    visit(j, R, q);
    if (q > sup * (1.0 + kLadderSupTol)) {
      sup = q;
      if (j >= j_max) stale = 0;
    } else if (j >= j_max) {
      ++stale;
    }
    if (!std::isfinite(F) || !std::isfinite(q)) break;
  }

  if (!auto_extend) return;
  // downward: fresh base integrals per rung (subtraction would cancel)
  stale = 0;
  j = j_min;
  constexpr int kHardFloor = -120;
  while (stale < kGrace && j > kHardFloor) {
    --j;
    const double Rd = std::exp2(double(j));
    const double Fd = omega * base_integral(rp, Rd).value;
    const double q = quotient(Rd, Fd);
    visit(j, Rd, q);
    if (q > sup * (1.0 + kLadderSupTol))
      sup = q;
    else
      ++stale;
    if (!std::isfinite(q)) break;
  }
}

}  // namespace

KernelNormEstimate morrey_norm_kernel(const KernelParams& kp, double s,
                                      const MorreySecondIndex& second) {
  kp.require_valid();
  if (!(s >= 1.0)) throw std::invalid_argument("morrey_norm_kernel: s >= 1 required");
  const SigmaView view = make_view(kp.n, second);
  const bool classical = view.sigma == nullptr;
  const std::string space = classical ? "Ls,t" : "Ls,sigma";

  const RadialPowers rp = radial_powers(kp, s);
  const QuotientAsymptotics qa = quotient_asymptotics(kp, s, view);
  if (quotient_divergent(rp, qa))
    return divergent_estimate(space, NormMethod::RadialQuadrature);

  KernelNormEstimate e;
  e.space = space;
  e.method = NormMethod::RadialQuadrature;
  e.k_min = 0;
  e.k_max = 0;
  walk_quotient_ladder(kp, s, view, -30, 30, true, [&](int j, double R, double q) {
    (void)R;
    if (q > e.value) {
      e.tail_bound = q - e.value;  // last sup increment, documents saturation
      e.value = q;
    }
    e.k_min = std::min(e.k_min, j);
    e.k_max = std::max(e.k_max, j);
  });
  return e;
}

std::vector<std::pair<double, double>> kernel_quotient_series(
    const KernelParams& kp, double s, const MorreySecondIndex& second, int j_min,
    int j_max) {
  kp.require_valid();
  if (!(s >= 1.0)) throw std::invalid_argument("kernel_quotient_series: s >= 1 required");
  const SigmaView view = make_view(kp.n, second);
  std::vector<std::pair<double, double>> out;
  walk_quotient_ladder(kp, s, view, j_min, j_max, false,
                       [&](int, double R, double q) { out.emplace_back(R, q); });
  return out;
}

Lemma8Check lemma8_hypothesis_check(const KernelParams& kp, double s,
                                    const GrowthFunction& sigma,
                                    const RadiusLadder& ladder) {
  kp.require_valid();
  if (!(s >= 1.0)) throw std::invalid_argument("lemma8_hypothesis_check: s >= 1 required");
  const double As = (kp.alpha - kp.n) * s + kp.n;
  if (!(As > 0.0))
    throw std::invalid_argument(
        "lemma8_hypothesis_check: (alpha-n)s + n > 0 required (K^s not locally integrable)");

  Lemma8Check out;
  const double edge = kp.alpha - kp.n;
  out.holds = sigma.exponent_at_zero() <= edge && sigma.exponent_at_infinity() >= edge;
  for (int j = ladder.j_min; j <= ladder.j_max; ++j) {
    const double R = std::exp2(double(j));
    const double lhs = std::pow(R, As) / As;  // closed-form radial integral
    const double ratio = lhs / (std::pow(sigma(R), s) * std::pow(R, kp.n));
    if (ratio > out.c_best) {
      out.c_best = ratio;
      out.argmax_R = R;
    }
  }
  return out;
}

}  // namespace morrey
