#include "morrey/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "morrey/quadrature.hpp"

namespace morrey {
namespace {

constexpr int kDoublingLadderMin = -20;
constexpr int kDoublingLadderMax = 20;

}  // namespace

GrowthFunction GrowthFunction::power(double c, double beta) {
  if (!(c > 0.0)) throw std::invalid_argument("GrowthFunction::power: c must be > 0");
  GrowthFunction g;
  g.form_ = Form::Power;
  g.c_ = c;
  g.beta_ = beta;
  g.doubling_ = std::exp2(std::abs(beta));
  return g;
}

GrowthFunction GrowthFunction::composite(int n, double t, double t1) {
  if (!(t > 0.0) || !(t1 > t))
    throw std::invalid_argument("GrowthFunction::composite: need 0 < t < t1");
  GrowthFunction g;
  g.form_ = Form::Composite;
  g.a_ = n / t1;
  g.b_ = n / t;
  g.record_doubling();
  return g;
}

GrowthFunction GrowthFunction::tabulated(std::vector<double> r, std::vector<double> phi) {
  if (r.size() != phi.size() || r.size() < 2)
    throw std::invalid_argument("GrowthFunction::tabulated: need >= 2 matching samples");
  GrowthFunction g;
  g.form_ = Form::Tabulated;
  g.log_r_.reserve(r.size());
  g.log_phi_.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !(phi[i] > 0.0))
      throw std::invalid_argument("GrowthFunction::tabulated: samples must be positive");
    if (i > 0 && !(r[i] > r[i - 1]))
      throw std::invalid_argument("GrowthFunction::tabulated: radii must increase");
    g.log_r_.push_back(std::log(r[i]));
    g.log_phi_.push_back(std::log(phi[i]));
  }
  g.record_doubling();
  return g;
}

void GrowthFunction::record_doubling() {
  double worst = 1.0;
  for (int j = kDoublingLadderMin; j < kDoublingLadderMax; ++j) {
    const double r = std::exp2(j);
    const double a = (*this)(r);
    const double b = (*this)(2.0 * r);
    worst = std::max({worst, a / b, b / a});
  }
  doubling_ = worst;
}

double GrowthFunction::operator()(double r) const {
  if (!(r > 0.0)) throw std::domain_error("GrowthFunction: r must be > 0");
  switch (form_) {
    case Form::Power:
      return c_ * std::pow(r, beta_);
    case Form::Composite:
      return (1.0 + std::pow(r, a_)) * std::pow(r, -b_);
    case Form::Tabulated: {
      const double x = std::log(r);
      // log-log linear interpolation, end slopes extrapolate
      std::size_t hi = std::upper_bound(log_r_.begin(), log_r_.end(), x) - log_r_.begin();
      hi = std::clamp<std::size_t>(hi, 1, log_r_.size() - 1);
      const std::size_t lo = hi - 1;
      const double w = (x - log_r_[lo]) / (log_r_[hi] - log_r_[lo]);
      return std::exp(log_phi_[lo] + w * (log_phi_[hi] - log_phi_[lo]));
    }
  }
  throw std::logic_error("GrowthFunction: bad form");
}

double GrowthFunction::exponent_at_zero() const {
  switch (form_) {
    case Form::Power: return beta_;
    case Form::Composite: return -b_;
    case Form::Tabulated:
      return (log_phi_[1] - log_phi_[0]) / (log_r_[1] - log_r_[0]);
  }
  throw std::logic_error("GrowthFunction: bad form");
}

double GrowthFunction::exponent_at_infinity() const {
  switch (form_) {
    case Form::Power: return beta_;
    case Form::Composite: return a_ - b_;
    case Form::Tabulated: {
      const std::size_t k = log_r_.size() - 1;
      return (log_phi_[k] - log_phi_[k - 1]) / (log_r_[k] - log_r_[k - 1]);
    }
  }
  throw std::logic_error("GrowthFunction: bad form");
}

GrowthFunction GrowthFunction::pow(double e) const {
  switch (form_) {
    case Form::Power:
      return power(std::pow(c_, e), beta_ * e);
    case Form::Tabulated: {
      GrowthFunction g = *this;
      for (double& lp : g.log_phi_) lp *= e;
      g.record_doubling();
      return g;
    }
    case Form::Composite:
      throw std::invalid_argument("GrowthFunction::pow: not defined for the composite form");
  }
  throw std::logic_error("GrowthFunction: bad form");
}

double GrowthFunction::power_coefficient() const {
  if (form_ != Form::Power) throw std::logic_error("GrowthFunction: not a power form");
  return c_;
}

double GrowthFunction::power_exponent() const {
  if (form_ != Form::Power) throw std::logic_error("GrowthFunction: not a power form");
  return beta_;
}

nlohmann::json GrowthFunction::to_json() const {
  switch (form_) {
    case Form::Power:
      return {{"form", "power"}, {"c", c_}, {"beta", beta_}};
    case Form::Composite:
      return {{"form", "composite"}, {"a", a_}, {"b", b_}};
    case Form::Tabulated: {
      std::vector<double> r, phi;
      for (std::size_t i = 0; i < log_r_.size(); ++i) {
        r.push_back(std::exp(log_r_[i]));
        phi.push_back(std::exp(log_phi_[i]));
      }
      return {{"form", "tabulated"}, {"r", r}, {"phi", phi}};
    }
  }
  throw std::logic_error("GrowthFunction: bad form");
}

GrowthFunction GrowthFunction::from_json(const nlohmann::json& j) {
  const std::string form = j.at("form").get<std::string>();
  if (form == "power") return power(j.at("c").get<double>(), j.at("beta").get<double>());
  if (form == "composite") {
    // exponents are stored resolved: (1 + r^a) r^{-b}
    GrowthFunction g;
    g.form_ = Form::Composite;
    g.a_ = j.at("a").get<double>();
    g.b_ = j.at("b").get<double>();
    if (!(g.a_ > 0.0) || !(g.b_ > 0.0))
      throw std::invalid_argument("composite growth: exponents must be positive");
    g.record_doubling();
    return g;
  }
  if (form == "tabulated")
    return tabulated(j.at("r").get<std::vector<double>>(),
                     j.at("phi").get<std::vector<double>>());
  throw std::invalid_argument("unknown growth-function form: " + form);
}

GrowthCertification certify_growth(const GrowthFunction& phi, int n, double p,
                                   double r_lo, double r_hi) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo))
    throw std::invalid_argument("certify_growth: need 0 < r_lo < r_hi");
  GrowthCertification cert;
  const double step = std::sqrt(2.0);
  double running_min_phi = std::numeric_limits<double>::infinity();
  double running_min_weighted = running_min_phi;
  const double w_exp = double(n) / p;
  for (double r = r_lo; r <= r_hi * (1.0 + 1e-12); r *= step) {
    const double v = phi(r);
    const double w = std::pow(r, w_exp) * v;
    running_min_phi = std::min(running_min_phi, v);
    running_min_weighted = std::min(running_min_weighted, w);
    cert.decreasing_factor = std::max(cert.decreasing_factor, v / running_min_phi);
    cert.weighted_factor = std::max(cert.weighted_factor, w / running_min_weighted);
  }
  cert.certified = cert.decreasing_factor <= cert.threshold;
  return cert;
}

TailIntegralCheck tail_integral_bounded(const GrowthFunction& phi) {
  TailIntegralCheck out;
  if (phi.form() == GrowthFunction::Form::Power) {
    const double beta = phi.power_exponent();
    out.holds = beta < 0.0;
    out.ratio_bound = out.holds ? 1.0 / -beta : std::numeric_limits<double>::infinity();
    return out;
  }
  if (!(phi.exponent_at_infinity() < 0.0)) {
    out.holds = false;
    out.ratio_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  // tail beyond the ladder estimated from the asymptotic exponent
  const double e_inf = phi.exponent_at_infinity();
  double worst = 0.0;
  for (int j = -10; j <= 10; ++j) {
    const double r = std::exp2(j);
    auto integrand = [&phi](double v) { return phi(v) / v; };
    const double body = integrate_adaptive(integrand, r, std::exp2(12), 1e-10).value;
    const double tail = phi(std::exp2(12)) / -e_inf;
    worst = std::max(worst, (body + tail) / phi(r));
  }
  out.holds = true;
  out.ratio_bound = worst;
  return out;
}

}  // namespace morrey
