#include "morrey/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace morrey {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check(std::vector<std::string>& out, bool ok, const std::string& what) {
  if (!ok) out.push_back(what);
}

}  // namespace

KernelParams KernelParams::bessel_riesz(int n, double alpha, double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("bessel_riesz: gamma must be > 0 (use riesz() for gamma = 0)");
  KernelParams kp{n, alpha, gamma};
  kp.require_valid();
  return kp;
}

KernelParams KernelParams::riesz(int n, double alpha) {
  KernelParams kp{n, alpha, 0.0};
  kp.require_valid();
  return kp;
}

std::vector<std::string> KernelParams::validate() const {
  std::vector<std::string> v;
  check(v, n >= 1 && n <= 3, "1 <= n <= 3 violated (n=" + std::to_string(n) + ")");
  check(v, alpha > 0.0 && alpha < n,
        "0 < alpha < n violated (alpha=" + fmt(alpha) + ", n=" + std::to_string(n) + ")");
  check(v, gamma >= 0.0, "gamma >= 0 violated (gamma=" + fmt(gamma) + ")");
  return v;
}

void KernelParams::require_valid() const {
  auto v = validate();
  if (!v.empty()) throw std::invalid_argument("KernelParams: " + v.front());
}

LebesgueExponent::LebesgueExponent(double t_) : t(t_) {
  if (!(t >= 1.0))  // +inf passes
    throw std::invalid_argument("LebesgueExponent: t >= 1 required (t=" + fmt(t) + ")");
}

double LebesgueExponent::conjugate() const {
  if (std::isinf(t)) return 1.0;
  if (t == 1.0) return std::numeric_limits<double>::infinity();
  return t / (t - 1.0);
}

MorreyExponents::MorreyExponents(double p_, double q_) : p(p_), q(q_) {
  if (!(p >= 1.0) || !(q >= p))
    throw std::invalid_argument("MorreyExponents: 1 <= p <= q required (p=" + fmt(p) +
                                ", q=" + fmt(q) + ")");
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T4: return "T4";
    case TheoremId::T5: return "T5";
    case TheoremId::T6: return "T6";
    case TheoremId::T7: return "T7";
    case TheoremId::T9: return "T9";
    case TheoremId::T11: return "T11";
  }
  return "T?";
}

TheoremId theorem_from_string(const std::string& s) {
  if (s == "T4") return TheoremId::T4;
  if (s == "T5") return TheoremId::T5;
  if (s == "T6") return TheoremId::T6;
  if (s == "T7") return TheoremId::T7;
  if (s == "T9") return TheoremId::T9;
  if (s == "T11") return TheoremId::T11;
  throw std::invalid_argument("unknown theorem id: " + s);
}

nlohmann::json TheoremHypothesis::to_json() const {
  nlohmann::json j{{"theorem", to_string(theorem)},
                   {"n", kernel.n},
                   {"alpha", kernel.alpha},
                   {"gamma", kernel.gamma}};
  auto put = [&j](const char* key, double v) {
    if (is_set(v)) j[key] = v;
  };
  put("p1", p1);
  put("q1", q1);
  put("t", t);
  put("s", s);
  put("beta", beta);
  put("t1", t1);
  return j;
}

TheoremHypothesis TheoremHypothesis::from_json(const nlohmann::json& j) {
  TheoremHypothesis h;
  h.theorem = theorem_from_string(j.at("theorem").get<std::string>());
  h.kernel.n = j.at("n").get<int>();
  h.kernel.alpha = j.at("alpha").get<double>();
  h.kernel.gamma = j.at("gamma").get<double>();
  auto get = [&j](const char* key) {
    return j.contains(key) ? j.at(key).get<double>() : kUnset;
  };
  h.p1 = get("p1");
  h.q1 = get("q1");
  h.t = get("t");
  h.s = get("s");
  h.beta = get("beta");
  h.t1 = get("t1");
  return h;
}

std::pair<double, double> admissible_t_interval(const KernelParams& kp) {
  kp.require_valid();
  if (kp.gamma == 0.0)
    throw std::invalid_argument(
        "admissible_t_interval: the Riesz kernel (gamma = 0) lies in no Lebesgue space");
  const double n = kp.n;
  return {n / (n + kp.gamma - kp.alpha), n / (n - kp.alpha)};
}

double derived_p2(TheoremId theorem, const KernelParams& kp, double p1, double beta) {
  double denom;
  switch (theorem) {
    case TheoremId::T7:
    case TheoremId::T9:
      denom = kp.alpha + beta;
      break;
    case TheoremId::T11:
      denom = beta + kp.n - kp.alpha;
      break;
    default:
      throw std::invalid_argument("derived_p2: defined for T7, T9 and T11 only");
  }
  if (!(denom < 0.0))
    throw std::invalid_argument("derived_p2: hypothesis requires a negative denominator");
  return beta * p1 / denom;
}

std::vector<std::string> validate_hypothesis(const TheoremHypothesis& h) {
  std::vector<std::string> v = h.kernel.validate();
  if (!v.empty()) return v;

  const double n = h.kernel.n;
  const double alpha = h.kernel.alpha;

  auto need = [&v](double value, const char* name) {
    if (!is_set(value)) {
      v.push_back(std::string(name) + " required but unset");
      return false;
    }
    return true;
  };
  auto t_in_interval = [&] {
    if (!need(h.t, "t")) return;
    check(v, h.t >= 1.0, "t >= 1 violated (t=" + fmt(h.t) + ")");
    auto [lo, hi] = admissible_t_interval(h.kernel);
    check(v, h.t > lo && h.t < hi,
          "n/(n+gamma-alpha) < t < n/(n-alpha) violated (t=" + fmt(h.t) + ", interval=(" +
              fmt(lo) + ", " + fmt(hi) + "))");
  };
  auto t_conj = [&] { return LebesgueExponent(h.t).conjugate(); };

  switch (h.theorem) {
    case TheoremId::T4: {
      if (h.kernel.gamma == 0.0) {
        v.push_back("gamma > 0 violated (gamma=0: no admissible t exists)");
        break;
      }
      t_in_interval();
      if (v.empty() && is_set(h.p1))
        check(v, h.p1 >= 1.0 && h.p1 < t_conj(),
              "1 <= p1 < t' violated (p1=" + fmt(h.p1) + ", t'=" + fmt(t_conj()) + ")");
      break;
    }
    case TheoremId::T5: {
      if (h.kernel.gamma == 0.0) {
        v.push_back("gamma > 0 violated (gamma=0: no admissible t exists)");
        break;
      }
      t_in_interval();
      if (!need(h.p1, "p1") || !need(h.q1, "q1") || !v.empty()) break;
      const double tc = t_conj();
      check(v, h.p1 > 1.0, "p1 > 1 violated (p1=" + fmt(h.p1) + ")");
      check(v, h.q1 > h.p1, "q1 > p1 violated (q1=" + fmt(h.q1) + ", p1=" + fmt(h.p1) + ")");
      check(v, h.q1 < tc, "q1 < t' violated (q1=" + fmt(h.q1) + ", t'=" + fmt(tc) + ")");
      break;
    }
    case TheoremId::T6: {
      // maximal operator: no kernel, no t; p1 > 1 is the whole hypothesis
      if (need(h.p1, "p1"))
        check(v, h.p1 > 1.0, "p1 > 1 violated (p1=" + fmt(h.p1) + ")");
      break;
    }
    case TheoremId::T7:
    case TheoremId::T9: {
      if (h.kernel.gamma == 0.0) {
        v.push_back("gamma > 0 violated (gamma=0: no admissible t exists)");
        break;
      }
      t_in_interval();
      if (!need(h.p1, "p1") || !need(h.beta, "beta") || !v.empty()) break;
      const double tc = t_conj();
      check(v, h.p1 > 1.0 && h.p1 < tc,
            "1 < p1 < t' violated (p1=" + fmt(h.p1) + ", t'=" + fmt(tc) + ")");
      check(v, h.beta < -alpha,
            "beta < -alpha violated (beta=" + fmt(h.beta) + ", -alpha=" + fmt(-alpha) + ")");
      check(v, h.beta >= -alpha * tc / h.p1,
            "beta >= -alpha*t'/p1 violated (beta=" + fmt(h.beta) +
                ", -alpha*t'/p1=" + fmt(-alpha * tc / h.p1) + ")");
      if (h.theorem == TheoremId::T9 && need(h.s, "s"))
        check(v, h.s >= 1.0 && h.s <= h.t,
              "1 <= s <= t violated (s=" + fmt(h.s) + ", t=" + fmt(h.t) + ")");
      break;
    }
    case TheoremId::T11: {
      if (!need(h.p1, "p1") || !need(h.beta, "beta") || !need(h.s, "s")) break;
      check(v, h.p1 > 1.0 && h.p1 < n / alpha,
            "1 < p1 < n/alpha violated (p1=" + fmt(h.p1) + ", n/alpha=" + fmt(n / alpha) + ")");
      check(v, h.beta < -alpha,
            "beta < -alpha violated (beta=" + fmt(h.beta) + ", -alpha=" + fmt(-alpha) + ")");
      check(v, h.beta > -n / h.p1,
            "beta > -n/p1 violated (beta=" + fmt(h.beta) + ", -n/p1=" + fmt(-n / h.p1) + ")");
      check(v, h.s >= 1.0 && h.s < n / (n - alpha),
            "1 <= s < n/(n-alpha) violated (s=" + fmt(h.s) +
                ", n/(n-alpha)=" + fmt(n / (n - alpha)) + ")");
      break;
    }
  }
  return v;
}

}  // namespace morrey
