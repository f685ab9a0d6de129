#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "morrey/growth.hpp"
#include "morrey/params.hpp"
#include "support/oracles.hpp"

using namespace morrey;

TEST_CASE("kernel parameter validation") {
  CHECK(KernelParams{1, 0.5, 1.0}.validate().empty());
  CHECK(KernelParams{3, 2.9, 0.0}.validate().empty());  // explicit Riesz
  CHECK_FALSE(KernelParams{0, 0.5, 1.0}.validate().empty());
  CHECK_FALSE(KernelParams{4, 0.5, 1.0}.validate().empty());
  CHECK_FALSE(KernelParams{1, 0.0, 1.0}.validate().empty());   // alpha > 0
  CHECK_FALSE(KernelParams{1, 1.0, 1.0}.validate().empty());   // alpha < n
  CHECK_FALSE(KernelParams{1, 0.5, -0.1}.validate().empty());  // gamma >= 0
  CHECK_THROWS_AS((KernelParams{1, 2.0, 1.0}.require_valid()), std::invalid_argument);
}

TEST_CASE("conjugate exponent") {
  CHECK(LebesgueExponent(2.0).conjugate() == doctest::Approx(2.0));
  CHECK(std::isinf(LebesgueExponent(1.0).conjugate()));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(1.01, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double t = dist(rng);
    const double tc = LebesgueExponent(t).conjugate();
    CHECK(1.0 / t + 1.0 / tc == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("admissible t interval") {
  // oracle: (n/(n+gamma-alpha), n/(n-alpha)) computed here from scratch
  const auto [lo, hi] = admissible_t_interval(KernelParams{1, 0.5, 1.0});
  CHECK(lo == doctest::Approx(1.0 / 1.5).epsilon(1e-15));
  CHECK(hi == doctest::Approx(2.0).epsilon(1e-15));
  const auto [lo2, hi2] = admissible_t_interval(KernelParams{2, 1.2, 2.0});
  CHECK(lo2 == doctest::Approx(2.0 / 2.8).epsilon(1e-15));
  CHECK(hi2 == doctest::Approx(2.0 / 0.8).epsilon(1e-15));
  CHECK_THROWS_AS(admissible_t_interval(KernelParams{1, 0.5, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("derived target exponent") {
  const KernelParams kp{1, 0.5, 1.0};
  // beta p1 / (alpha + beta) resp. beta p1 / (beta + n - alpha), by hand
  CHECK(derived_p2(TheoremId::T7, kp, 2.0, -0.75) == doctest::Approx(6.0));
  CHECK(derived_p2(TheoremId::T9, kp, 2.0, -0.75) == doctest::Approx(6.0));
  CHECK(derived_p2(TheoremId::T11, kp, 1.5, -0.6) == doctest::Approx(9.0));
  // alpha = n/2 makes the two formulas coincide
  CHECK(derived_p2(TheoremId::T7, kp, 1.5, -0.6) == doctest::Approx(9.0));
  CHECK_THROWS_AS(derived_p2(TheoremId::T7, kp, 2.0, -0.4), std::invalid_argument);
  CHECK_THROWS_AS(derived_p2(TheoremId::T4, kp, 2.0, -0.75), std::invalid_argument);
}

TEST_CASE("theorem id round trip") {
  for (auto id : {TheoremId::T4, TheoremId::T5, TheoremId::T6, TheoremId::T7,
                  TheoremId::T9, TheoremId::T11})
    CHECK(theorem_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(theorem_from_string("T8"), std::invalid_argument);
}

namespace {

TheoremHypothesis shared_tuple(TheoremId id) {
  TheoremHypothesis h;
  h.theorem = id;
  h.kernel = KernelParams{1, 0.5, 1.0};
  h.p1 = 1.5;
  h.beta = -0.6;
  h.t = 1.2;
  h.s = 1.0;
  h.t1 = 2.4;
  return h;
}

}  // namespace

TEST_CASE("hypothesis validation accepts the shared tuple everywhere") {
  for (auto id : {TheoremId::T7, TheoremId::T9, TheoremId::T11})
    CHECK(validate_hypothesis(shared_tuple(id)).empty());
}

TEST_CASE("hypothesis validation names each violated inequality") {
  auto violated = [](const TheoremHypothesis& h, const char* needle) {
    for (const auto& msg : validate_hypothesis(h))
      if (msg.find(needle) != std::string::npos) return true;
    return false;
  };

  TheoremHypothesis h = shared_tuple(TheoremId::T7);
  h.t = 2.5;  // above n/(n-alpha) = 2
  CHECK(violated(h, "n/(n+gamma-alpha) < t"));

  h = shared_tuple(TheoremId::T7);
  h.p1 = 1.0;
  CHECK(violated(h, "1 < p1"));

  h = shared_tuple(TheoremId::T7);
  h.beta = -0.4;  // needs beta < -alpha = -0.5
  CHECK(violated(h, "beta < -alpha"));

  h = shared_tuple(TheoremId::T7);
  h.beta = -2.5;  // below -alpha t'/p1 = -2
  CHECK(violated(h, "beta >= -alpha*t'/p1"));

  h = shared_tuple(TheoremId::T9);
  h.s = 1.4;  // above t
  CHECK(violated(h, "1 <= s <= t"));

  h = shared_tuple(TheoremId::T11);
  h.beta = -0.7;  // below -n/p1 = -2/3
  CHECK(violated(h, "beta > -n/p1"));

  h = shared_tuple(TheoremId::T11);
  h.s = 2.0;  // needs s < n/(n-alpha) = 2
  CHECK(violated(h, "s < n/(n-alpha)"));

  h = shared_tuple(TheoremId::T7);
  h.t = kUnset;
  CHECK(violated(h, "t required"));

  TheoremHypothesis t4;
  t4.theorem = TheoremId::T4;
  t4.kernel = KernelParams{1, 0.5, 0.0};
  t4.t = 1.2;
  CHECK(violated(t4, "gamma > 0"));

  TheoremHypothesis t6;
  t6.theorem = TheoremId::T6;
  t6.p1 = 2.0;
  CHECK(validate_hypothesis(t6).empty());
  t6.p1 = 1.0;
  CHECK(violated(t6, "p1 > 1"));
}

TEST_CASE("hypothesis json round trip") {
  TheoremHypothesis h = shared_tuple(TheoremId::T11);
  const TheoremHypothesis back = TheoremHypothesis::from_json(h.to_json());
  CHECK(back.theorem == h.theorem);
  CHECK(back.kernel.n == h.kernel.n);
  CHECK(back.kernel.alpha == h.kernel.alpha);
  CHECK(back.p1 == h.p1);
  CHECK(back.beta == h.beta);
  CHECK(back.t1 == h.t1);
  CHECK_FALSE(is_set(back.q1));
  CHECK(back.to_json() == h.to_json());
}

TEST_CASE("power growth function") {
  const GrowthFunction phi = GrowthFunction::power(2.0, -0.75);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(1e-6, 1e6);
  for (int i = 0; i < 100; ++i) {
    const double r = dist(rng);
    CHECK(phi(r) == doctest::Approx(2.0 * std::pow(r, -0.75)).epsilon(1e-14));
  }
  CHECK(phi.exponent_at_zero() == doctest::Approx(-0.75));
  CHECK(phi.exponent_at_infinity() == doctest::Approx(-0.75));
  // phi(2r)/phi(r) = 2^beta exactly, constant in r
  CHECK(phi.doubling_constant() == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-12));
  const GrowthFunction sq = phi.pow(0.5);
  CHECK(sq.power_exponent() == doctest::Approx(-0.375));
  CHECK(sq(4.0) == doctest::Approx(std::sqrt(phi(4.0))).epsilon(1e-13));
  CHECK_THROWS_AS(phi(0.0), std::domain_error);
  CHECK_THROWS_AS(GrowthFunction::power(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("composite growth function") {
  const int n = 1;
  const double t = 1.2, t1 = 2.4;
  const GrowthFunction sigma = GrowthFunction::composite(n, t, t1);
  for (double r : {0.01, 0.5, 1.0, 7.0, 300.0})
    CHECK(sigma(r) ==
          doctest::Approx((1.0 + std::pow(r, n / t1)) * std::pow(r, -double(n) / t))
              .epsilon(1e-14));
  CHECK(sigma.exponent_at_zero() == doctest::Approx(-1.0 / 1.2));
  CHECK(sigma.exponent_at_infinity() == doctest::Approx(1.0 / 2.4 - 1.0 / 1.2));
  CHECK(sigma.doubling_constant() > 1.0);
  CHECK(sigma.doubling_constant() <= std::pow(2.0, 1.0 / 1.2) * (1.0 + 1e-9));
}

TEST_CASE("tabulated growth interpolates power data exactly in log-log") {
  std::vector<double> r, v;
  for (int k = -8; k <= 8; ++k) {
    r.push_back(std::exp2(double(k)));
    v.push_back(3.0 * std::pow(r.back(), -0.4));
  }
  const GrowthFunction tab = GrowthFunction::tabulated(r, v);
  // log-log linear interpolation reproduces a pure power everywhere,
  // including between the samples and beyond the ends
  for (double x : {0.001, 0.0203, 0.7, 1.0, 5.31, 200.0, 1000.0})
    CHECK(tab(x) == doctest::Approx(3.0 * std::pow(x, -0.4)).epsilon(1e-12));
  CHECK(tab.exponent_at_zero() == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(tab.exponent_at_infinity() == doctest::Approx(-0.4).epsilon(1e-12));
  const GrowthFunction tp = tab.pow(2.0);
  CHECK(tp(0.7) == doctest::Approx(std::pow(tab(0.7), 2.0)).epsilon(1e-12));
}

TEST_CASE("growth json round trip") {
  for (const GrowthFunction& g :
       {GrowthFunction::power(1.5, -0.6), GrowthFunction::composite(2, 1.3, 2.6),
        GrowthFunction::tabulated({0.5, 1.0, 2.0}, {2.0, 1.0, 0.7})}) {
    const GrowthFunction back = GrowthFunction::from_json(g.to_json());
    CHECK(back.form() == g.form());
    for (double x : {0.3, 1.0, 3.7}) CHECK(back(x) == doctest::Approx(g(x)).epsilon(1e-14));
    CHECK(back.to_json() == g.to_json());
  }
}

TEST_CASE("growth certification") {
  // decreasing power: never increases, factor 1
  const auto dec = certify_growth(GrowthFunction::power(1.0, -0.5), 1, 2.0, 1e-3, 16.0);
  CHECK(dec.certified);
  CHECK(dec.decreasing_factor == doctest::Approx(1.0));
  // weighted exponent n/p - 0.5 = 0 here: weighted factor stays 1 too
  CHECK(dec.weighted_factor == doctest::Approx(1.0));

  // increasing power blows past the factor-2 threshold on a wide ladder
  const auto inc = certify_growth(GrowthFunction::power(1.0, 0.5), 1, 2.0, 1e-3, 16.0);
  CHECK_FALSE(inc.certified);
  CHECK(inc.decreasing_factor > 2.0);

  CHECK_THROWS_AS(certify_growth(GrowthFunction::power(1.0, -0.5), 1, 2.0, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("tail integral condition") {
  // power r^beta: Int_r^inf v^{beta-1} dv = r^beta / (-beta), ratio 1/(-beta)
  const auto ok = tail_integral_bounded(GrowthFunction::power(1.0, -0.5));
  CHECK(ok.holds);
  CHECK(ok.ratio_bound == doctest::Approx(2.0));
  const auto bad = tail_integral_bounded(GrowthFunction::power(1.0, 0.25));
  CHECK_FALSE(bad.holds);

  // composite decays like r^{n/t1 - n/t} at infinity: integrable tail
  const auto comp = tail_integral_bounded(GrowthFunction::composite(1, 1.2, 2.4));
  CHECK(comp.holds);
  CHECK(comp.ratio_bound > 0.0);
  CHECK(std::isfinite(comp.ratio_bound));
}
