#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "doctest.h"
#include "morrey/field.hpp"
#include "support/oracles.hpp"

using namespace morrey;

TEST_CASE("grid geometry") {
  const Grid g(1, 1.0 / 256.0, 8.0);
  CHECK(g.points_per_axis() == 4097);
  CHECK(g.half() == 2048);
  CHECK(g.size() == 4097);
  CHECK(g.coord(g.half()) == 0.0);
  CHECK(g.coord(0) == doctest::Approx(-8.0));
  CHECK(g.coord(g.points_per_axis() - 1) == doctest::Approx(8.0));

  const Grid g2(2, 0.25, 1.0);
  CHECK(g2.points_per_axis() == 9);
  CHECK(g2.size() == 81);

  CHECK_THROWS_AS(Grid(0, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("flatten and unflatten are inverse") {
  std::mt19937 rng(5);
  for (int n = 1; n <= 3; ++n) {
    const Grid g(n, 0.5, 2.0);
    std::uniform_int_distribution<std::int64_t> dist(0, g.size() - 1);
    for (int i = 0; i < 200; ++i) {
      const std::int64_t flat = dist(rng);
      CHECK(g.flatten(g.unflatten(flat)) == flat);
    }
    // x = 0 sits at the centre index
    std::array<std::int64_t, 3> centre{g.half(), g.half(), g.half()};
    const auto p = g.point(g.flatten(centre));
    for (int a = 0; a < n; ++a) CHECK(p[static_cast<std::size_t>(a)] == 0.0);
  }
}

TEST_CASE("grid json round trip") {
  const Grid g(2, 1.0 / 64.0, 4.0);
  CHECK(Grid::from_json(g.to_json()) == g);
}

TEST_CASE("unit ball indicator: exact ball quadrature") {
  const Grid g(1, 1.0 / 256.0, 8.0);
  TestFunctionSpec spec;
  spec.family = TestFunctionSpec::Family::BallIndicator;
  spec.radius = 1.0;
  const GridFunction f = sample(spec, g);
  CHECK(f.support_radius == doctest::Approx(1.0));
  // edge cells weighted by their exact overlap: 511 h + 2 (h/2) = 2 on the nose
  CHECK(integrate(f, Ball{{0, 0, 0}, 1.0}) == 2.0);
  // plain midpoint rule counts both edge cells fully: one extra h
  CHECK(integrate(f) == doctest::Approx(2.0 + 1.0 / 256.0).epsilon(1e-14));
}

TEST_CASE("ball quadrature in n=2 approaches the area") {
  const Grid g(2, 1.0 / 64.0, 2.0);
  TestFunctionSpec spec;
  spec.family = TestFunctionSpec::Family::BallIndicator;
  spec.radius = 1.0;
  const GridFunction f = sample(spec, g);
  // centre-inclusion counting: Gauss-circle error is O(h)
  CHECK(integrate(f, Ball{{0, 0, 0}, 1.0}) == doctest::Approx(oracle::kPi).epsilon(0.05));
  CHECK(integrate(f) == doctest::Approx(oracle::kPi).epsilon(0.05));
}

TEST_CASE("integration is linear and translation invariant") {
  const Grid g(1, 1.0 / 128.0, 4.0);
  TestFunctionSpec a;
  a.family = TestFunctionSpec::Family::Gaussian;
  a.width = 0.25;
  TestFunctionSpec b = a;
  b.center = {1.5, 0, 0};  // on-grid shift away from the boundary
  const GridFunction fa = sample(a, g);
  const GridFunction fb = sample(b, g);
  CHECK(integrate(fb) == doctest::Approx(integrate(fa)).epsilon(1e-12));

  GridFunction sum = fa;
  for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += 2.0 * fb.values[i];
  CHECK(integrate(sum) ==
        doctest::Approx(integrate(fa) + 2.0 * integrate(fb)).epsilon(1e-12));
}

TEST_CASE("refinement converges for a smooth integrand") {
  TestFunctionSpec spec;
  spec.family = TestFunctionSpec::Family::Gaussian;
  spec.width = 0.5;
  const double coarse = integrate(sample(spec, Grid(1, 1.0 / 64.0, 8.0)));
  const double fine = integrate(sample(spec, Grid(1, 1.0 / 128.0, 8.0)));
  // Int exp(-x^2/w^2) = w sqrt(pi)
  const double exact = 0.5 * std::sqrt(oracle::kPi);
  CHECK(fine == doctest::Approx(exact).epsilon(1e-10));
  CHECK(std::abs(fine - exact) <= std::abs(coarse - exact) + 1e-12);
}

TEST_CASE("integrate_abs_pow matches integrate on an indicator") {
  const Grid g(1, 1.0 / 256.0, 8.0);
  TestFunctionSpec spec;
  spec.family = TestFunctionSpec::Family::BallIndicator;
  spec.radius = 1.0;
  const GridFunction f = sample(spec, g);
  // |chi|^p = chi for every p
  CHECK(integrate_abs_pow(f, 2.0, Ball{{0, 0, 0}, 1.0}) == 2.0);
  CHECK(integrate_abs_pow(f, 1.5, Ball{{0.5, 0, 0}, 0.25}) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("test function families evaluate as documented") {
  const double h = 1.0 / 64.0;

  TestFunctionSpec bump;
  bump.family = TestFunctionSpec::Family::PowerBump;
  bump.radius = 1.0;
  bump.exponent = -0.5;
  const double x1[1] = {0.25};
  CHECK(bump.evaluate(x1, h) == doctest::Approx(std::pow(0.25, -0.5)));
  const double x_in[1] = {h / 4.0};  // below the clip radius
  CHECK(bump.evaluate(x_in, h) == doctest::Approx(std::pow(h, -0.5)));
  const double x_out[1] = {1.5};
  CHECK(bump.evaluate(x_out, h) == 0.0);

  TestFunctionSpec gauss;
  gauss.family = TestFunctionSpec::Family::Gaussian;
  gauss.width = 0.5;
  const double g1[1] = {0.7};
  CHECK(gauss.evaluate(g1, h) == doctest::Approx(std::exp(-0.49 / 0.25)));
  const double g_far[1] = {3.6};  // beyond 7 widths
  CHECK(gauss.evaluate(g_far, h) == 0.0);
  CHECK(gauss.support_radius(1) == doctest::Approx(3.5));

  TestFunctionSpec steps;
  steps.family = TestFunctionSpec::Family::StepSum;
  steps.steps = {{{-1.0, 0, 0}, 0.5, 2.0}, {{0.5, 0, 0}, 0.25, 1.0}};
  const double s1[1] = {-0.75};
  CHECK(steps.evaluate(s1, h) == 2.0);
  const double s2[1] = {0.5};
  CHECK(steps.evaluate(s2, h) == 1.0);
  const double s3[1] = {0.0};
  CHECK(steps.evaluate(s3, h) == 0.0);
  CHECK(steps.support_radius(1) == doctest::Approx(1.5));
}

TEST_CASE("sampling rejects support beyond the grid") {
  TestFunctionSpec spec;
  spec.family = TestFunctionSpec::Family::BallIndicator;
  spec.center = {7.5, 0, 0};
  spec.radius = 1.0;  // support reaches 8.5 > L = 8
  CHECK_THROWS_AS(sample(spec, Grid(1, 1.0 / 256.0, 8.0)), std::invalid_argument);
}

TEST_CASE("spec json round trip emits only family fields") {
  TestFunctionSpec spec;
  spec.family = TestFunctionSpec::Family::Gaussian;
  spec.id = "g";
  spec.width = 0.25;
  const auto j = spec.to_json();
  CHECK(j.contains("width"));
  CHECK_FALSE(j.contains("radius"));
  CHECK_FALSE(j.contains("steps"));
  const TestFunctionSpec back = TestFunctionSpec::from_json(j);
  CHECK(back.family == spec.family);
  CHECK(back.width == spec.width);
  CHECK(back.to_json() == j);
}

TEST_CASE("binary round trip is bitwise") {
  const Grid g(2, 1.0 / 32.0, 1.0);
  GridFunction f{g, std::vector<double>(static_cast<std::size_t>(g.size())), 0.9};
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (auto& v : f.values) v = dist(rng);

  const std::string path = "field_roundtrip.bin";
  write_binary(f, path);
  const GridFunction back = read_binary(path);
  std::remove(path.c_str());

  CHECK(back.grid == f.grid);
  REQUIRE(back.values.size() == f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
}

TEST_CASE("csv round trip is bitwise in n=1") {
  const Grid g(1, 1.0 / 128.0, 2.0);
  TestFunctionSpec spec;
  spec.family = TestFunctionSpec::Family::Gaussian;
  spec.width = 0.25;
  const GridFunction f = sample(spec, g);

  std::stringstream ss;
  write_csv(f, ss);
  const GridFunction back = read_csv(ss);
  CHECK(back.grid == f.grid);
  REQUIRE(back.values.size() == f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
}

TEST_CASE("computed support radius") {
  const Grid g(1, 0.25, 2.0);
  GridFunction f{g, std::vector<double>(static_cast<std::size_t>(g.size()), 0.0), 0.0};
  CHECK(computed_support_radius(f) == 0.0);
  f.values[static_cast<std::size_t>(g.half() + 3)] = 1.0;  // x = 0.75
  CHECK(computed_support_radius(f) == doctest::Approx(0.75));
}

TEST_CASE("default corpus is sampleable and diverse") {
  for (int n = 1; n <= 2; ++n) {
    const Grid g = default_grid(n);
    const auto corpus = default_corpus(n, g.extent(), -0.5);
    CHECK(corpus.size() == 8);
    bool fam[4] = {false, false, false, false};
    for (const auto& spec : corpus) {
      CHECK_FALSE(spec.id.empty());
      fam[int(spec.family)] = true;
      const GridFunction f = sample(spec, g);  // must not throw
      double mass = 0.0;
      for (double v : f.values) mass += std::abs(v);
      CHECK(mass > 0.0);
    }
    for (bool seen : fam) CHECK(seen);
    for (std::size_t i = 0; i < corpus.size(); ++i)
      for (std::size_t j = i + 1; j < corpus.size(); ++j)
        CHECK(corpus[i].id != corpus[j].id);
  }
}
