#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "doctest.h"
#include "morrey/verify.hpp"
#include "support/oracles.hpp"

using namespace morrey;

namespace {

ExperimentConfig small(const std::string& name) {
  ExperimentConfig cfg = default_experiment_config(name);
  cfg.grid_h = 1.0 / 64.0;
  cfg.grid_L = 2.0;
  return cfg;
}

}  // namespace

TEST_CASE("shipped defaults are admissible") {
  for (const char* name : {"T4", "T5", "T6", "T7", "T9", "T11", "T7-shared",
                           "T9-shared", "T11-shared"}) {
    const ExperimentConfig cfg = default_experiment_config(name);
    CHECK(validate_hypothesis(cfg.hyp).empty());
  }
  CHECK_THROWS_AS(default_experiment_config("T2"), std::invalid_argument);
  // the tri-theorem tuple maps to the same target exponent on both routes
  const ExperimentConfig sh = default_experiment_config("T11-shared");
  CHECK(derived_p2(TheoremId::T7, sh.hyp.kernel, sh.hyp.p1, sh.hyp.beta) ==
        doctest::Approx(9.0).epsilon(1e-12));
  CHECK(derived_p2(TheoremId::T11, sh.hyp.kernel, sh.hyp.p1, sh.hyp.beta) ==
        doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("Young-type experiment passes on the corpus") {
  const VerificationReport rep = verify_lebesgue(small("T4"));
  CHECK(rep.experiment == "T4");
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 8);
  for (const auto& row : rep.rows) {
    CHECK_FALSE(row.degenerate);
    CHECK(row.ratio <= 1.05);
    CHECK(row.ratio > 0.0);
    CHECK(row.kernel_norm == rep.kernel_norm);
  }
  CHECK(rep.c_emp > 0.0);
  CHECK(rep.c_emp <= 1.05);
  // Young's inequality comes with constant 1: the grid should not beat it
  // by much either (sanity against a broken norm that returns ~0)
  CHECK(rep.c_emp > 0.05);
  CHECK(rep.environment.contains("derived_q"));
}

TEST_CASE("report json survives the checked reader and csv writer") {
  const VerificationReport rep = verify_lebesgue(small("T4"));
  const auto j = rep.to_json();
  const VerificationReport back = VerificationReport::from_json_checked(j);
  CHECK(back.c_emp == rep.c_emp);
  CHECK(back.rows.size() == rep.rows.size());
  CHECK(back.to_json() == j);

  auto tampered = j;
  tampered["rows"][0]["ratio"] = tampered["rows"][0]["ratio"].get<double>() * 1.5;
  CHECK_THROWS_AS(VerificationReport::from_json_checked(tampered), std::runtime_error);

  auto cooked = j;
  cooked["c_emp"] = cooked["c_emp"].get<double>() * 2.0;
  CHECK_THROWS_AS(VerificationReport::from_json_checked(cooked), std::runtime_error);

  std::ostringstream csv;
  rep.write_csv(csv);
  const std::string text = csv.str();
  CHECK(text.rfind("id,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}

TEST_CASE("hypothesis violations abort before any computation") {
  ExperimentConfig cfg = small("T4");
  cfg.hyp.t = 2.5;  // outside (2/3, 2)
  CHECK_THROWS_AS(verify_lebesgue(cfg), HypothesisError);
  try {
    verify_lebesgue(cfg);
  } catch (const HypothesisError& e) {
    REQUIRE_FALSE(e.violations.empty());
    CHECK(std::string(e.what()).find("t") != std::string::npos);
  }
}

TEST_CASE("divergent kernel norm aborts the generalized experiment") {
  ExperimentConfig cfg = small("T11");
  cfg.sigma = GrowthFunction::power(1.0, -0.05);  // too flat at the origin
  CHECK_THROWS_AS(verify_gen_morrey(cfg), DivergentNormError);
}

TEST_CASE("classical Morrey experiment") {
  const VerificationReport rep = verify_morrey(small("T5"));
  CHECK(rep.experiment == "T5");
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 8);
  CHECK(std::isfinite(rep.c_emp));
  CHECK(is_set(rep.c_emp_drift));
  CHECK(rep.c_emp_drift < 0.10);
}

TEST_CASE("maximal-operator experiment uses psi = phi and unit kernel norm") {
  const VerificationReport rep = verify_maximal(small("T6"));
  CHECK(rep.experiment == "T6");
  CHECK(rep.pass);
  CHECK(rep.kernel_norm == 1.0);
  CHECK(rep.environment.at("psi_equals_phi") == true);
  for (const auto& row : rep.rows) CHECK(row.ratio > 0.0);
}

TEST_CASE("phi certification gate and its override") {
  ExperimentConfig cfg = small("T6");
  cfg.phi = GrowthFunction::power(1.0, 0.5);  // increasing: fails certification
  CHECK_THROWS_AS(verify_maximal(cfg), HypothesisError);
  cfg.force_phi = true;
  const VerificationReport rep = verify_maximal(cfg);  // runs anyway
  CHECK(rep.rows.size() == 8);
}

TEST_CASE("generalized experiment carries the Hedberg certificate") {
  const VerificationReport rep = verify_gen_morrey(small("T7"));
  CHECK(rep.experiment == "T7");
  CHECK(rep.pass);
  CHECK(std::isfinite(rep.hedberg_c));
  CHECK(rep.hedberg_c > 0.0);
  CHECK(is_set(rep.hedberg_drift));
  CHECK(rep.hedberg_drift < 0.10);
  CHECK(is_set(rep.c_emp_drift));
  CHECK(rep.c_emp_drift < 0.10);
}

TEST_CASE("cross-theorem bound products coincide at the shared tuple") {
  double products[3];
  int i = 0;
  for (const char* name : {"T7-shared", "T9-shared", "T11-shared"}) {
    ExperimentConfig cfg = small(name);
    cfg.with_refinement = false;
    const VerificationReport rep = run_experiment(name, cfg);
    CHECK(rep.pass);
    products[i++] = rep.c_emp * rep.kernel_norm;
  }
  CHECK(products[1] == doctest::Approx(products[0]).epsilon(1e-9));
  CHECK(products[2] == doctest::Approx(products[0]).epsilon(1e-9));
}

TEST_CASE("inclusion chain on the corpus") {
  const ExperimentConfig cfg = small("T4");
  for (const auto& [p, q] :
       {std::pair{1.0, 2.0}, std::pair{1.5, 3.0}, std::pair{2.0, 2.0}}) {
    const InclusionReport rep = verify_inclusion(cfg, p, q);
    CHECK(rep.pass);
    CHECK(rep.rows.size() == 8);
    for (const auto& row : rep.rows) {
      CHECK(row.holds);
      CHECK(row.morrey_pq <= row.holder_1 * (1.0 + 1e-12));
      CHECK(row.morrey_1q <= row.holder_2 * (1.0 + 1e-12));
    }
  }
  CHECK_THROWS_AS(verify_inclusion(cfg, 2.0, 1.5), std::invalid_argument);
}

TEST_CASE("kernel-norm comparison at the concluding-remarks weight") {
  ExperimentConfig cfg = default_experiment_config("T11-shared");
  const CompareReport rep = compare_bounds(cfg, false);
  CHECK(rep.ordering_ok);
  CHECK(rep.norm_sigma.value < rep.norm_classical.value);
  CHECK(rep.norm_classical.value <=
        rep.holder_constant * rep.norm_lebesgue.value * (1.0 + 1e-12));
  CHECK(rep.bound_products.empty());
  // s = 1, t = 1.2 in n = 1: Hoelder constant 2^{1/s - 1/t}
  CHECK(rep.holder_constant ==
        doctest::Approx(std::pow(2.0, 1.0 - 1.0 / 1.2)).epsilon(1e-12));
}

TEST_CASE("experiment config json round trip is a fixpoint") {
  for (const char* name : {"T4", "T6", "T7", "T11-shared"}) {
    ExperimentConfig cfg = small(name);
    const auto j = cfg.to_json();
    const ExperimentConfig back = ExperimentConfig::from_json(j);
    CHECK(back.to_json() == j);
  }
}

TEST_CASE("config echo excludes runtime threading") {
  ExperimentConfig cfg = small("T4");
  cfg.threads = 5;
  CHECK_FALSE(cfg.to_json().contains("threads"));
}

TEST_CASE("reports are bit-identical across thread counts") {
  ExperimentConfig one = small("T7");
  one.threads = 1;
  ExperimentConfig many = small("T7");
  many.threads = 8;
  const std::string a = verify_gen_morrey(one).to_json().dump();
  const std::string b = verify_gen_morrey(many).to_json().dump();
  CHECK(a == b);
}

TEST_CASE("dispatch by experiment name") {
  const VerificationReport rep = run_experiment("T4", small("T4"));
  CHECK(rep.experiment == "T4");
  CHECK_THROWS_AS(run_experiment("T3", small("T4")), std::invalid_argument);
}
