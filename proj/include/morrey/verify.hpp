#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "morrey/field.hpp"
#include "morrey/growth.hpp"
#include "morrey/kernel.hpp"
#include "morrey/norms.hpp"
#include "morrey/params.hpp"

namespace morrey {

/// Raised before any computation when validate_hypothesis is non-empty.
struct HypothesisError : std::runtime_error {
  explicit HypothesisError(std::vector<std::string> v);
  std::vector<std::string> violations;
};

/// Raised when a required kernel norm is divergent.
struct DivergentNormError : std::runtime_error {
  explicit DivergentNormError(KernelNormEstimate e);
  KernelNormEstimate estimate;
};

struct Tolerances {
  double young = 0.05;  // verify_lebesgue: ratios <= 1 + young
  double drift = 0.10;  // refinement stability bound on C_emp / C_H
};

/// One experiment instance. An empty corpus selects the default eight
/// functions for the input space. The resolved-config echo embedded in every
/// artifact excludes `threads`: parallelism is a runtime knob and reports are
/// bit-identical across thread counts.
struct ExperimentConfig {
  TheoremHypothesis hyp;
  std::optional<GrowthFunction> phi;    // input-space index (T6, T7, T9, T11)
  std::optional<GrowthFunction> sigma;  // kernel-norm index (T11, compare)
  double grid_h = 0.0;  // 0 -> dimension default
  double grid_L = 0.0;
  std::vector<TestFunctionSpec> corpus;
  Tolerances tol;
  bool force_phi = false;
  bool with_refinement = true;
  int threads = 0;

  Grid make_grid() const;
  nlohmann::json to_json() const;  // config echo (no threads)
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct ReportRow {
  std::string id;
  double input_norm = 0.0;
  double output_norm = 0.0;
  double kernel_norm = 0.0;
  double ratio = 0.0;
  bool degenerate = false;  // zero input: reported, excluded from C_emp
};

struct VerificationReport {
  std::string experiment;  // "T4", "T5", "T6", "T7", "T9", "T11"
  nlohmann::json config;
  std::vector<ReportRow> rows;
  double c_emp = 0.0;
  double c_emp_refined = kUnset;
  double c_emp_drift = kUnset;
  double hedberg_c = kUnset;
  double hedberg_c_refined = kUnset;
  double hedberg_drift = kUnset;
  double kernel_norm = 0.0;
  bool pass = false;
  std::vector<std::string> reasons;  // populated when pass is false
  nlohmann::json environment;

  nlohmann::json to_json() const;
  static VerificationReport from_json_checked(const nlohmann::json& j);
  void write_csv(std::ostream& out) const;
};

/// Theorem-4 (Young) experiment: ratios ||If||_q / (||K||_t ||f||_p) with
/// 1/q + 1 = 1/p + 1/t; pass <=> every non-degenerate ratio <= 1 + tol.young.
VerificationReport verify_lebesgue(const ExperimentConfig& cfg);

/// Theorem-5 experiment on classical Morrey pairs (p1,q1) -> (p2,q2);
/// pass <=> C_emp finite and refinement drift < tol.drift.
VerificationReport verify_morrey(const ExperimentConfig& cfg);

/// Theorem-6 (maximal operator) experiment with psi = phi. The psi = phi
/// reading is flagged in the report metadata.
VerificationReport verify_maximal(const ExperimentConfig& cfg);

/// Theorems 7/9/11: ratios ||If||_{p2,psi} / (KN * ||f||_{p1,phi}) with
/// psi = phi^{p1/p2}; KN is ||K||_{L^t} (T7), ||K||_{L^{s,t}} (T9) or
/// ||K||_{L^{s,sigma}} (T11). Also certifies the pointwise Hedberg bound at
/// every grid point: C_H = max |If(x)| / bound(x). pass <=> C_emp and C_H
/// finite with refinement drift < tol.drift.
VerificationReport verify_gen_morrey(const ExperimentConfig& cfg);

struct InclusionRow {
  std::string id;
  double morrey_pq = 0.0;
  double lebesgue_q = 0.0;
  double holder_1 = 0.0;  // omega_n^{1/p-1/q} * ||f||_q
  double morrey_1q = 0.0;
  double holder_2 = 0.0;  // omega_n^{1-1/p} * ||f||_{p,q}
  bool holds = false;
};

struct InclusionReport {
  double p = 1.0, q = 1.0;
  std::vector<InclusionRow> rows;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Embedding-chain check L^q = L^{q,q} c L^{p,q} c L^{1,q} with the unit-ball
/// Hoelder constants, per corpus function.
InclusionReport verify_inclusion(const ExperimentConfig& cfg, double p, double q);

struct CompareReport {
  KernelNormEstimate norm_sigma;      // ||K||_{L^{s,sigma}}
  KernelNormEstimate norm_classical;  // ||K||_{L^{s,t}}
  KernelNormEstimate norm_lebesgue;   // ||K||_{L^t}
  double holder_constant = 0.0;       // omega_n(ball)^{1/s-1/t}
  bool ordering_ok = false;           // sigma < classical <= c * lebesgue
  std::map<std::string, double> bound_products;  // theorem -> C_emp * KN
  nlohmann::json config;
  nlohmann::json to_json() const;
};

/// Concluding-remarks comparison at sigma(R) = (1+R^{n/t1}) R^{-n/t}, t1 > t.
/// With a corpus, also runs the three generalized experiments at a shared
/// admissible tuple and reports the bound products C_emp * KN.
CompareReport compare_bounds(const ExperimentConfig& cfg, bool run_corpus);

/// Shipped defaults per experiment ("T4".."T11"). The tri-theorem tuple used
/// for the cross-check (p1=1.5, beta=-0.6, t=1.2, s=1, t1=2.4) is exposed as
/// "T7-shared", "T9-shared", "T11-shared".
ExperimentConfig default_experiment_config(const std::string& name);

/// Dispatch on cfg.hyp.theorem (T4/T5/T7/T9/T11) or "T6" via name.
VerificationReport run_experiment(const std::string& name, const ExperimentConfig& cfg);

}  // namespace morrey
