#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "morrey/field.hpp"
#include "morrey/growth.hpp"
#include "morrey/kernel.hpp"
#include "morrey/norms.hpp"
#include "morrey/operators.hpp"
#include "morrey/params.hpp"
#include "morrey/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;
constexpr int kNumeric = 3;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

// growth function: inline JSON, or "power:c,beta" / "composite:n,t,t1" shorthand
morrey::GrowthFunction parse_growth(const std::string& s) {
  if (!s.empty() && s.front() == '{') return morrey::GrowthFunction::from_json(json::parse(s));
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("growth function: expected JSON or form:args, got '" + s + "'");
  const std::string form = s.substr(0, colon);
  std::vector<double> args;
  std::stringstream ss(s.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
  if (form == "power" && args.size() == 2)
    return morrey::GrowthFunction::power(args[0], args[1]);
  if (form == "composite" && args.size() == 3)
    return morrey::GrowthFunction::composite(int(args[0]), args[1], args[2]);
  throw std::invalid_argument("growth function: unknown shorthand '" + s +
                              "' (use power:c,beta or composite:n,t,t1)");
}

struct FieldInput {
  std::string in_path;
  std::string spec_json;
  int n = 1;
  double grid_h = 0.0;
  double grid_L = 0.0;

  // with_dim = false when the subcommand already owns a --n flag; the caller
  // then copies its dimension in before load()
  void add_options(CLI::App* cmd, bool with_dim = true) {
    cmd->add_option("--in", in_path, "input field file (.csv for n=1, binary otherwise)");
    cmd->add_option("--spec", spec_json, "test-function spec as JSON");
    if (with_dim)
      cmd->add_option("--n", n, "dimension for --spec sampling")->check(CLI::Range(1, 3));
    cmd->add_option("--grid-h", grid_h, "grid spacing override");
    cmd->add_option("--grid-L", grid_L, "grid half-width override");
  }

  morrey::GridFunction load() const {
    if (!in_path.empty() && !spec_json.empty())
      throw std::invalid_argument("use either --in or --spec, not both");
    if (!in_path.empty()) {
      if (in_path.size() > 4 && in_path.substr(in_path.size() - 4) == ".csv") {
        std::ifstream in(in_path);
        if (!in) throw std::runtime_error("cannot open: " + in_path);
        return morrey::read_csv(in);
      }
      return morrey::read_binary(in_path);
    }
    if (spec_json.empty())
      throw std::invalid_argument("an input is required: --in FILE or --spec JSON");
    const morrey::Grid def = morrey::default_grid(n);
    const morrey::Grid g(n, grid_h > 0 ? grid_h : def.spacing(),
                         grid_L > 0 ? grid_L : def.extent());
    return morrey::sample(morrey::TestFunctionSpec::from_json(json::parse(spec_json)), g);
  }
};

void write_field(const morrey::GridFunction& f, const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    morrey::write_csv(f, out);
  } else {
    morrey::write_binary(f, path);
  }
}

struct KernelFlags {
  int n = 1;
  double alpha = morrey::kUnset;
  double gamma = morrey::kUnset;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--n", n, "dimension")->check(CLI::Range(1, 3));
    cmd->add_option("--alpha", alpha, "kernel exponent alpha")->required();
    cmd->add_option("--gamma", gamma, "kernel decay gamma (0 = Riesz kernel)")->required();
  }

  morrey::KernelParams params() const {
    morrey::KernelParams kp{n, alpha, gamma};
    const auto v = kp.validate();
    if (!v.empty()) throw morrey::HypothesisError(v);
    return kp;
  }
};

int run_kernel_norm(const KernelFlags& kf, const std::string& space, double t, double s,
                    const std::string& sigma_str, double t1, double dyadic_R,
                    bool lemma8, const std::string& out, bool as_json) {
  const morrey::KernelParams kp = kf.params();
  auto sigma = [&]() -> morrey::GrowthFunction {
    if (!sigma_str.empty()) return parse_growth(sigma_str);
    if (morrey::is_set(t) && morrey::is_set(t1))
      return morrey::GrowthFunction::composite(kp.n, t, t1);
    throw std::invalid_argument("gen-morrey space needs --sigma (or --t with --t1)");
  };

  if (lemma8) {
    if (!morrey::is_set(s)) throw std::invalid_argument("--lemma8 needs --s");
    const morrey::Lemma8Check chk = morrey::lemma8_hypothesis_check(kp, s, sigma());
    json j{{"holds", chk.holds}, {"c_best", chk.c_best}, {"argmax_R", chk.argmax_R}};
    if (as_json)
      std::cout << j.dump() << "\n";
    else
      std::cout << (chk.holds ? "holds" : "fails") << " (c_best=" << chk.c_best
                << " at R=" << chk.argmax_R << ")\n";
    if (!out.empty()) write_json_file(out, j);
    return kOk;
  }

  morrey::KernelNormEstimate est;
  if (space == "lebesgue") {
    if (!morrey::is_set(t)) throw std::invalid_argument("--space lebesgue needs --t");
    est = dyadic_R > 0.0 ? morrey::dyadic_sum_estimate(kp, t, dyadic_R)
                         : morrey::lebesgue_norm(kp, t);
  } else if (space == "morrey") {
    if (!morrey::is_set(s) || !morrey::is_set(t))
      throw std::invalid_argument("--space morrey needs --s and --t");
    est = morrey::morrey_norm_kernel(kp, s, morrey::MorreySecondIndex(t));
  } else if (space == "gen-morrey") {
    if (!morrey::is_set(s)) throw std::invalid_argument("--space gen-morrey needs --s");
    est = morrey::morrey_norm_kernel(kp, s, morrey::MorreySecondIndex(sigma()));
  } else {
    throw std::invalid_argument("unknown --space: " + space);
  }

  if (!out.empty()) {
    json cfgj{{"n", kp.n}, {"alpha", kp.alpha}, {"gamma", kp.gamma}, {"space", space}};
    if (morrey::is_set(t)) cfgj["t"] = t;
    if (morrey::is_set(s)) cfgj["s"] = s;
    if (dyadic_R > 0.0) cfgj["dyadic_R"] = dyadic_R;
    write_json_file(out, json{{"config", cfgj}, {"estimate", est.to_json()}});
  }
  if (as_json)
    std::cout << est.to_json().dump() << "\n";
  else if (est.divergent)
    std::cout << "divergent\n";
  else
    std::cout << est.value << "\n";
  return kOk;
}

int run_apply(const KernelFlags& kf, const FieldInput& input, const std::string& out,
              int threads, std::int64_t split_x, double split_R, bool as_json) {
  const morrey::KernelParams kp = kf.params();
  const morrey::GridFunction f = input.load();

  if (split_x >= 0) {
    const morrey::HedbergSplit sp = morrey::hedberg_split(kp, f, split_x, split_R);
    json j{{"R", sp.R}, {"I1", sp.I1}, {"I2", sp.I2}, {"sum", sp.I1 + sp.I2}};
    std::cout << (as_json ? j.dump() : "I1=" + std::to_string(sp.I1) +
                                           " I2=" + std::to_string(sp.I2))
              << "\n";
    if (!out.empty()) write_json_file(out, j);
    return kOk;
  }

  const morrey::OperatorResult res = morrey::apply_bessel_riesz(kp, f, threads);
  if (!out.empty()) write_field(res.output, out);
  double sup = 0.0;
  for (double v : res.output.values) sup = std::max(sup, std::abs(v));
  json j{{"singular_cell_integral", res.singular_cell_integral},
         {"output_sup", sup},
         {"grid", res.output.grid.to_json()},
         {"config", {{"n", kp.n}, {"alpha", kp.alpha}, {"gamma", kp.gamma}}}};
  std::cout << (as_json ? j.dump()
                        : "applied; sup |If| = " + std::to_string(sup) +
                              ", singular cell = " +
                              std::to_string(res.singular_cell_integral))
            << "\n";
  return kOk;
}

int run_maximal(const FieldInput& input, const std::string& out, int threads,
                bool as_json) {
  const morrey::GridFunction f = input.load();
  const morrey::GridFunction mf = morrey::maximal(f, threads);
  if (!out.empty()) write_field(mf, out);
  double sup = 0.0;
  for (double v : mf.values) sup = std::max(sup, v);
  json j{{"sup", sup}, {"grid", mf.grid.to_json()}};
  std::cout << (as_json ? j.dump() : "maximal computed; sup Mf = " + std::to_string(sup))
            << "\n";
  return kOk;
}

int run_norm(const FieldInput& input, const std::string& space, double p, double q,
             const std::string& phi_str, int threads, const std::string& out,
             bool as_json) {
  const morrey::GridFunction f = input.load();
  morrey::NormValue nv;
  morrey::ScanOptions opts;
  opts.threads = threads;
  if (space == "lebesgue") {
    nv = morrey::lebesgue_norm_f(f, p);
  } else if (space == "morrey") {
    if (!morrey::is_set(q)) throw std::invalid_argument("--space morrey needs --q");
    nv = morrey::morrey_norm(f, p, q, opts);
  } else if (space == "gen-morrey") {
    if (phi_str.empty()) throw std::invalid_argument("--space gen-morrey needs --phi");
    nv = morrey::gen_morrey_norm(f, p, parse_growth(phi_str), opts);
  } else {
    throw std::invalid_argument("unknown --space: " + space);
  }
  if (!out.empty()) write_json_file(out, nv.to_json());
  std::cout << (as_json ? nv.to_json().dump() : std::to_string(nv.value)) << "\n";
  return kOk;
}

int run_verify(const std::string& theorem, const std::string& config_path,
               double grid_h, double grid_L, bool force_phi, bool no_refinement,
               int threads, const std::string& out_dir, bool as_json) {
  morrey::ExperimentConfig cfg;
  std::string name = theorem;
  if (!config_path.empty()) {
    cfg = morrey::ExperimentConfig::from_json(read_json_file(config_path));
    if (name.empty()) name = morrey::to_string(cfg.hyp.theorem);
  } else {
    if (name.empty()) throw std::invalid_argument("verify needs --theorem or --config");
    cfg = morrey::default_experiment_config(name);
  }
  if (grid_h > 0) cfg.grid_h = grid_h;
  if (grid_L > 0) cfg.grid_L = grid_L;
  if (force_phi) cfg.force_phi = true;
  if (no_refinement) cfg.with_refinement = false;
  cfg.threads = threads;

  const morrey::VerificationReport rep = morrey::run_experiment(name, cfg);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_json_file((fs::path(out_dir) / "report.json").string(), rep.to_json());
    std::ofstream csv(fs::path(out_dir) / "report.csv");
    rep.write_csv(csv);
  }
  if (as_json) {
    std::cout << rep.to_json().dump() << "\n";
  } else {
    std::cout << rep.experiment << ": " << (rep.pass ? "PASS" : "FAIL")
              << "  C_emp=" << rep.c_emp << "  kernel_norm=" << rep.kernel_norm;
    if (morrey::is_set(rep.c_emp_drift)) std::cout << "  drift=" << rep.c_emp_drift;
    if (morrey::is_set(rep.hedberg_c)) std::cout << "  C_H=" << rep.hedberg_c;
    std::cout << "\n";
    for (const auto& r : rep.reasons) std::cout << "  reason: " << r << "\n";
  }
  return rep.pass ? kOk : kVerifyFail;
}

int run_compare(const KernelFlags& kf, double s, double t, double t1,
                const std::string& sigma_str, bool with_corpus, int threads,
                const std::string& out_dir, bool as_json) {
  morrey::ExperimentConfig cfg;
  cfg.hyp.kernel = kf.params();
  cfg.hyp.s = s;
  cfg.hyp.t = t;
  cfg.hyp.t1 = t1;
  cfg.threads = threads;
  if (!sigma_str.empty()) cfg.sigma = parse_growth(sigma_str);

  const morrey::CompareReport rep = morrey::compare_bounds(cfg, with_corpus);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_json_file((fs::path(out_dir) / "compare.json").string(), rep.to_json());
    // plot data: Morrey quotients along the radius ladder
    const morrey::GrowthFunction sigma =
        cfg.sigma ? *cfg.sigma : morrey::GrowthFunction::composite(cfg.hyp.kernel.n, t, t1);
    const auto qs = morrey::kernel_quotient_series(cfg.hyp.kernel, s,
                                                   morrey::MorreySecondIndex(sigma), -30, 30);
    const auto qc = morrey::kernel_quotient_series(cfg.hyp.kernel, s,
                                                   morrey::MorreySecondIndex(t), -30, 30);
    std::ofstream csv(fs::path(out_dir) / "quotients.csv");
    csv.precision(17);
    csv << "R,quotient_sigma,quotient_classical\n";
    for (std::size_t i = 0; i < qs.size(); ++i)
      csv << qs[i].first << "," << qs[i].second << "," << qc[i].second << "\n";
  }
  if (as_json) {
    std::cout << rep.to_json().dump() << "\n";
  } else {
    std::cout << "||K||_{Ls,sigma} = " << rep.norm_sigma.value
              << "\n||K||_{Ls,t}     = " << rep.norm_classical.value
              << "\nc * ||K||_{Lt}   = " << rep.holder_constant * rep.norm_lebesgue.value
              << "\nordering " << (rep.ordering_ok ? "holds" : "FAILS") << "\n";
    for (const auto& [k, v] : rep.bound_products)
      std::cout << "bound product " << k << ": " << v << "\n";
  }
  return rep.ordering_ok ? kOk : kVerifyFail;
}

std::vector<double> parse_range(const std::string& s) {
  double lo = 0, hi = 0, step = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
    throw std::invalid_argument("range must be lo:hi:step, got '" + s + "'");
  std::vector<double> out;
  for (double v = lo; v <= hi + 1e-12 * step; v += step) out.push_back(v);
  return out;
}

int run_param_scan(const std::string& theorem, const KernelFlags& kf, double p1,
                   double s, const std::string& beta_range, const std::string& t_range,
                   const std::string& out, bool as_json) {
  morrey::TheoremHypothesis base;
  base.theorem = morrey::theorem_from_string(theorem);
  base.kernel = kf.params();
  base.p1 = p1;
  base.s = s;
  const std::vector<double> betas = parse_range(beta_range);
  const std::vector<double> ts = parse_range(t_range);

  std::ostringstream csv;
  csv.precision(17);
  csv << "beta,t,admissible\n";
  std::int64_t admissible = 0;
  for (double beta : betas)
    for (double t : ts) {
      morrey::TheoremHypothesis h = base;
      h.beta = beta;
      h.t = t;
      const bool ok = morrey::validate_hypothesis(h).empty();
      admissible += ok ? 1 : 0;
      csv << beta << "," << t << "," << (ok ? 1 : 0) << "\n";
    }
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open for writing: " + out);
    f << csv.str();
  } else if (!as_json) {
    std::cout << csv.str();
  }
  if (as_json) {
    json j{{"theorem", theorem},
           {"cells", std::int64_t(betas.size() * ts.size())},
           {"admissible", admissible}};
    std::cout << j.dump() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bessel-Riesz operators on Morrey spaces: norms, operators and experiments"};
  app.require_subcommand(1);
  std::cout.precision(15);

  bool as_json = false;
  int threads = 0;
  app.add_flag("--json", as_json, "machine-readable single-line JSON on stdout");
  app.add_option("--threads", threads, "worker thread cap (0 = auto)");
  app.fallthrough();

  int rc = kOk;

  // kernel-norm
  auto* kn = app.add_subcommand("kernel-norm", "kernel norm in L^t, L^{s,t} or L^{s,sigma}");
  KernelFlags kn_kf;
  kn_kf.add_options(kn);
  std::string kn_space = "lebesgue", kn_sigma, kn_out;
  double kn_t = morrey::kUnset, kn_s = morrey::kUnset, kn_t1 = morrey::kUnset;
  double kn_dyadic = 0.0;
  bool kn_lemma8 = false;
  kn->add_option("--space", kn_space, "lebesgue | morrey | gen-morrey");
  kn->add_option("--t", kn_t, "Lebesgue exponent t");
  kn->add_option("--s", kn_s, "Morrey first exponent s");
  kn->add_option("--t1", kn_t1, "composite sigma second exponent t1");
  kn->add_option("--sigma", kn_sigma, "growth function (JSON or power:c,beta / composite:n,t,t1)");
  kn->add_option("--dyadic-R", kn_dyadic, "use the dyadic-sum estimator anchored at R");
  kn->add_flag("--lemma8", kn_lemma8, "membership check for K in L^{s,sigma}");
  kn->add_option("--out", kn_out, "JSON artifact path");
  kn->callback([&] {
    rc = run_kernel_norm(kn_kf, kn_space, kn_t, kn_s, kn_sigma, kn_t1, kn_dyadic,
                         kn_lemma8, kn_out, as_json);
  });

  // apply
  auto* ap = app.add_subcommand("apply", "convolve a field with the kernel");
  KernelFlags ap_kf;
  ap_kf.add_options(ap);
  FieldInput ap_in;
  ap_in.add_options(ap, false);
  std::string ap_out;
  std::int64_t ap_split_x = -1;
  double ap_split_R = 0.0;
  ap->add_option("--out", ap_out, "output field path (.csv or binary)");
  ap->add_option("--split-x", ap_split_x, "flat point index for the near/far split");
  ap->add_option("--split-R", ap_split_R, "split radius R");
  ap->callback([&] {
    ap_in.n = ap_kf.n;
    rc = run_apply(ap_kf, ap_in, ap_out, threads, ap_split_x, ap_split_R, as_json);
  });

  // maximal
  auto* mx = app.add_subcommand("maximal", "Hardy-Littlewood maximal function");
  FieldInput mx_in;
  mx_in.add_options(mx);
  std::string mx_out;
  mx->add_option("--out", mx_out, "output field path (.csv or binary)");
  mx->callback([&] { rc = run_maximal(mx_in, mx_out, threads, as_json); });

  // norm
  auto* nm = app.add_subcommand("norm", "Lebesgue / Morrey / generalized Morrey norm of a field");
  FieldInput nm_in;
  nm_in.add_options(nm);
  std::string nm_space = "lebesgue", nm_phi, nm_out;
  double nm_p = 1.0, nm_q = morrey::kUnset;
  nm->add_option("--space", nm_space, "lebesgue | morrey | gen-morrey");
  nm->add_option("--p", nm_p, "first exponent p");
  nm->add_option("--q", nm_q, "classical Morrey second exponent q");
  nm->add_option("--phi", nm_phi, "growth function (JSON or shorthand)");
  nm->add_option("--out", nm_out, "JSON artifact path");
  nm->callback([&] {
    rc = run_norm(nm_in, nm_space, nm_p, nm_q, nm_phi, threads, nm_out, as_json);
  });

  // verify
  auto* vf = app.add_subcommand("verify", "run a theorem experiment and write its report");
  std::string vf_theorem, vf_config, vf_out;
  double vf_h = 0.0, vf_L = 0.0;
  bool vf_force = false, vf_norefine = false;
  vf->add_option("--theorem", vf_theorem, "T4 | T5 | T6 | T7 | T9 | T11 (or *-shared)");
  vf->add_option("--config", vf_config, "experiment config JSON file");
  vf->add_option("--grid-h", vf_h, "grid spacing override");
  vf->add_option("--grid-L", vf_L, "grid half-width override");
  vf->add_flag("--force-phi", vf_force, "run despite a failed phi certification");
  vf->add_flag("--no-refinement", vf_norefine, "skip the half-spacing refinement pass");
  vf->add_option("--out", vf_out, "output directory for report.json / report.csv");
  vf->callback([&] {
    rc = run_verify(vf_theorem, vf_config, vf_h, vf_L, vf_force, vf_norefine, threads,
                    vf_out, as_json);
  });

  // compare
  auto* cp = app.add_subcommand("compare", "kernel-norm ordering and bound products");
  KernelFlags cp_kf;
  cp_kf.alpha = 0.5;
  cp_kf.gamma = 1.0;
  cp->add_option("--n", cp_kf.n, "dimension")->check(CLI::Range(1, 3));
  cp->add_option("--alpha", cp_kf.alpha, "kernel exponent alpha");
  cp->add_option("--gamma", cp_kf.gamma, "kernel decay gamma");
  double cp_s = 1.0, cp_t = 1.2, cp_t1 = 2.4;
  std::string cp_sigma, cp_out;
  bool cp_corpus = false;
  cp->add_option("--s", cp_s, "Morrey first exponent s");
  cp->add_option("--t", cp_t, "Lebesgue exponent t");
  cp->add_option("--t1", cp_t1, "sigma second exponent t1 (> t)");
  cp->add_option("--sigma", cp_sigma, "explicit growth function overriding t/t1");
  cp->add_flag("--with-corpus", cp_corpus, "also run the three shared experiments");
  cp->add_option("--out", cp_out, "output directory for compare.json / quotients.csv");
  cp->callback([&] {
    rc = run_compare(cp_kf, cp_s, cp_t, cp_t1, cp_sigma, cp_corpus, threads, cp_out,
                     as_json);
  });

  // param-scan
  auto* ps = app.add_subcommand("param-scan", "admissible-region mask over a (beta, t) box");
  KernelFlags ps_kf;
  ps_kf.alpha = 0.5;
  ps_kf.gamma = 1.0;
  ps->add_option("--n", ps_kf.n, "dimension")->check(CLI::Range(1, 3));
  ps->add_option("--alpha", ps_kf.alpha, "kernel exponent alpha");
  ps->add_option("--gamma", ps_kf.gamma, "kernel decay gamma");
  std::string ps_theorem = "T7", ps_beta = "-1:-0.1:0.05", ps_t = "1.01:1.9:0.05", ps_out;
  double ps_p1 = 2.0, ps_s = morrey::kUnset;
  ps->add_option("--theorem", ps_theorem, "theorem whose hypotheses gate the mask");
  ps->add_option("--p1", ps_p1, "fixed p1");
  ps->add_option("--s", ps_s, "fixed s (T9/T11)");
  ps->add_option("--beta", ps_beta, "beta range lo:hi:step");
  ps->add_option("--t", ps_t, "t range lo:hi:step");
  ps->add_option("--out", ps_out, "CSV mask path (stdout when omitted)");
  ps->callback([&] {
    rc = run_param_scan(ps_theorem, ps_kf, ps_p1, ps_s, ps_beta, ps_t, ps_out, as_json);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const morrey::DivergentNormError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const morrey::HypothesisError& e) {
    for (const auto& v : e.violations) std::cerr << "hypothesis: " << v << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}
