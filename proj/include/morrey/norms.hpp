#pragma once

#include <array>
#include <string>

#include "json.hpp"
#include "morrey/field.hpp"
#include "morrey/growth.hpp"

namespace morrey {

struct NormValue {
  std::string space;  // "Lp", "Lp,q" or "Lp,phi"
  double p = 1.0;
  nlohmann::json q_or_phi;  // number (classical) or growth-function object
  double value = 0.0;
  std::array<double, 3> argmax_center{0, 0, 0};
  double argmax_radius = 0.0;

  nlohmann::json to_json() const;
  static NormValue from_json(const nlohmann::json& j);
};

/// (sum |f|^p h^n)^{1/p} over the whole grid.
NormValue lebesgue_norm_f(const GridFunction& f, double p);

/// Scan layout for the discrete Morrey sup: centres on a stride sublattice
/// per axis (anchored so 0 is included), radii on a geometric ladder from h
/// to 2L. Radii beyond support+|centre| are skipped only when phi * r^{n/p}
/// is non-decreasing on the ladder (they cannot raise the quotient then);
/// otherwise the full ladder is scanned.
struct ScanOptions {
  int stride = 4;
  double ladder_ratio_squared = 2.0;  // rung ratio sqrt(2)
  double r_min = 0.0;                 // 0 -> h
  double r_max = 0.0;                 // 0 -> 2L
  int threads = 0;
};

/// Classical norm: sup over (a, r) of r^{n(1/q-1/p)} (int_B |f|^p)^{1/p}.
/// Computed through the generalized scan with phi = r^{-n/q} (the two forms
/// are algebraically identical), argmax recorded with deterministic
/// tie-breaking (smaller radius, then lexicographic centre).
NormValue morrey_norm(const GridFunction& f, double p, double q,
                      const ScanOptions& opts = {});

/// Generalized norm: sup over (a, r) of (1/phi(r)) (r^{-n} int_B |f|^p)^{1/p}.
NormValue gen_morrey_norm(const GridFunction& f, double p,
                          const GrowthFunction& phi, const ScanOptions& opts = {});

}  // namespace morrey
