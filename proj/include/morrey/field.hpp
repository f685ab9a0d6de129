#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace morrey {

/// Uniform grid on [-L, L]^n with odd points per axis so x = 0 is a node.
/// Points per axis m = 2*floor(L/h) + 1; coordinate of index i is (i-half)*h.
class Grid {
 public:
  Grid(int n, double h, double extent);

  int dim() const { return n_; }
  double spacing() const { return h_; }
  double extent() const { return extent_; }
  std::int64_t points_per_axis() const { return m_; }
  std::int64_t half() const { return half_; }
  std::int64_t size() const;  // m^n

  double coord(std::int64_t axis_index) const { return double(axis_index - half_) * h_; }
  std::array<std::int64_t, 3> unflatten(std::int64_t flat) const;
  std::int64_t flatten(const std::array<std::int64_t, 3>& idx) const;
  std::array<double, 3> point(std::int64_t flat) const;

  bool operator==(const Grid&) const = default;

  nlohmann::json to_json() const;
  static Grid from_json(const nlohmann::json& j);

 private:
  int n_;
  double h_, extent_;
  std::int64_t half_, m_;
};

/// Sampled scalar field. support_radius is the declared radius around the
/// origin outside which the generator vanishes; sample() enforces that it
/// fits the grid. Operator outputs are grid-restricted fields and may carry
/// support up to the grid diagonal.
struct GridFunction {
  Grid grid;
  std::vector<double> values;
  double support_radius = 0.0;
};

struct BallSpec {
  std::array<double, 3> center{0, 0, 0};
  double radius = 0.0;
  double amplitude = 1.0;
};

/// Closed-form test-function families. Ball indicators are closed-ball;
/// power bumps |x|^e are clipped below |x| = h to their value at h; gaussians
/// are peak-normalised and truncated at 7 widths (value ~ 5e-22).
struct TestFunctionSpec {
  enum class Family { BallIndicator, PowerBump, Gaussian, StepSum };

  Family family = Family::BallIndicator;
  std::string id;
  std::array<double, 3> center{0, 0, 0};
  double radius = 1.0;    // ball / bump support radius
  double exponent = 0.0;  // power bump
  double width = 1.0;     // gaussian
  std::vector<BallSpec> steps;

  double support_radius(int n) const;
  double evaluate(std::span<const double> x, double clip_radius) const;

  nlohmann::json to_json() const;
  static TestFunctionSpec from_json(const nlohmann::json& j);
};

/// Pointwise sampling; throws if the declared support exceeds the grid extent.
GridFunction sample(const TestFunctionSpec& spec, const Grid& grid);

struct Ball {
  std::array<double, 3> center{0, 0, 0};
  double radius = 0.0;
};

/// Midpoint rule: sum of values * h^n. Over a ball, n=1 weights the two edge
/// cells by their exact interval overlap; n >= 2 uses centre-inclusion.
double integrate(const GridFunction& f);
double integrate(const GridFunction& f, const Ball& region);
/// Same quadrature applied to |f|^p (the inner Morrey integrand).
double integrate_abs_pow(const GridFunction& f, double p, const Ball& region);

/// Smallest radius such that every nonzero sample lies within it.
double computed_support_radius(const GridFunction& f);

// Flat binary format: header n, h, L as little-endian f64 plus points-per-
// axis as u64; payload row-major f64. CSV (x,value) is for n = 1 only.
void write_binary(const GridFunction& f, const std::string& path);
GridFunction read_binary(const std::string& path);
void write_csv(const GridFunction& f, std::ostream& out);
GridFunction read_csv(std::istream& in);

/// Grid defaults per dimension: n=1: h=1/256, L=8; n=2: h=1/64, L=4;
/// n=3: h=1/16, L=2.
Grid default_grid(int n);

/// Deterministic eight-function corpus scaled to the extent: two ball
/// indicators, two power bumps (exponents 0.9 resp. 0.7 of the given space
/// boundary exponent), two gaussians, two two-bump step sums.
std::vector<TestFunctionSpec> default_corpus(int n, double extent,
                                             double boundary_exponent);

}  // namespace morrey
