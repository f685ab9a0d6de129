#include "morrey/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "morrey/parallel.hpp"

namespace morrey {
namespace {

double dist(std::span<const double> x, const std::array<double, 3>& c) {
  double d2 = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    const double d = x[a] - c[a];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

double center_norm(const std::array<double, 3>& c, int n) {
  double d2 = 0.0;
  for (int a = 0; a < n; ++a) d2 += c[a] * c[a];
  return std::sqrt(d2);
}

constexpr double kGaussianCutoffWidths = 7.0;

void write_u64_le(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t read_u64_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw std::runtime_error("field binary: truncated header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

void write_f64_le(std::ostream& out, double x) {
  write_u64_le(out, std::bit_cast<std::uint64_t>(x));
}

double read_f64_le(std::istream& in) {
  return std::bit_cast<double>(read_u64_le(in));
}

}  // namespace

Grid::Grid(int n, double h, double extent) : n_(n), h_(h), extent_(extent) {
  if (n < 1 || n > 3) throw std::invalid_argument("Grid: n must be 1, 2 or 3");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("Grid: h > 0 required");
  if (!(extent >= h) || !std::isfinite(extent))
    throw std::invalid_argument("Grid: extent >= h required");
  half_ = static_cast<std::int64_t>(std::floor(extent / h + 1e-9));
  m_ = 2 * half_ + 1;
}

std::int64_t Grid::size() const {
  std::int64_t s = 1;
  for (int a = 0; a < n_; ++a) s *= m_;
  return s;
}

std::array<std::int64_t, 3> Grid::unflatten(std::int64_t flat) const {
  std::array<std::int64_t, 3> idx{half_, half_, half_};
  for (int a = n_ - 1; a >= 0; --a) {
    idx[a] = flat % m_;
    flat /= m_;
  }
  return idx;
}

std::int64_t Grid::flatten(const std::array<std::int64_t, 3>& idx) const {
  std::int64_t flat = 0;
  for (int a = 0; a < n_; ++a) flat = flat * m_ + idx[a];
  return flat;
}

std::array<double, 3> Grid::point(std::int64_t flat) const {
  const auto idx = unflatten(flat);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < n_; ++a) x[a] = coord(idx[a]);
  return x;
}

nlohmann::json Grid::to_json() const {
  return {{"n", n_}, {"h", h_}, {"L", extent_}};
}

Grid Grid::from_json(const nlohmann::json& j) {
  return Grid(j.at("n").get<int>(), j.at("h").get<double>(), j.at("L").get<double>());
}

double TestFunctionSpec::support_radius(int n) const {
  switch (family) {
    case Family::BallIndicator:
    case Family::PowerBump:
      return center_norm(center, n) + radius;
    case Family::Gaussian:
      return center_norm(center, n) + kGaussianCutoffWidths * width;
    case Family::StepSum: {
      double s = 0.0;
      for (const auto& b : steps) s = std::max(s, center_norm(b.center, n) + b.radius);
      return s;
    }
  }
  return 0.0;
}

double TestFunctionSpec::evaluate(std::span<const double> x, double clip_radius) const {
  switch (family) {
    case Family::BallIndicator:
      return dist(x, center) <= radius ? 1.0 : 0.0;
    case Family::PowerBump: {
      const double d = dist(x, center);
      if (d > radius) return 0.0;
      return std::pow(std::max(d, clip_radius), exponent);
    }
    case Family::Gaussian: {
      const double d = dist(x, center);
      if (d > kGaussianCutoffWidths * width) return 0.0;
      return std::exp(-(d * d) / (width * width));
    }
    case Family::StepSum: {
      double v = 0.0;
      for (const auto& b : steps)
        if (dist(x, b.center) <= b.radius) v += b.amplitude;
      return v;
    }
  }
  return 0.0;
}

namespace {

std::string family_name(TestFunctionSpec::Family f) {
  using F = TestFunctionSpec::Family;
  switch (f) {
    case F::BallIndicator: return "ball";
    case F::PowerBump: return "power-bump";
    case F::Gaussian: return "gaussian";
    case F::StepSum: return "step-sum";
  }
  return "?";
}

TestFunctionSpec::Family family_from(const std::string& s) {
  using F = TestFunctionSpec::Family;
  if (s == "ball") return F::BallIndicator;
  if (s == "power-bump") return F::PowerBump;
  if (s == "gaussian") return F::Gaussian;
  if (s == "step-sum") return F::StepSum;
  throw std::invalid_argument("unknown test-function family: " + s);
}

}  // namespace

nlohmann::json TestFunctionSpec::to_json() const {
  nlohmann::json j{{"family", family_name(family)}, {"id", id}};
  using F = Family;
  if (family != F::StepSum) j["center"] = center;
  switch (family) {
    case F::BallIndicator:
      j["radius"] = radius;
      break;
    case F::PowerBump:
      j["radius"] = radius;
      j["exponent"] = exponent;
      break;
    case F::Gaussian:
      j["width"] = width;
      break;
    case F::StepSum: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& b : steps)
        arr.push_back({{"center", b.center}, {"radius", b.radius}, {"amplitude", b.amplitude}});
      j["steps"] = arr;
      break;
    }
  }
  return j;
}

TestFunctionSpec TestFunctionSpec::from_json(const nlohmann::json& j) {
  TestFunctionSpec s;
  s.family = family_from(j.at("family").get<std::string>());
  s.id = j.value("id", std::string{});
  if (j.contains("center")) s.center = j.at("center").get<std::array<double, 3>>();
  s.radius = j.value("radius", 1.0);
  s.exponent = j.value("exponent", 0.0);
  s.width = j.value("width", 1.0);
  if (j.contains("steps")) {
    for (const auto& e : j.at("steps")) {
      BallSpec b;
      b.center = e.at("center").get<std::array<double, 3>>();
      b.radius = e.at("radius").get<double>();
      b.amplitude = e.value("amplitude", 1.0);
      s.steps.push_back(b);
    }
  }
  return s;
}

GridFunction sample(const TestFunctionSpec& spec, const Grid& grid) {
  const double sr = spec.support_radius(grid.dim());
  if (sr > grid.extent() + 1e-12)
    throw std::invalid_argument("sample: support radius " + std::to_string(sr) +
                                " exceeds grid extent " + std::to_string(grid.extent()));
  GridFunction f{grid, std::vector<double>(static_cast<std::size_t>(grid.size())), sr};
  const std::int64_t total = grid.size();
  for (std::int64_t i = 0; i < total; ++i) {
    const auto x = grid.point(i);
    f.values[static_cast<std::size_t>(i)] =
        spec.evaluate(std::span<const double>(x.data(), static_cast<std::size_t>(grid.dim())),
                      grid.spacing());
  }
  return f;
}

namespace {

// shared driver for integrate / integrate_abs_pow over a ball
template <typename Weight>
double ball_sum(const GridFunction& f, const Ball& region, Weight&& cell_value) {
  const Grid& g = f.grid;
  const int n = g.dim();
  const double h = g.spacing();
  const std::int64_t m = g.points_per_axis();

  std::array<std::int64_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < n; ++a) {
    const double c = region.center[a];
    lo[a] = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(std::floor((c - region.radius) / h)) + g.half() - 1);
    hi[a] = std::min<std::int64_t>(
        m - 1, static_cast<std::int64_t>(std::ceil((c + region.radius) / h)) + g.half() + 1);
    if (lo[a] > hi[a]) return 0.0;
  }

  double acc = 0.0;
  if (n == 1) {
    const double c = region.center[0], r = region.radius;
    for (std::int64_t i = lo[0]; i <= hi[0]; ++i) {
      const double x = g.coord(i);
      const double w = std::min(x + 0.5 * h, c + r) - std::max(x - 0.5 * h, c - r);
      if (w <= 0.0) continue;
      acc += cell_value(f.values[static_cast<std::size_t>(i)]) * w;
    }
    return acc;
  }

  const double r2 = region.radius * region.radius;
  std::array<std::int64_t, 3> idx = lo;
  const double hn = std::pow(h, n);
  while (true) {
    double d2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double d = g.coord(idx[a]) - region.center[a];
      d2 += d * d;
    }
    if (d2 <= r2) acc += cell_value(f.values[static_cast<std::size_t>(g.flatten(idx))]);
    int a = n - 1;
    while (a >= 0 && ++idx[a] > hi[a]) {
      idx[a] = lo[a];
      --a;
    }
    if (a < 0) break;
  }
  return acc * hn;
}

}  // namespace

double integrate(const GridFunction& f) {
  const double s = pairwise_sum(f.values);
  return s * std::pow(f.grid.spacing(), f.grid.dim());
}

double integrate(const GridFunction& f, const Ball& region) {
  return ball_sum(f, region, [](double v) { return v; });
}

double integrate_abs_pow(const GridFunction& f, double p, const Ball& region) {
  return ball_sum(f, region, [p](double v) { return std::pow(std::abs(v), p); });
}

double computed_support_radius(const GridFunction& f) {
  const Grid& g = f.grid;
  double best2 = 0.0;
  const std::int64_t total = g.size();
  for (std::int64_t i = 0; i < total; ++i) {
    if (f.values[static_cast<std::size_t>(i)] == 0.0) continue;
    const auto x = g.point(i);
    double d2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) d2 += x[a] * x[a];
    best2 = std::max(best2, d2);
  }
  return std::sqrt(best2);
}

void write_binary(const GridFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_f64_le(out, double(f.grid.dim()));
  write_f64_le(out, f.grid.spacing());
  write_f64_le(out, f.grid.extent());
  write_u64_le(out, static_cast<std::uint64_t>(f.grid.points_per_axis()));
  for (double v : f.values) write_f64_le(out, v);
  if (!out) throw std::runtime_error("write failed: " + path);
}

GridFunction read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  const double nd = read_f64_le(in);
  const double h = read_f64_le(in);
  const double L = read_f64_le(in);
  const std::uint64_t m = read_u64_le(in);
  const int n = static_cast<int>(nd);
  if (double(n) != nd || n < 1 || n > 3)
    throw std::runtime_error("field binary: bad dimension");
  Grid grid(n, h, L);
  if (static_cast<std::uint64_t>(grid.points_per_axis()) != m)
    throw std::runtime_error("field binary: inconsistent points-per-axis");
  GridFunction f{grid, std::vector<double>(static_cast<std::size_t>(grid.size())), 0.0};
  for (double& v : f.values) v = read_f64_le(in);
  if (!in) throw std::runtime_error("field binary: truncated payload");
  f.support_radius = computed_support_radius(f);
  return f;
}

void write_csv(const GridFunction& f, std::ostream& out) {
  if (f.grid.dim() != 1)
    throw std::invalid_argument("write_csv: CSV fields are one-dimensional only");
  out << "# field n=1 h=" << std::hexfloat << f.grid.spacing() << " L="
      << f.grid.extent() << std::defaultfloat << "\n";
  out << "x,value\n";
  out.precision(17);
  const std::int64_t m = f.grid.points_per_axis();
  for (std::int64_t i = 0; i < m; ++i)
    out << f.grid.coord(i) << "," << f.values[static_cast<std::size_t>(i)] << "\n";
}

GridFunction read_csv(std::istream& in) {
  std::string line;
  double h = 0.0, L = 0.0;
  bool have_meta = false;
  std::vector<double> xs, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t hp = line.find("h=");
      std::size_t lp = line.find("L=");
      if (hp != std::string::npos && lp != std::string::npos) {
        h = std::strtod(line.c_str() + hp + 2, nullptr);
        L = std::strtod(line.c_str() + lp + 2, nullptr);
        have_meta = true;
      }
      continue;
    }
    if (line.rfind("x,", 0) == 0) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("field csv: malformed line: " + line);
    xs.push_back(std::strtod(line.c_str(), nullptr));
    vs.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  if (xs.size() < 3 || xs.size() % 2 == 0)
    throw std::runtime_error("field csv: need an odd number of samples >= 3");
  if (!have_meta) {
    h = (xs.back() - xs.front()) / double(xs.size() - 1);
    L = xs.back() + 0.25 * h;  // guard floor() against rounding
  }
  Grid grid(1, h, L);
  if (static_cast<std::size_t>(grid.points_per_axis()) != xs.size())
    throw std::runtime_error("field csv: sample count disagrees with h and L");
  GridFunction f{grid, std::move(vs), 0.0};
  f.support_radius = computed_support_radius(f);
  return f;
}

Grid default_grid(int n) {
  switch (n) {
    case 1: return Grid(1, 1.0 / 256, 8.0);
    case 2: return Grid(2, 1.0 / 64, 4.0);
    case 3: return Grid(3, 1.0 / 16, 2.0);
  }
  throw std::invalid_argument("default_grid: n must be 1, 2 or 3");
}

std::vector<TestFunctionSpec> default_corpus(int n, double extent,
                                             double boundary_exponent) {
  using F = TestFunctionSpec::Family;
  const double L = extent;
  std::vector<TestFunctionSpec> out;

  TestFunctionSpec ball_a;
  ball_a.family = F::BallIndicator;
  ball_a.id = "ball_a";
  ball_a.radius = L / 8.0;
  out.push_back(ball_a);

  TestFunctionSpec ball_b;
  ball_b.family = F::BallIndicator;
  ball_b.id = "ball_b";
  ball_b.center = {0.15 * L, 0, 0};
  ball_b.radius = L / 16.0;
  out.push_back(ball_b);

  TestFunctionSpec bump_a;
  bump_a.family = F::PowerBump;
  bump_a.id = "bump_a";
  bump_a.radius = L / 8.0;
  bump_a.exponent = 0.9 * boundary_exponent;
  out.push_back(bump_a);

  TestFunctionSpec bump_b;
  bump_b.family = F::PowerBump;
  bump_b.id = "bump_b";
  bump_b.radius = L / 4.0;
  bump_b.exponent = 0.7 * boundary_exponent;
  out.push_back(bump_b);

  TestFunctionSpec gauss_a;
  gauss_a.family = F::Gaussian;
  gauss_a.id = "gauss_a";
  gauss_a.width = L / 16.0;
  out.push_back(gauss_a);

  TestFunctionSpec gauss_b;
  gauss_b.family = F::Gaussian;
  gauss_b.id = "gauss_b";
  gauss_b.center = {-0.125 * L, 0, 0};
  gauss_b.width = 0.1125 * L;
  out.push_back(gauss_b);

  TestFunctionSpec steps_a;
  steps_a.family = F::StepSum;
  steps_a.id = "steps_a";
  steps_a.steps = {{{-0.25 * L, 0, 0}, 0.1 * L, 1.0}, {{0.25 * L, 0, 0}, 0.0625 * L, 0.5}};
  out.push_back(steps_a);

  TestFunctionSpec steps_b;
  steps_b.family = F::StepSum;
  steps_b.id = "steps_b";
  steps_b.steps = {{{-0.125 * L, 0, 0}, 0.04 * L, 2.0}, {{0.0625 * L, 0, 0}, 0.125 * L, 1.0}};
  out.push_back(steps_b);

  (void)n;
  return out;
}

}  // namespace morrey
