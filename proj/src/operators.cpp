#include "morrey/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

#include "morrey/geometry.hpp"
#include "morrey/kernel.hpp"
#include "morrey/parallel.hpp"
#include "morrey/quadrature.hpp"

namespace morrey {
namespace {

using std::int64_t;

// int_{|z| < h/2} K(z) dz, the exact mass of the singular cell
double singular_cell(const KernelParams& kp, double h) {
  const double gamma = kp.gamma;
  const QuadResult q = integrate_power_weight(
      [gamma](double r) { return std::pow(1.0 + r, -gamma); }, kp.alpha, 0.5 * h,
      1e-12);
  return unit_sphere_area(kp.n) * q.value;
}

struct IndexBox {
  std::array<int64_t, 3> lo{0, 0, 0};
  std::array<int64_t, 3> hi{-1, -1, -1};
  bool empty = true;
};

IndexBox nonzero_box(const GridFunction& f) {
  const Grid& g = f.grid;
  IndexBox box;
  const int64_t total = g.size();
  for (int64_t i = 0; i < total; ++i) {
    if (f.values[static_cast<std::size_t>(i)] == 0.0) continue;
    const auto idx = g.unflatten(i);
    if (box.empty) {
      box.lo = box.hi = idx;
      box.empty = false;
      continue;
    }
    for (int a = 0; a < g.dim(); ++a) {
      box.lo[a] = std::min(box.lo[a], idx[a]);
      box.hi[a] = std::max(box.hi[a], idx[a]);
    }
  }
  return box;
}

// K evaluated on the difference lattice; the centre cell carries the exact
// singular-cell mass divided by h^n so a uniform h^n factor applies at the end.
std::vector<double> kernel_table(const KernelParams& kp, const Grid& g, double s0,
                                 int threads) {
  const int n = g.dim();
  const int64_t m = g.points_per_axis();
  const int64_t D = 2 * m - 1;
  int64_t total = 1;
  for (int a = 0; a < n; ++a) total *= D;
  std::vector<double> table(static_cast<std::size_t>(total));
  const double h = g.spacing();
  const double hn = std::pow(h, n);
  parallel_for(0, total, threads, [&](int64_t lo, int64_t hi) {
    for (int64_t t = lo; t < hi; ++t) {
      int64_t rem = t;
      int64_t d2 = 0;
      for (int a = n - 1; a >= 0; --a) {
        const int64_t d = rem % D - (m - 1);
        rem /= D;
        d2 += d * d;
      }
      table[static_cast<std::size_t>(t)] =
          d2 == 0 ? s0 / hn : kernel_eval_radius(kp, h * std::sqrt(double(d2)));
    }
  });
  return table;
}

int64_t isqrt_floor(int64_t v) {
  if (v < 0) return -1;
  int64_t r = static_cast<int64_t>(std::sqrt(double(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// cross-section of the open lattice ball |d| < 2^k: per (n-1)-dimensional row
// offset, the half-chord c along the last axis (|d'|^2 + t^2 <= 4^k - 1)
struct BallRow {
  std::array<int64_t, 2> off{0, 0};  // axes 0..n-2
  int64_t c = 0;
};

std::vector<BallRow> ball_rows(int n, int k) {
  const int64_t radius2 = (int64_t(1) << (2 * k)) - 1;  // |d|^2 <= 4^k - 1
  const int64_t w = isqrt_floor(radius2);
  std::vector<BallRow> rows;
  if (n == 1) {
    rows.push_back({{0, 0}, w});
  } else if (n == 2) {
    for (int64_t d0 = -w; d0 <= w; ++d0)
      rows.push_back({{d0, 0}, isqrt_floor(radius2 - d0 * d0)});
  } else {
    for (int64_t d0 = -w; d0 <= w; ++d0)
      for (int64_t d1 = -w; d1 <= w; ++d1) {
        const int64_t rest = radius2 - d0 * d0 - d1 * d1;
        if (rest >= 0) rows.push_back({{d0, d1}, isqrt_floor(rest)});
      }
  }
  return rows;
}

// sliding maximum along one row, window [i-w, i+w] clipped to the row
void sliding_max_row(const double* src, double* dst, int64_t m, int64_t w) {
  std::deque<int64_t> dq;
  int64_t j_next = 0;
  for (int64_t i = 0; i < m; ++i) {
    const int64_t j_hi = std::min(i + w, m - 1);
    while (j_next <= j_hi) {
      while (!dq.empty() && src[dq.back()] <= src[j_next]) dq.pop_back();
      dq.push_back(j_next++);
    }
    while (dq.front() < i - w) dq.pop_front();
    dst[i] = src[dq.front()];
  }
}

}  // namespace

OperatorResult apply_bessel_riesz(const KernelParams& kp, const GridFunction& f,
                                  int threads) {
  kp.require_valid();
  const Grid& g = f.grid;
  if (kp.n != g.dim())
    throw std::invalid_argument("apply_bessel_riesz: kernel and field dimensions differ");
  threads = resolve_threads(threads);

  const int n = g.dim();
  const int64_t m = g.points_per_axis();
  const int64_t D = 2 * m - 1;
  const double h = g.spacing();
  const double hn = std::pow(h, n);

  OperatorResult res{
      GridFunction{g, std::vector<double>(static_cast<std::size_t>(g.size())), 0.0},
      singular_cell(kp, h)};

  const IndexBox box = nonzero_box(f);
  if (box.empty) return res;

  const std::vector<double> table = kernel_table(kp, g, res.singular_cell_integral, threads);

  // table strides (row-major over D per axis)
  std::array<int64_t, 3> tstride{1, 1, 1};
  for (int a = n - 2; a >= 0; --a) tstride[a] = tstride[a + 1] * D;

  parallel_for(0, g.size(), threads, [&](int64_t lo, int64_t hi) {
    for (int64_t x = lo; x < hi; ++x) {
      const auto xi = g.unflatten(x);
      double acc = 0.0;
      std::array<int64_t, 3> yi = box.lo;
      while (true) {
        // row over the last axis, y fixed on the leading axes
        int64_t tbase = 0;
        for (int a = 0; a < n - 1; ++a) tbase += (xi[a] - yi[a] + (m - 1)) * tstride[a];
        std::array<int64_t, 3> row = yi;
        row[n - 1] = 0;
        const int64_t fbase = g.flatten(row);
        const int64_t j_lo = box.lo[n - 1], j_hi = box.hi[n - 1];
        const double* fv = f.values.data() + fbase;
        const double* tv = table.data() + tbase + (xi[n - 1] - j_lo + (m - 1));
        for (int64_t j = j_lo; j <= j_hi; ++j) acc += tv[j_lo - j] * fv[j];
        // advance leading axes
        int a = n - 2;
        while (a >= 0 && ++yi[a] > box.hi[a]) {
          yi[a] = box.lo[a];
          --a;
        }
        if (a < 0) break;
      }
      res.output.values[static_cast<std::size_t>(x)] = acc * hn;
    }
  });

  res.output.support_radius = computed_support_radius(res.output);
  return res;
}

GridFunction maximal(const GridFunction& f, int threads) {
  const Grid& g = f.grid;
  threads = resolve_threads(threads);
  const int n = g.dim();
  const int64_t m = g.points_per_axis();
  const double h = g.spacing();
  const int64_t total = g.size();
  const int64_t n_rows = total / m;

  // prefix sums of |f| along the last axis, one row of m+1 entries per chord
  std::vector<double> prefix(static_cast<std::size_t>(n_rows * (m + 1)));
  parallel_for(0, n_rows, threads, [&](int64_t lo, int64_t hi) {
    for (int64_t r = lo; r < hi; ++r) {
      const double* src = f.values.data() + r * m;
      double* dst = prefix.data() + r * (m + 1);
      dst[0] = 0.0;
      for (int64_t j = 0; j < m; ++j) dst[j + 1] = dst[j] + std::abs(src[j]);
    }
  });

  const double diameter = 2.0 * g.extent() * std::sqrt(double(n));
  int k_max = 0;
  while (h * std::exp2(double(k_max)) <= diameter && k_max < 40) ++k_max;

  GridFunction out{g, std::vector<double>(static_cast<std::size_t>(total), 0.0), 0.0};
  std::vector<double> mean(static_cast<std::size_t>(total));
  std::vector<double> slid(static_cast<std::size_t>(total));

  for (int k = 0; k <= k_max; ++k) {
    const std::vector<BallRow> rows = ball_rows(n, k);

    // discrete ball means over the lattice points inside the grid; dividing
    // by the clipped count lets edge-straddling balls act as the shorter
    // intervals they are instead of diluting the average with zero padding
    parallel_for(0, total, threads, [&](int64_t lo, int64_t hi) {
      for (int64_t x = lo; x < hi; ++x) {
        const auto xi = g.unflatten(x);
        double s = 0.0;
        int64_t cnt = 0;
        for (const auto& row : rows) {
          std::array<int64_t, 3> ri = xi;
          bool ok = true;
          for (int a = 0; a < n - 1; ++a) {
            ri[a] += row.off[a];
            if (ri[a] < 0 || ri[a] >= m) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          const int64_t j_lo = std::max<int64_t>(0, xi[n - 1] - row.c);
          const int64_t j_hi = std::min<int64_t>(m - 1, xi[n - 1] + row.c);
          if (j_lo > j_hi) continue;
          cnt += j_hi - j_lo + 1;
          ri[n - 1] = 0;
          const double* P = prefix.data() + (g.flatten(ri) / m) * (m + 1);
          s += P[j_hi + 1] - P[j_lo];
        }
        mean[static_cast<std::size_t>(x)] = s / double(cnt);
      }
    });

    // uncentred sup: dilate the mean field by the same ball, row by row,
    // grouping rows that share a chord half-length
    std::vector<int64_t> order(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) order[i] = int64_t(i);
    std::sort(order.begin(), order.end(),
              [&](int64_t a, int64_t b) { return rows[size_t(a)].c < rows[size_t(b)].c; });

    std::size_t pos = 0;
    while (pos < order.size()) {
      const int64_t c = rows[static_cast<std::size_t>(order[pos])].c;
      parallel_for(0, n_rows, threads, [&](int64_t lo, int64_t hi) {
        for (int64_t r = lo; r < hi; ++r)
          sliding_max_row(mean.data() + r * m, slid.data() + r * m, m, c);
      });
      std::size_t end = pos;
      while (end < order.size() && rows[static_cast<std::size_t>(order[end])].c == c) ++end;
      parallel_for(0, total, threads, [&](int64_t lo, int64_t hi) {
        for (int64_t x = lo; x < hi; ++x) {
          const auto xi = g.unflatten(x);
          double best = out.values[static_cast<std::size_t>(x)];
          for (std::size_t ri = pos; ri < end; ++ri) {
            const auto& row = rows[static_cast<std::size_t>(order[ri])];
            std::array<int64_t, 3> src = xi;
            bool ok = true;
            for (int a = 0; a < n - 1; ++a) {
              src[a] += row.off[a];
              if (src[a] < 0 || src[a] >= m) {
                ok = false;
                break;
              }
            }
            if (!ok) continue;
            best = std::max(best, slid[static_cast<std::size_t>(g.flatten(src))]);
          }
          out.values[static_cast<std::size_t>(x)] = best;
        }
      });
      pos = end;
    }
  }

  out.support_radius = computed_support_radius(out);
  return out;
}

HedbergSplit hedberg_split(const KernelParams& kp, const GridFunction& f,
                           std::int64_t x_flat, double R) {
  kp.require_valid();
  const Grid& g = f.grid;
  if (kp.n != g.dim())
    throw std::invalid_argument("hedberg_split: kernel and field dimensions differ");
  if (x_flat < 0 || x_flat >= g.size())
    throw std::invalid_argument("hedberg_split: point index out of range");

  const int n = g.dim();
  const double h = g.spacing();
  const double hn = std::pow(h, n);
  const double s0 = singular_cell(kp, h);

  HedbergSplit split;
  split.R = R;
  split.I1 = f.values[static_cast<std::size_t>(x_flat)] * s0;

  const IndexBox box = nonzero_box(f);
  if (box.empty) return split;

  const auto xi = g.unflatten(x_flat);
  std::array<int64_t, 3> yi = box.lo;
  double near = 0.0, far = 0.0;
  while (true) {
    int64_t d2 = 0;
    for (int a = 0; a < n; ++a) {
      const int64_t d = xi[a] - yi[a];
      d2 += d * d;
    }
    if (d2 != 0) {
      const double dist = h * std::sqrt(double(d2));
      const double term =
          kernel_eval_radius(kp, dist) * f.values[static_cast<std::size_t>(g.flatten(yi))];
      if (dist < R)
        near += term;
      else
        far += term;
    }
    int a = n - 1;
    while (a >= 0 && ++yi[a] > box.hi[a]) {
      yi[a] = box.lo[a];
      --a;
    }
    if (a < 0) break;
  }
  split.I1 += near * hn;
  split.I2 = far * hn;
  return split;
}

double hedberg_radius(double f_norm, double mf_x, double beta) {
  if (!(beta < 0.0)) throw std::invalid_argument("hedberg_radius: beta < 0 required");
  if (!(f_norm > 0.0) || !(mf_x > 0.0))
    return std::numeric_limits<double>::infinity();
  return std::pow(f_norm / mf_x, -1.0 / beta);
}

double hedberg_bound(TheoremId theorem, const KernelParams& kp, double beta,
                     double kernel_norm, double f_norm, double mf_x) {
  if (!(beta < 0.0)) throw std::invalid_argument("hedberg_bound: beta < 0 required");
  if (!(mf_x > 0.0)) return 0.0;
  switch (theorem) {
    case TheoremId::T7:
    case TheoremId::T9:
      return kernel_norm * std::pow(f_norm, -kp.alpha / beta) *
             std::pow(mf_x, 1.0 + kp.alpha / beta);
    case TheoremId::T11:
      return kernel_norm * std::pow(f_norm, (kp.alpha - kp.n) / beta) *
             std::pow(mf_x, 1.0 + (kp.n - kp.alpha) / beta);
    default:
      throw std::invalid_argument("hedberg_bound: theorem carries no pointwise bound");
  }
}

}  // namespace morrey
