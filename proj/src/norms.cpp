#include "morrey/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "morrey/parallel.hpp"

namespace morrey {
namespace {

using std::int64_t;

nlohmann::json norm_value_common(const NormValue& v) {
  return {{"space", v.space},
          {"p", v.p},
          {"value", v.value},
          {"argmax_center", v.argmax_center},
          {"argmax_radius", v.argmax_radius}};
}

}  // namespace

nlohmann::json NormValue::to_json() const {
  nlohmann::json j = norm_value_common(*this);
  if (q_or_phi.is_number()) j["q"] = q_or_phi;
  else if (q_or_phi.is_object()) j["phi"] = q_or_phi;
  return j;
}

NormValue NormValue::from_json(const nlohmann::json& j) {
  NormValue v;
  v.space = j.at("space").get<std::string>();
  v.p = j.at("p").get<double>();
  if (j.contains("q")) v.q_or_phi = j.at("q");
  else if (j.contains("phi")) v.q_or_phi = j.at("phi");
  v.value = j.at("value").get<double>();
  v.argmax_center = j.at("argmax_center").get<std::array<double, 3>>();
  v.argmax_radius = j.at("argmax_radius").get<double>();
  return v;
}

NormValue lebesgue_norm_f(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lebesgue_norm_f: p >= 1 required");
  std::vector<double> powed(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    powed[i] = std::pow(std::abs(f.values[i]), p);
  const double s = pairwise_sum(powed) * std::pow(f.grid.spacing(), f.grid.dim());
  NormValue v;
  v.space = "Lp";
  v.p = p;
  v.value = std::pow(s, 1.0 / p);
  return v;
}

namespace {

struct ScanBest {
  double value = -1.0;
  double radius = 0.0;
  int64_t center_flat = std::numeric_limits<int64_t>::max();

  // larger value wins; ties prefer the smaller radius, then the
  // lexicographically smaller centre
  bool beats(const ScanBest& o) const {
    if (value != o.value) return value > o.value;
    if (radius != o.radius) return radius < o.radius;
    return center_flat < o.center_flat;
  }
};

std::vector<double> radius_ladder(const Grid& g, const ScanOptions& opts) {
  const double h = g.spacing();
  const double r_max = opts.r_max > 0.0 ? opts.r_max : 2.0 * g.extent();
  const double r_min = opts.r_min > 0.0 ? opts.r_min : h;
  std::vector<double> rs;
  for (int k = 0;; ++k) {
    const double r = (k % 2 == 0) ? h * std::exp2(double(k / 2))
                                  : h * std::exp2(double(k / 2)) * M_SQRT2;
    if (r > r_max * (1.0 + 1e-12)) break;
    if (r >= r_min * (1.0 - 1e-12)) rs.push_back(r);
    if (k > 400) break;
  }
  if (rs.empty()) throw std::invalid_argument("norm scan: empty radius ladder");
  return rs;
}

std::vector<int64_t> center_offsets(const Grid& g, int stride) {
  if (stride < 1) throw std::invalid_argument("norm scan: stride >= 1 required");
  std::vector<int64_t> out;
  const int64_t m = g.points_per_axis();
  const int64_t start = g.half() % stride;
  for (int64_t i = start; i < m; i += stride) out.push_back(i);
  return out;
}

// weight w(r) = phi(r) r^{n/p}; radii past full support cannot improve the
// quotient once w is non-decreasing along the ladder
bool weight_nondecreasing(const GrowthFunction& phi, double n_over_p,
                          const std::vector<double>& rs) {
  if (phi.form() == GrowthFunction::Form::Power)
    return phi.power_exponent() + n_over_p >= -1e-12;
  double prev = phi(rs.front()) * std::pow(rs.front(), n_over_p);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const double w = phi(rs[i]) * std::pow(rs[i], n_over_p);
    if (w < prev * (1.0 - 1e-12)) return false;
    prev = w;
  }
  return true;
}

NormValue scan_norm(const GridFunction& f, double p, const GrowthFunction& phi,
                    const ScanOptions& opts, std::string space,
                    nlohmann::json q_or_phi) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm scan: p >= 1 required");
  const Grid& g = f.grid;
  const int n = g.dim();
  const int64_t m = g.points_per_axis();
  const double h = g.spacing();
  const int threads = resolve_threads(opts.threads);

  const std::vector<double> rs = radius_ladder(g, opts);
  const std::vector<int64_t> offs = center_offsets(g, opts.stride);
  const double n_over_p = double(n) / p;
  const bool gate = weight_nondecreasing(phi, n_over_p, rs);

  std::vector<double> inv_weight(rs.size());
  for (std::size_t k = 0; k < rs.size(); ++k)
    inv_weight[k] = 1.0 / (phi(rs[k]) * std::pow(rs[k], n_over_p));

  // |f|^p sampled once; n = 1 additionally gets a prefix array
  std::vector<double> fp(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    fp[i] = std::pow(std::abs(f.values[i]), p);

  std::vector<double> prefix;
  if (n == 1) {
    prefix.resize(fp.size() + 1, 0.0);
    for (std::size_t i = 0; i < fp.size(); ++i) prefix[i + 1] = prefix[i] + fp[i];
  }

  // centre list (flat indices), lexicographic
  std::vector<int64_t> centers;
  if (n == 1) {
    centers = offs;
  } else {
    std::array<std::size_t, 3> it{0, 0, 0};
    while (true) {
      std::array<int64_t, 3> idx{0, 0, 0};
      for (int a = 0; a < n; ++a) idx[a] = offs[it[a]];
      centers.push_back(g.flatten(idx));
      int a = n - 1;
      while (a >= 0 && ++it[a] >= offs.size()) {
        it[a] = 0;
        --a;
      }
      if (a < 0) break;
    }
  }

  const double support = f.support_radius > 0.0 ? f.support_radius
                                                : computed_support_radius(f);
  std::vector<double> r2s(rs.size());
  for (std::size_t k = 0; k < rs.size(); ++k) r2s[k] = rs[k] * rs[k];

  std::vector<ScanBest> chunk_best;
  std::mutex merge_mutex;

  parallel_for(0, int64_t(centers.size()), threads, [&](int64_t clo, int64_t chi) {
    ScanBest best;
    std::vector<double> buckets(rs.size());
    for (int64_t ci = clo; ci < chi; ++ci) {
      const int64_t cflat = centers[static_cast<std::size_t>(ci)];
      const auto cidx = g.unflatten(cflat);
      std::array<double, 3> cx{0, 0, 0};
      for (int a = 0; a < n; ++a) cx[a] = g.coord(cidx[a]);

      double cnorm2 = 0.0;
      for (int a = 0; a < n; ++a) cnorm2 += cx[a] * cx[a];
      const double r_cover = std::sqrt(cnorm2) + support;

      std::size_t k_hi = rs.size();
      if (gate) {
        std::size_t k = 0;
        while (k < rs.size() && rs[k] < r_cover) ++k;
        k_hi = std::min(rs.size(), k + 1);
      }

      if (n == 1) {
        const double a0 = cx[0];
        for (std::size_t k = 0; k < k_hi; ++k) {
          const double r = rs[k];
          // replicate the overlap-weighted 1-D ball integral via the prefix
          const int64_t i_lo = std::max<int64_t>(
              0, static_cast<int64_t>(std::floor((a0 - r) / h)) + g.half() - 1);
          const int64_t i_hi = std::min<int64_t>(
              m - 1, static_cast<int64_t>(std::ceil((a0 + r) / h)) + g.half() + 1);
          int64_t first = -1, last = -1;
          double s = 0.0;
          for (int64_t i = i_lo; i <= i_hi; ++i) {
            const double x = g.coord(i);
            const double w =
                std::min(x + 0.5 * h, a0 + r) - std::max(x - 0.5 * h, a0 - r);
            if (w <= 0.0) continue;
            if (first < 0) first = i;
            last = i;
          }
          if (first < 0) continue;
          {
            const double x = g.coord(first);
            const double w =
                std::min(x + 0.5 * h, a0 + r) - std::max(x - 0.5 * h, a0 - r);
            s += fp[static_cast<std::size_t>(first)] * w;
          }
          if (last != first) {
            const double x = g.coord(last);
            const double w =
                std::min(x + 0.5 * h, a0 + r) - std::max(x - 0.5 * h, a0 - r);
            s += fp[static_cast<std::size_t>(last)] * w;
          }
          if (last > first + 1)
            s += (prefix[static_cast<std::size_t>(last)] -
                  prefix[static_cast<std::size_t>(first + 1)]) *
                 h;
          const double q = std::pow(s, 1.0 / p) * inv_weight[k];
          ScanBest cand{q, r, cflat};
          if (cand.beats(best)) best = cand;
        }
      } else {
        // one bucketed pass over the bounding box serves every radius
        std::fill(buckets.begin(), buckets.end(), 0.0);
        const double r_top = rs[k_hi - 1];
        std::array<int64_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
        for (int a = 0; a < n; ++a) {
          lo[a] = std::max<int64_t>(
              0, cidx[a] - static_cast<int64_t>(std::ceil(r_top / h)) - 1);
          hi[a] = std::min<int64_t>(
              m - 1, cidx[a] + static_cast<int64_t>(std::ceil(r_top / h)) + 1);
        }
        std::array<int64_t, 3> idx = lo;
        while (true) {
          double d2 = 0.0;
          for (int a = 0; a < n; ++a) {
            const double d = g.coord(idx[a]) - cx[a];
            d2 += d * d;
          }
          const auto it2 = std::lower_bound(r2s.begin(), r2s.begin() + k_hi, d2);
          if (it2 != r2s.begin() + k_hi) {
            const std::size_t k = std::size_t(it2 - r2s.begin());
            buckets[k] += fp[static_cast<std::size_t>(g.flatten(idx))];
          }
          int a = n - 1;
          while (a >= 0 && ++idx[a] > hi[a]) {
            idx[a] = lo[a];
            --a;
          }
          if (a < 0) break;
        }
        const double hn = std::pow(h, n);
        double cum = 0.0;
        for (std::size_t k = 0; k < k_hi; ++k) {
          cum += buckets[k];
          const double q = std::pow(cum * hn, 1.0 / p) * inv_weight[k];
          ScanBest cand{q, rs[k], cflat};
          if (cand.beats(best)) best = cand;
        }
      }
    }
    std::lock_guard<std::mutex> lk(merge_mutex);
    chunk_best.push_back(best);
  });

  ScanBest best;
  for (const auto& b : chunk_best)
    if (b.beats(best)) best = b;

  NormValue v;
  v.space = std::move(space);
  v.p = p;
  v.q_or_phi = std::move(q_or_phi);
  v.value = std::max(best.value, 0.0);
  if (best.center_flat != std::numeric_limits<int64_t>::max()) {
    const auto cidx = g.unflatten(best.center_flat);
    for (int a = 0; a < n; ++a) v.argmax_center[a] = g.coord(cidx[a]);
    v.argmax_radius = best.radius;
  }
  return v;
}

}  // namespace

NormValue morrey_norm(const GridFunction& f, double p, double q,
                      const ScanOptions& opts) {
  if (!(q >= p)) throw std::invalid_argument("morrey_norm: q >= p required");
  const GrowthFunction phi = GrowthFunction::power(1.0, -double(f.grid.dim()) / q);
  return scan_norm(f, p, phi, opts, "Lp,q", nlohmann::json(q));
}

NormValue gen_morrey_norm(const GridFunction& f, double p, const GrowthFunction& phi,
                          const ScanOptions& opts) {
  return scan_norm(f, p, phi, opts, "Lp,phi", phi.to_json());
}

}  // namespace morrey
