#pragma once

// L_p centroid bodies through one-dimensional marginals.

#include "lwlab/hull.hpp"
#include "lwlab/moments.hpp"
#include "lwlab/parallel.hpp"
#include "lwlab/polytope.hpp"
#include "lwlab/quadrature.hpp"
#include "lwlab/sampling.hpp"
#include "lwlab/section.hpp"
#include "lwlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lwlab {

/// t -> |K cap (theta-perp + t theta)|, stored as samples at Gauss nodes on
/// each piece between consecutive vertex projections. On each piece the
/// function is a polynomial of degree at most n-1.
struct MarginalDensity {
  struct Piece {
    double a = 0.0, b = 0.0;
    std::vector<double> t, f;
  };

  Vec direction;
  int degree = 0;
  std::vector<double> breakpoints;
  std::vector<Piece> pieces;

  double lower() const { return breakpoints.front(); }
  double upper() const { return breakpoints.back(); }

  double operator()(double t) const {
    if (pieces.empty() || t < lower() || t > upper()) return 0.0;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - breakpoints.begin() - 1));
    idx = std::min(idx, pieces.size() - 1);
    return evaluate(pieces[idx], t);
  }

  /// Integral of f over its support.
  double integral() const {
    double sum = 0.0;
    for (const auto& pc : pieces) sum += integrate(pc, pc.a, pc.b, [](double) { return 1.0; }, order_for(0));
    return sum;
  }

  /// Integral of |t|^p f(t). Integer p uses a Gauss rule exact for the
  /// polynomial integrand; other p use 32 nodes on pieces bounded away from
  /// 0 and exact monomial moments on pieces touching or near 0.
  double abs_moment(double p) const {
    const bool integer_p = std::abs(p - std::round(p)) < 1e-12;
    double sum = 0.0;
    for (const auto& pc : pieces) {
      std::vector<std::pair<double, double>> parts;
      if (pc.a < 0.0 && pc.b > 0.0)
        parts = {{pc.a, 0.0}, {0.0, pc.b}};
      else
        parts = {{pc.a, pc.b}};
      for (auto [c, e] : parts) {
        if (e <= c) continue;
        const double lo = std::min(std::abs(c), std::abs(e)), hi = std::max(std::abs(c), std::abs(e));
        auto weight = [p](double t) { return std::pow(std::abs(t), p); };
        if (integer_p)
          sum += integrate(pc, c, e, weight, order_for(static_cast<int>(std::round(p))));
        else if (lo >= hi - lo)
          sum += integrate(pc, c, e, weight, 32);
        else
          sum += near_zero_moment(pc, c, e, p, lo, hi);
      }
    }
    return sum;
  }

 private:
  int order_for(int power) const { return std::max(1, (power + degree + 2) / 2); }

  static double evaluate(const Piece& pc, double t) {
    // Lagrange form; the nodes are few and well separated.
    double out = 0.0;
    const std::size_t q = pc.t.size();
    for (std::size_t i = 0; i < q; ++i) {
      double l = 1.0;
      for (std::size_t j = 0; j < q; ++j)
        if (j != i) l *= (t - pc.t[j]) / (pc.t[i] - pc.t[j]);
      out += l * pc.f[i];
    }
    return out;
  }

  template <class W>
  static double integrate(const Piece& pc, double c, double e, W&& weight, int order) {
    const GaussRule& g = gauss_legendre(order);
    const double mid = 0.5 * (c + e), half = 0.5 * (e - c);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double t = mid + half * g.nodes[i];
      sum += g.weights[i] * weight(t) * evaluate(pc, t);
    }
    return half * sum;
  }

  // int_lo^hi tau^p g(tau) d tau with g(tau) = f(+-tau), using the monomial
  // expansion of g(hi s) on s in [lo/hi, 1].
  double near_zero_moment(const Piece& pc, double c, double e, double p, double lo, double hi) const {
    const double sign = (c + e) >= 0.0 ? 1.0 : -1.0;
    const int m = degree + 1;
    const double s0 = lo / hi;
    Eigen::MatrixXd v(m, m);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
      const double s = m == 1 ? 0.5 * (s0 + 1.0) : s0 + (1.0 - s0) * (0.5 - 0.5 * std::cos(std::numbers::pi * (i + 0.5) / m));
      double pw = 1.0;
      for (int k = 0; k < m; ++k, pw *= s) v(i, k) = pw;
      rhs(i) = evaluate(pc, sign * hi * s);
    }
    const Eigen::VectorXd coef = v.colPivHouseholderQr().solve(rhs);
    double sum = 0.0;
    for (int k = 0; k < m; ++k) sum += coef(k) * (1.0 - std::pow(s0, p + k + 1.0)) / (p + k + 1.0);
    return std::pow(hi, p + 1.0) * sum;
  }
};

/// Marginal of a full-dimensional body in the unit direction theta.
inline MarginalDensity marginal(const Polytope& k, const Vec& theta) {
  if (!k.full_dimensional()) throw DegenerateInput("marginal: body is not full-dimensional");
  const int n = k.dim();
  MarginalDensity m;
  m.direction = theta;
  m.degree = n - 1;
  std::vector<double> proj;
  for (const auto& v : k.vertices()) proj.push_back(theta.dot(v));
  std::sort(proj.begin(), proj.end());
  const double tol = 1e-12 * std::max(1.0, k.coordinate_scale());
  for (double s : proj)
    if (m.breakpoints.empty() || s - m.breakpoints.back() > tol) m.breakpoints.push_back(s);
  const GaussRule& g = gauss_legendre(n + 1);
  for (std::size_t i = 0; i + 1 < m.breakpoints.size(); ++i) {
    MarginalDensity::Piece pc;
    pc.a = m.breakpoints[i];
    pc.b = m.breakpoints[i + 1];
    const double mid = 0.5 * (pc.a + pc.b), half = 0.5 * (pc.b - pc.a);
    for (double x : g.nodes) {
      const double t = mid + half * x;
      pc.t.push_back(t);
      pc.f.push_back(slice_volume(k, theta, t));
    }
    m.pieces.push_back(std::move(pc));
  }
  return m;
}

/// h_{Z_p K}(y) = (int_K |<x,y>|^p dx)^(1/p) for centered, volume-1 K.
inline double zp_support(const Polytope& k, double p, const Vec& y) {
  if (p < 1.0) throw DegenerateInput("zp_support: p must be at least 1");
  if (!is_normalized(k)) throw NotNormalized("zp_support: body must be centered with volume 1");
  const double r = y.norm();
  if (r == 0.0) return 0.0;
  return r * std::pow(marginal(k, y / r).abs_moment(p), 1.0 / p);
}

/// Intersection of the halfspaces {x : <u_i, x> <= h_i} with h_i > 0, through
/// the dual hull of the points u_i / h_i. Throws DegenerateInput if unbounded.
inline Polytope halfspace_intersection(const std::vector<Vec>& normals, const std::vector<double>& offsets) {
  std::vector<Vec> dual;
  dual.reserve(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) dual.push_back(normals[i] / offsets[i]);
  const Hull h = convex_hull(dual);
  std::vector<Vec> verts;
  verts.reserve(h.facets.size());
  for (const auto& f : h.facets) {
    if (f.offset <= 1e-12) throw DegenerateInput("halfspace_intersection: directions do not bound a body");
    verts.push_back(f.normal / f.offset);
  }
  return Polytope(verts);
}

/// Body known through sampled support values; volume is that of the outer
/// polytope cut out by the sampled halfspaces.
class SupportSampledBody {
 public:
  explicit SupportSampledBody(int d) : d_(d) {}

  void add(const Vec& u, double h) {
    if (!(h > 0.0)) throw DegenerateInput("support samples must be positive");
    dirs_.push_back(u);
    vals_.push_back(h);
  }

  int dim() const { return d_; }
  std::size_t samples() const { return dirs_.size(); }
  const std::vector<Vec>& directions() const { return dirs_; }
  const std::vector<double>& values() const { return vals_; }

  Polytope outer() const { return halfspace_intersection(dirs_, vals_); }
  double volume() const { return outer().volume(); }

  /// |V_N - V_{N/2}| from the last convergence run; 0 if never estimated.
  double uncertainty = 0.0;

 private:
  int d_;
  std::vector<Vec> dirs_;
  std::vector<double> vals_;
};

struct SampledVolume {
  double volume = 0.0;
  double uncertainty = 0.0;  // |V_N - V_{N/2}|
  int samples = 0;
};

inline int default_sample_count(int d) { return d == 2 ? 512 : 2048; }

/// P_H Z_p(K) from N support samples on the unit sphere of H (0 picks the
/// default). N doubles until |V_N - V_{N/2}| / V_N <= 1e-3, up to 16 times
/// the starting count; past that Unconverged is thrown.
inline SupportSampledBody projected_zp_body(const Polytope& k, double p, const Subspace& h, int count = 0) {
  const int d = h.dim();
  if (d != 2 && d != 3) throw DegenerateInput("projected_zp_body: dim H must be 2 or 3");
  if (!is_normalized(k)) throw NotNormalized("projected_zp_body: body must be centered with volume 1");
  if (count <= 0) count = default_sample_count(d);
  const Mat b = h.basis();

  auto build = [&](int n_samples) {
    const std::vector<Vec> dirs = sphere_directions(d, n_samples);
    const std::vector<double> vals = parallel_map(dirs.size(), [&](std::size_t i) { return zp_support(k, p, b * dirs[i]); });
    SupportSampledBody body(d);
    for (std::size_t i = 0; i < dirs.size(); ++i) body.add(dirs[i], vals[i]);
    return body;
  };

  const int cap = 16 * count;
  for (int n_samples = count;; n_samples *= 2) {
    SupportSampledBody full = build(n_samples);
    SupportSampledBody half(d);
    if (d == 2) {
      for (std::size_t i = 0; i < full.samples(); i += 2) half.add(full.directions()[i], full.values()[i]);
    } else {
      half = build(n_samples / 2);
    }
    const double v = full.volume();
    full.uncertainty = std::abs(v - half.volume());
    if (full.uncertainty <= 1e-3 * v) return full;
    if (n_samples * 2 > cap) throw Unconverged("projected_zp_body: sample cap reached before volume stabilized");
  }
}

struct PaourisValue {
  double value = 0.0;
  double uncertainty = 0.0;
};

/// |K cap H-perp|^(1/d) |P_H Z_d(K)|^(1/d) for d = dim H.
inline PaourisValue paouris_product(const Polytope& k, const Subspace& h) {
  const int d = h.dim();
  const double sec = section_volume(k, h.complement());
  const SupportSampledBody z = projected_zp_body(k, static_cast<double>(d), h);
  const double vz = z.volume();
  const double value = std::pow(sec, 1.0 / d) * std::pow(vz, 1.0 / d);
  // First-order propagation of the volume uncertainty.
  return {value, value * z.uncertainty / (d * vz)};
}

}  // namespace lwlab
