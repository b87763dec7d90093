#pragma once

// Polar projection body: rho_{Pi* K}(theta) = 1 / |P_{theta-perp} K|.

#include "lwlab/centroid.hpp"
#include "lwlab/frame_search.hpp"
#include "lwlab/moments.hpp"
#include "lwlab/parallel.hpp"
#include "lwlab/polytope.hpp"
#include "lwlab/report.hpp"
#include "lwlab/sampling.hpp"
#include "lwlab/section.hpp"
#include "lwlab/types.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace lwlab {

/// |P_{theta-perp} K| for unit theta.
inline double shadow(const Polytope& k, const Vec& theta) { return hyperplane_projection_volume(k, theta); }

/// Radial function of Pi* K in the direction of theta.
inline double pistar_radial(const Polytope& k, const Vec& theta) { return 1.0 / shadow(k, unit(theta)); }

/// ||x||_{Pi* K} = |x| |P_{x-perp} K|.
inline double pistar_norm(const Polytope& k, const Vec& x) {
  const double r = x.norm();
  return r == 0.0 ? 0.0 : r * shadow(k, x / r);
}

/// Star body known through radial samples in the coordinates of H; the
/// volume is that of the inner hull of the radial points.
class RadialSampledBody {
 public:
  explicit RadialSampledBody(int d) : d_(d) {}

  void add(const Vec& u, double rho) {
    dirs_.push_back(u);
    radii_.push_back(rho);
  }
  int dim() const { return d_; }
  std::size_t samples() const { return dirs_.size(); }
  const std::vector<Vec>& directions() const { return dirs_; }
  const std::vector<double>& radii() const { return radii_; }

  Polytope inner() const {
    std::vector<Vec> pts;
    pts.reserve(dirs_.size());
    for (std::size_t i = 0; i < dirs_.size(); ++i) pts.push_back(radii_[i] * dirs_[i]);
    return Polytope(pts);
  }
  double volume() const { return inner().volume(); }

 private:
  int d_;
  std::vector<Vec> dirs_;
  std::vector<double> radii_;
};

/// Directions in H (H coordinates) of the rays of the arrangement
/// {u : <P_H nu_F, u> = 0} over the facet normals nu_F of K. The gauge of
/// Pi* K cap H is linear on each cell, so its vertices lie on these rays.
inline std::vector<Vec> pistar_vertex_directions(const Polytope& k, const Subspace& h) {
  const int d = h.dim();
  std::vector<Vec> a;
  for (const auto& f : k.hull().facets) {
    const Vec p = h.basis().transpose() * f.normal;
    if (p.norm() > 1e-12) a.push_back(p / p.norm());
  }
  std::vector<Vec> out;
  auto push = [&out](const Vec& u) {
    out.push_back(u);
    out.push_back(-u);
  };
  if (d == 2) {
    for (const auto& p : a) push((Vec(2) << -p(1), p(0)).finished());
  } else if (d == 3) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        const Eigen::Vector3d c = Eigen::Vector3d(a[i](0), a[i](1), a[i](2)).cross(Eigen::Vector3d(a[j](0), a[j](1), a[j](2)));
        if (c.norm() > 1e-9) push((Vec(3) << c(0), c(1), c(2)).finished() / c.norm());
      }
  }
  return out;
}

/// Radial samples of Pi* K cap H over the default direction set together
/// with the arrangement rays.
inline RadialSampledBody pistar_samples(const Polytope& k, const Subspace& h, int count) {
  const int d = h.dim();
  std::vector<Vec> dirs = sphere_directions(d, count);
  for (auto& u : pistar_vertex_directions(k, h)) dirs.push_back(std::move(u));
  const Mat b = h.basis();
  const std::vector<double> rho = parallel_map(dirs.size(), [&](std::size_t i) { return pistar_radial(k, b * dirs[i]); });
  RadialSampledBody body(d);
  for (std::size_t i = 0; i < dirs.size(); ++i) body.add(dirs[i], rho[i]);
  return body;
}

inline constexpr double kPistarStability = 1e-3;

/// |Pi* K cap H| for d = dim H in {2, 3}. Inner hulls converge from below
/// and are exact up to rounding once the arrangement rays are included; the
/// uncertainty is |V_N - V_{N/2}|, N doubling from the default count up to
/// 16 times it until the relative change is at most 1e-3.
inline SampledVolume pistar_section_volume(const Polytope& k, const Subspace& h, int count = 0) {
  const int d = h.dim();
  if (d != 2 && d != 3) throw DegenerateInput("pistar_section_volume: dim H must be 2 or 3");
  if (!k.full_dimensional()) throw DegenerateInput("pistar_section_volume: body is not full-dimensional");
  if (count <= 0) count = default_sample_count(d);
  const int cap = 16 * count;
  for (int n = count;; n *= 2) {
    const double v = pistar_samples(k, h, n).volume();
    const double half_vol = pistar_samples(k, h, n / 2).volume();
    const double unc = std::abs(v - half_vol);
    if (unc <= kPistarStability * v) return {v, unc, n};
    if (n * 2 > cap) throw Unconverged("pistar_section_volume: sample cap reached before volume stabilized");
  }
}

/// |Pi* K| over the full space (n in {2, 3}).
inline SampledVolume pistar_volume(const Polytope& k) { return pistar_section_volume(k, Subspace::full(k.dim())); }

struct CrossPolytopeWitness {
  Mat frame;                 // n x d, orthonormal columns in H
  std::vector<double> radii; // rho(w_i)
  double cross_volume = 0.0; // (2^d / d!) prod rho(w_i)
  double section_volume = 0.0;
  double uncertainty = 0.0;
  double ratio = 0.0;        // |Pi* K cap H| / (d! |C|)
};

/// Orthonormal frame in H maximizing prod rho(w_i), found by multistart
/// search (16 restarts). Throws SearchFailed unless
/// d! |C| >= |Pi* K cap H| (1 - tol), tol being the sampling uncertainty.
inline CrossPolytopeWitness inscribed_cross_polytope(const Polytope& k, const Subspace& h, int restarts = 16) {
  const int d = h.dim();
  const Mat b = h.basis();
  auto objective = [&](const Mat& r) {
    const Mat w = b * r;
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += std::log(pistar_radial(k, w.col(i)));
    return s;
  };
  FrameSearchOptions opt;
  opt.restarts = restarts;
  opt.maximize = true;
  opt.seeds = {Mat::Identity(d, d)};
  const FrameSearchResult res = search_frames(d, objective, opt);

  CrossPolytopeWitness w;
  w.frame = b * res.q;
  double prod = 1.0;
  for (int i = 0; i < d; ++i) {
    w.radii.push_back(pistar_radial(k, w.frame.col(i)));
    prod *= w.radii.back();
  }
  w.cross_volume = std::pow(2.0, d) / factorial(d) * prod;
  const SampledVolume sv = pistar_section_volume(k, h);
  w.section_volume = sv.volume;
  w.uncertainty = sv.uncertainty;
  const double bound = factorial(d) * w.cross_volume;
  w.ratio = sv.volume / bound;
  if (bound < sv.volume * (1.0 - sv.uncertainty / sv.volume - 1e-9))
    throw SearchFailed("inscribed_cross_polytope: certificate d!|C| >= |Pi*K cap H| not met");
  return w;
}

/// Lower and upper reports for C(2n,n)/n^n <= |K|^(n-1) |Pi* K| <= (|B^n|/|B^(n-1)|)^n.
struct PettyZhangReport {
  InequalityReport lower;
  InequalityReport upper;
};

inline PettyZhangReport petty_zhang_check(const Polytope& k, const std::string& body_id = "body") {
  const int n = k.dim();
  if (n != 2 && n != 3) throw DegenerateInput("petty_zhang_check: n must be 2 or 3");
  const SampledVolume pv = pistar_volume(k);
  const double scale = std::pow(k.volume(), n - 1);
  const double product = scale * pv.volume;
  const double unc = scale * pv.uncertainty;
  const double lo = binomial(2 * n, n) / std::pow(n, n);
  const double hi = std::pow(unit_ball_volume(n) / unit_ball_volume(n - 1), n);
  const std::string wit = "pistar_volume=" + format_number(pv.volume) + " samples=" + std::to_string(pv.samples);
  return {make_check("petty-zhang-lower", body_id, n, lo, product, lo, unc, wit),
          make_check("petty-zhang-upper", body_id, n, product, hi, hi, unc, wit)};
}

/// |K|^(d-1) |Pi* K cap H| |P_{H-perp} K| >= C(n+d,n) / n^d.
inline InequalityReport agj_section_check(const Polytope& k, const Subspace& h, const std::string& body_id = "body") {
  const int n = k.dim(), d = h.dim();
  const SampledVolume sv = pistar_section_volume(k, h);
  const double proj = projection_volume(k, h.complement());
  const double scale = std::pow(k.volume(), d - 1) * proj;
  const double c = binomial(n + d, n) / std::pow(n, d);
  return make_check("agj", body_id, n, c, scale * sv.volume, c, scale * sv.uncertainty,
                    "d=" + std::to_string(d) + " section=" + format_number(sv.volume));
}

}  // namespace lwlab
