#pragma once

// Section and projection ratios over orthonormal bases, uniform covers and
// the restricted frames.

#include "lwlab/centroid.hpp"
#include "lwlab/frame_search.hpp"
#include "lwlab/moments.hpp"
#include "lwlab/polytope.hpp"
#include "lwlab/section.hpp"
#include "lwlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace lwlab {

struct LambdaResult {
  double value = 0.0;
  OrthonormalBasis witness;
  double certificate = 0.0;  // value at the Z_2 principal-axes basis
  std::string method;        // "scan" or "search"
  long evaluations = 0;
  int best_restart = 0;
  double resolution = 0.0;   // scan step or final search step
  double min_vertex_gap = 0.0;
  bool resolution_ok = true;
};

/// Sorts columns by ascending |K cap w_i-perp| (stable) and makes the first
/// nonzero coordinate of each column positive.
inline Mat canonical_frame(const Polytope& k, Mat q) {
  const int n = static_cast<int>(q.cols());
  std::vector<double> sec(n);
  for (int i = 0; i < n; ++i) sec[i] = slice_volume(k, q.col(i), 0.0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sec[a] < sec[b] - 1e-12 * std::max(1.0, sec[b]); });
  Mat out(q.rows(), n);
  for (int i = 0; i < n; ++i) out.col(i) = q.col(order[i]);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < out.rows(); ++i) {
      if (std::abs(out(i, j)) > 1e-12) {
        if (out(i, j) < 0) out.col(j) = -out.col(j);
        break;
      }
    }
  }
  return out;
}

/// |K|^(n-1) / prod_i |K cap w_i-perp| for centered K.
inline double lambda_ratio(const Polytope& k, const OrthonormalBasis& q) {
  if (!is_centered(k)) throw NotNormalized("lambda_ratio: body must be centered");
  const int n = k.dim();
  double log_r = (n - 1) * std::log(k.volume());
  for (int i = 0; i < n; ++i) {
    const double s = slice_volume(k, q.col(i), 0.0);
    if (!(s > 0.0)) throw EmptySection("lambda_ratio: central section has zero volume");
    log_r -= std::log(s);
  }
  return std::exp(log_r);
}

inline OrthonormalBasis certificate_basis(const Polytope& k) { return principal_axes(z2_ellipsoid(k)); }

inline Mat planar_frame(double angle) {
  Mat q(2, 2);
  q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return q;
}

inline constexpr int kPlanarScanSteps = 10000;

/// Minimum over planar bases by an angle scan of [0, pi/2) at step
/// (pi/2) 1e-4, refined by golden-section search to 1e-10 around the best
/// scan point. The ratio is pi/2-periodic in the angle of w1.
inline LambdaResult lambda_tilde_planar(const Polytope& k) {
  if (k.dim() != 2) throw DegenerateInput("lambda_tilde_planar: body must be planar");
  if (!is_normalized(k)) throw NotNormalized("lambda_tilde_planar: body must be centered with area 1");
  const double period = 0.5 * std::numbers::pi;
  const double h = period / kPlanarScanSteps;
  auto f = [&](double a) { return lambda_ratio(k, planar_frame(a)); };

  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i < kPlanarScanSteps; ++i) {
    const double v = f(i * h);
    if (v < best_val) best_val = v, best = i;
  }
  double lo = (best - 1) * h, hi = (best + 1) * h;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  long evals = kPlanarScanSteps + 2;
  while (hi - lo > 1e-10) {
    if (f1 <= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
    ++evals;
  }
  double angle = 0.5 * (lo + hi);
  double value = f(angle);
  if (best_val < value) value = best_val, angle = best * h;

  LambdaResult r;
  r.value = value;
  r.witness = canonical_frame(k, planar_frame(std::fmod(angle + period, period)));
  r.certificate = lambda_ratio(k, certificate_basis(k));
  r.method = "scan";
  r.evaluations = evals;
  r.resolution = h;
  // Kinks sit where a section line passes a vertex, i.e. at vertex angles mod pi/2.
  std::vector<double> kinks;
  for (const auto& v : k.vertices()) kinks.push_back(std::fmod(std::atan2(v(1), v(0)) + 4 * period, period));
  std::sort(kinks.begin(), kinks.end());
  double gap = period;
  for (std::size_t i = 0; i + 1 < kinks.size(); ++i)
    if (kinks[i + 1] - kinks[i] > 1e-12) gap = std::min(gap, kinks[i + 1] - kinks[i]);
  if (kinks.size() > 1 && period - kinks.back() + kinks.front() > 1e-12)
    gap = std::min(gap, period - kinks.back() + kinks.front());
  r.min_vertex_gap = gap;
  r.resolution_ok = gap > 2.0 * h;
  return r;
}

inline FrameSearchOptions lambda_search_options(const Polytope& k, int restarts, const Mat& certificate) {
  FrameSearchOptions opt;
  opt.restarts = restarts;
  opt.seeds = {certificate, Mat::Identity(k.dim(), k.dim())};
  return opt;
}

/// Upper bound on min_Q lambda_ratio(K, Q) by multistart search; restart 0
/// starts at the Z_2 principal axes, restart 1 at the coordinate basis.
inline LambdaResult lambda_tilde(const Polytope& k, int restarts = 32) {
  const int n = k.dim();
  if (n > 5) throw DegenerateInput("lambda_tilde: n must be at most 5");
  if (!is_normalized(k)) throw NotNormalized("lambda_tilde: body must be centered with volume 1");
  const Mat cert = certificate_basis(k);
  auto objective = [&](const Mat& q) {
    double log_r = 0.0;
    for (int i = 0; i < n; ++i) log_r -= std::log(slice_volume(k, q.col(i), 0.0));
    return log_r;
  };
  const FrameSearchResult res = search_frames(n, objective, lambda_search_options(k, restarts, cert));
  LambdaResult r;
  r.certificate = lambda_ratio(k, cert);
  r.witness = canonical_frame(k, res.q);
  r.value = std::min(lambda_ratio(k, r.witness), r.certificate);
  r.method = "search";
  r.evaluations = res.evaluations;
  r.best_restart = res.best_restart;
  r.resolution = res.final_step;
  return r;
}

/// Sets S_j (1-based indices) with weights p_j.
struct UniformCover {
  std::vector<std::vector<int>> sets;
  std::vector<double> weights;
};

struct CoverInfo {
  double p = 0.0;         // sum of weights
  double weighted_dim = 0.0;  // sum p_j |S_j|, equal to n
};

/// Checks sum_j p_j chi_{S_j}(i) = 1 for every i in [n] (1e-12).
inline CoverInfo validate_cover(const UniformCover& s, int n) {
  if (s.sets.size() != s.weights.size() || s.sets.empty())
    throw NotAUniformCover(0, "cover: sets and weights must be non-empty and of equal length");
  std::vector<double> cover(n, 0.0);
  CoverInfo info;
  for (std::size_t j = 0; j < s.sets.size(); ++j) {
    if (!(s.weights[j] > 0.0)) throw NotAUniformCover(s.sets[j].empty() ? 0 : s.sets[j][0], "cover: weights must be positive");
    std::vector<int> seen;
    for (int i : s.sets[j]) {
      if (i < 1 || i > n) throw NotAUniformCover(i, "cover: index " + std::to_string(i) + " outside [1, n]");
      if (std::find(seen.begin(), seen.end(), i) != seen.end())
        throw NotAUniformCover(i, "cover: index " + std::to_string(i) + " repeated in a set");
      seen.push_back(i);
      cover[i - 1] += s.weights[j];
    }
    info.p += s.weights[j];
    info.weighted_dim += s.weights[j] * static_cast<double>(s.sets[j].size());
  }
  for (int i = 0; i < n; ++i)
    if (std::abs(cover[i] - 1.0) > 1e-12)
      throw NotAUniformCover(i + 1, "cover: coordinate " + std::to_string(i + 1) + " is covered with weight " +
                                        std::to_string(cover[i]));
  return info;
}

inline UniformCover singleton_cover(int n) {
  UniformCover s;
  for (int i = 1; i <= n; ++i) s.sets.push_back({i}), s.weights.push_back(1.0);
  return s;
}

inline UniformCover trivial_cover(int n) {
  UniformCover s;
  s.sets.push_back({});
  for (int i = 1; i <= n; ++i) s.sets[0].push_back(i);
  s.weights = {1.0};
  return s;
}

/// Volume of K cap H_j-perp, H_j spanned by the columns of q indexed by S_j.
inline double cover_section_volume(const Polytope& k, const std::vector<int>& set, const Mat& q) {
  const int n = k.dim();
  std::vector<bool> in(n, false);
  for (int i : set) in[i - 1] = true;
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (!in[i]) rest.push_back(i);
  if (rest.size() == static_cast<std::size_t>(n - 1)) {
    for (int i = 0; i < n; ++i)
      if (in[i]) return slice_volume(k, q.col(i), 0.0);
  }
  Mat b(n, static_cast<int>(rest.size()));
  for (std::size_t c = 0; c < rest.size(); ++c) b.col(static_cast<int>(c)) = q.col(rest[c]);
  return section_volume(k, Subspace::from_basis(b));
}

inline double cover_log_ratio(const Polytope& k, const UniformCover& s, const CoverInfo& info, const Mat& q) {
  double log_r = (info.p - 1.0) * std::log(k.volume());
  for (std::size_t j = 0; j < s.sets.size(); ++j) {
    const double v = cover_section_volume(k, s.sets[j], q);
    if (!(v > 0.0)) throw EmptySection("lambda_cover_ratio: section has zero volume");
    log_r -= s.weights[j] * std::log(v);
  }
  return log_r;
}

/// |K|^(p-1) / prod_j |K cap H_j-perp|^(p_j).
inline double lambda_cover_ratio(const Polytope& k, const UniformCover& s, const OrthonormalBasis& q) {
  if (!is_centered(k)) throw NotNormalized("lambda_cover_ratio: body must be centered");
  const CoverInfo info = validate_cover(s, k.dim());
  return std::exp(cover_log_ratio(k, s, info, q));
}

/// Cover analogue of lambda_tilde, with the same optimizer and certificate.
inline LambdaResult lambda_cover_search(const Polytope& k, const UniformCover& s, int restarts = 32) {
  const int n = k.dim();
  if (n > 5) throw DegenerateInput("lambda_cover_search: n must be at most 5");
  if (!is_normalized(k)) throw NotNormalized("lambda_cover_search: body must be centered with volume 1");
  const CoverInfo info = validate_cover(s, n);
  const Mat cert = certificate_basis(k);
  auto objective = [&](const Mat& q) { return cover_log_ratio(k, s, info, q); };
  const FrameSearchResult res = search_frames(n, objective, lambda_search_options(k, restarts, cert));
  LambdaResult r;
  r.certificate = std::exp(cover_log_ratio(k, s, info, cert));
  r.witness = canonical_frame(k, res.q);
  r.value = std::min(std::exp(cover_log_ratio(k, s, info, r.witness)), r.certificate);
  r.method = "search";
  r.evaluations = res.evaluations;
  r.best_restart = res.best_restart;
  r.resolution = res.final_step;
  return r;
}

/// |K|^(n-1) / prod_i |P_{w_i-perp} K|.
inline double lw_ratio(const Polytope& k, const Mat& q) {
  const int n = k.dim();
  double log_r = (n - 1) * std::log(k.volume());
  for (int i = 0; i < n; ++i) log_r -= std::log(hyperplane_projection_volume(k, q.col(i)));
  return std::exp(log_r);
}

/// Lower bound on the reverse Loomis-Whitney constant of K: the maximum of
/// lw_ratio over bases found by multistart search.
inline LambdaResult lambda_lw_search(const Polytope& k, int restarts = 32) {
  const int n = k.dim();
  if (n > 5) throw DegenerateInput("lambda_lw_search: n must be at most 5");
  if (!k.full_dimensional()) throw DegenerateInput("lambda_lw_search: body is not full-dimensional");
  const Mat cert = principal_axes(Ellipsoid{normalized_covariance(k)});
  auto objective = [&](const Mat& q) {
    double log_r = 0.0;
    for (int i = 0; i < n; ++i) log_r -= std::log(hyperplane_projection_volume(k, q.col(i)));
    return log_r;
  };
  FrameSearchOptions opt = lambda_search_options(k, restarts, cert);
  opt.maximize = true;
  const FrameSearchResult res = search_frames(n, objective, opt);
  LambdaResult r;
  r.certificate = lw_ratio(k, cert);
  r.witness = canonical_frame(k, res.q);
  r.value = std::max(lw_ratio(k, r.witness), r.certificate);
  r.method = "search";
  r.evaluations = res.evaluations;
  r.best_restart = res.best_restart;
  r.resolution = res.final_step;
  return r;
}

struct SectionFrameResult {
  Mat frame;               // n x d, orthonormal basis of H
  double lw_value = 0.0;   // reverse LW ratio of P_H Z_d(K) at the frame
  double lhs = 0.0;        // |K| |K cap H-perp|^(d-1)
  double product = 0.0;    // prod_j |K cap (H-perp + <w_j>)|
  double c_emp = 0.0;      // lhs / product
  double uncertainty = 0.0;  // relative volume uncertainty of P_H Z_d(K)
};

/// Evaluates the section side at a given frame of H (n x d).
inline SectionFrameResult section_frame_evaluate(const Polytope& k, const Subspace& h, const Mat& frame) {
  const int n = k.dim(), d = h.dim();
  const Subspace perp = h.complement();
  SectionFrameResult r;
  r.frame = frame;
  r.lhs = k.volume() * std::pow(section_volume(k, perp), d - 1);
  r.product = 1.0;
  for (int j = 0; j < d; ++j) {
    Mat b(n, n - d + 1);
    b.leftCols(n - d) = perp.basis();
    b.col(n - d) = frame.col(j);
    r.product *= section_volume(k, Subspace::from_basis(b));
  }
  r.c_emp = r.lhs / r.product;
  return r;
}

/// Frame of H from the reverse LW search on P_H Z_d(K), and the empirical
/// constant lhs / product at that frame.
inline SectionFrameResult theorem4_frame(const Polytope& k, const Subspace& h, int restarts = 32) {
  const int n = k.dim(), d = h.dim();
  if (d != 2 && d != 3) throw DegenerateInput("theorem4_frame: dim H must be 2 or 3");
  if (n > 4) throw DegenerateInput("theorem4_frame: n must be at most 4");
  const SupportSampledBody z = projected_zp_body(k, static_cast<double>(d), h);
  const Polytope pz = z.outer();
  const LambdaResult lw = lambda_lw_search(pz, restarts);
  SectionFrameResult r = section_frame_evaluate(k, h, h.basis() * lw.witness);
  r.lw_value = lw.value;
  r.uncertainty = z.uncertainty / pz.volume();
  return r;
}

}  // namespace lwlab
