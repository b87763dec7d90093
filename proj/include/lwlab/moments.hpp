#pragma once

#include "lwlab/polytope.hpp"
#include "lwlab/section.hpp"
#include "lwlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace lwlab {

/// Columns w_1..w_n of an orthogonal matrix.
using OrthonormalBasis = Mat;

inline double orthonormality_error(const Mat& q) {
  const int d = static_cast<int>(q.cols());
  return (q.transpose() * q - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
}

/// Volume of the Euclidean unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Isotropic constant of B_2^n, the smallest among all n-dimensional bodies.
inline double ball_isotropic_constant(int n) {
  const double r2 = std::pow(unit_ball_volume(n), -2.0 / n);
  return std::sqrt(r2 / (n + 2));
}

/// Hensley lower constant: the cube in any direction attains it.
inline double hensley_c1() { return 1.0 / (2.0 * std::sqrt(3.0)); }
/// Hensley upper constant in R^n: double cones attain it.
inline double hensley_c2(int n) { return n / std::sqrt(2.0 * (n + 1) * (n + 2)); }

/// Integral of x x^T over K (about the origin, no normalization), summed
/// over the simplicial decomposition.
inline Mat second_moment_matrix(const Polytope& k) {
  if (!k.full_dimensional()) throw DegenerateInput("second moments need a full-dimensional body");
  const int n = k.dim();
  const auto& sd = k.decomposition();
  Mat m = Mat::Zero(n, n);
  for (const auto& s : sd.simplices) {
    Mat acc = Mat::Zero(n, n);
    Vec sum = Vec::Zero(n);
    for (int i = 0; i <= n; ++i) {
      const Vec& v = sd.points[s.v[i]];
      acc.noalias() += v * v.transpose();
      sum += v;
    }
    acc.noalias() += sum * sum.transpose();
    m += s.volume / ((n + 1) * (n + 2)) * acc;
  }
  return m;
}

/// M_ij = int_K x_i x_j dx for a centered, volume-1 body.
struct CovarianceMatrix {
  Mat m;
};

inline CovarianceMatrix covariance(const Polytope& k) {
  if (!is_normalized(k)) throw NotNormalized("covariance: body must be centered with volume 1");
  return {second_moment_matrix(k)};
}

/// Covariance of normalize(K) without rebuilding the body.
inline Mat normalized_covariance(const Polytope& k) {
  const int n = k.dim();
  const double vol = k.volume();
  const Vec& b = k.barycenter();
  const Mat centered = second_moment_matrix(k) - vol * b * b.transpose();
  return std::pow(vol, -(n + 2.0) / n) * centered;
}

/// L_K = det(Cov(normalize K))^(1/2n); affine invariant.
inline double isotropic_constant(const Polytope& k) {
  const int n = k.dim();
  return std::pow(normalized_covariance(k).determinant(), 1.0 / (2 * n));
}

struct IsotropicData {
  AffineMap transform;    // K -> isotropic image
  double L = 0.0;         // isotropic constant
  double residual = 0.0;  // max |Cov(image) - L^2 I|
};

namespace detail {

inline void symmetric_eigen(const Mat& m, Vec& values, Mat& vectors) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  values = es.eigenvalues();
  vectors = es.eigenvectors();
}

}  // namespace detail

/// T = det(M)^(1/2n) M^(-1/2) applied after normalize, M = Cov(normalize K).
inline IsotropicData isotropic_transform(const Polytope& k) {
  const int n = k.dim();
  auto [kn, norm_map] = normalize(k);
  const Mat m = second_moment_matrix(kn);
  Vec lam;
  Mat v;
  detail::symmetric_eigen(m, lam, v);
  if (lam.minCoeff() <= 0.0 || lam.maxCoeff() / lam.minCoeff() > 1e12)
    throw IllConditioned("isotropic_transform: covariance condition number exceeds 1e12");
  const double det = lam.prod();
  const double L = std::pow(det, 1.0 / (2 * n));
  Vec inv_sqrt = lam.cwiseSqrt().cwiseInverse();
  const Mat t = L * v * inv_sqrt.asDiagonal() * v.transpose();
  IsotropicData out;
  out.transform = AffineMap{t, Vec::Zero(n)}.after(norm_map);
  out.L = L;
  const Mat image_cov = t * m * t.transpose();
  out.residual = (image_cov - L * L * Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  return out;
}

/// Ellipsoid with support function h(y) = sqrt(y^T M y).
struct Ellipsoid {
  Mat m;

  double support(const Vec& y) const { return std::sqrt(std::max(0.0, y.dot(m * y))); }
  double volume() const { return unit_ball_volume(static_cast<int>(m.rows())) * std::sqrt(m.determinant()); }
};

/// Z_2(K) for a centered, volume-1 body.
inline Ellipsoid z2_ellipsoid(const Polytope& k) { return {covariance(k).m}; }

/// Eigenvectors of E by descending eigenvalue. Eigenvalues whose relative gap
/// is below 1e-10 share an eigenspace; its basis is taken by Gram-Schmidt of
/// the coordinate axes in index order. First nonzero coordinate is positive.
inline OrthonormalBasis principal_axes(const Ellipsoid& e) {
  const int n = static_cast<int>(e.m.rows());
  Vec lam;
  Mat v;
  detail::symmetric_eigen(e.m, lam, v);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = n - 1 - i;  // SelfAdjointEigenSolver sorts ascending
  const double top = std::max(std::abs(lam(order[0])), 1e-300);

  Mat out(n, n);
  int col = 0;
  for (int start = 0; start < n;) {
    int end = start + 1;
    while (end < n && (lam(order[end - 1]) - lam(order[end])) < 1e-10 * top) ++end;
    const int g = end - start;
    if (g == 1) {
      out.col(col++) = v.col(order[start]);
    } else {
      Mat u(n, g);
      for (int j = 0; j < g; ++j) u.col(j) = v.col(order[start + j]);
      const Mat proj = u * u.transpose();
      int found = 0;
      for (int axis = 0; axis < n && found < g; ++axis) {
        Vec r = proj.col(axis);
        for (int pass = 0; pass < 2; ++pass)
          for (int j = col - found; j < col; ++j) r -= out.col(j).dot(r) * out.col(j);
        if (r.norm() > 1e-8) {
          out.col(col++) = r / r.norm();
          ++found;
        }
      }
    }
    start = end;
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(out(i, j)) > 1e-12) {
        if (out(i, j) < 0) out.col(j) = -out.col(j);
        break;
      }
    }
  }
  return out;
}

/// h_{Z_2 K}(theta) |K cap theta-perp| given the covariance of K.
inline double hensley_product(const Polytope& k, const CovarianceMatrix& cov, const Vec& theta) {
  const Vec u = unit(theta);
  return std::sqrt(u.dot(cov.m * u)) * slice_volume(k, u, 0.0);
}

/// h_{Z_2 K}(theta) |K cap theta-perp|; lies in [hensley_c1(), hensley_c2(n)].
inline double hensley_product(const Polytope& k, const Vec& theta) { return hensley_product(k, covariance(k), theta); }

}  // namespace lwlab
