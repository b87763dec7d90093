#pragma once

#include "lwlab/hull.hpp"
#include "lwlab/types.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

namespace lwlab {

/// Linear subspace of R^n carried by an orthonormal basis (n x d, d may be 0).
class Subspace {
 public:
  Subspace() = default;

  /// Orthonormalizes `vectors` (modified Gram-Schmidt, two passes).
  static Subspace span(const std::vector<Vec>& vectors, int n) {
    Mat b(n, static_cast<int>(vectors.size()));
    int d = 0;
    for (const auto& v : vectors) {
      Vec r = v;
      for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k < d; ++k) r -= b.col(k).dot(r) * b.col(k);
      const double nr = r.norm();
      if (nr <= 1e-12 * std::max(1.0, v.norm())) throw DegenerateInput("Subspace::span: dependent vectors");
      b.col(d++) = r / nr;
    }
    Subspace s;
    s.basis_ = b.leftCols(d);
    return s;
  }

  /// Uses `basis` as given when its columns are orthonormal to 1e-12,
  /// otherwise orthonormalizes them.
  static Subspace from_basis(const Mat& basis) {
    const int d = static_cast<int>(basis.cols());
    if (d == 0 || (basis.transpose() * basis - Mat::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12) {
      Subspace s;
      s.basis_ = basis;
      return s;
    }
    std::vector<Vec> cols;
    for (int k = 0; k < d; ++k) cols.push_back(basis.col(k));
    return span(cols, static_cast<int>(basis.rows()));
  }

  /// span{e_i : i in idx}, 0-based indices.
  static Subspace coordinate(int n, const std::vector<int>& idx) {
    Mat b = Mat::Zero(n, static_cast<int>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) b(idx[k], static_cast<int>(k)) = 1.0;
    Subspace s;
    s.basis_ = b;
    return s;
  }

  static Subspace full(int n) {
    Subspace s;
    s.basis_ = Mat::Identity(n, n);
    return s;
  }

  static Subspace zero(int n) {
    Subspace s;
    s.basis_ = Mat(n, 0);
    return s;
  }

  /// theta-perp.
  static Subspace orthogonal_to(const Vec& theta) { return span({theta}, static_cast<int>(theta.size())).complement(); }

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  /// n x n orthogonal matrix whose first dim() columns are basis().
  Mat completed_basis() const {
    const int n = ambient_dim();
    const int d = dim();
    if (d == 0) return Mat::Identity(n, n);
    Eigen::HouseholderQR<Mat> qr(basis_);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    Mat out(n, n);
    out.leftCols(d) = basis_;
    out.rightCols(n - d) = q.rightCols(n - d);
    return out;
  }

  Subspace complement() const {
    const int n = ambient_dim();
    Subspace s;
    s.basis_ = completed_basis().rightCols(n - dim());
    return s;
  }

 private:
  Mat basis_;
};

/// x -> linear * x + translation.
struct AffineMap {
  Mat linear;
  Vec translation;

  static AffineMap identity(int n) { return {Mat::Identity(n, n), Vec::Zero(n)}; }
  Vec operator()(const Vec& x) const { return linear * x + translation; }
  double det() const { return linear.determinant(); }

  /// (this o inner)(x) = this(inner(x)).
  AffineMap after(const AffineMap& inner) const {
    return {linear * inner.linear, linear * inner.translation + translation};
  }
};

struct Simplex {
  std::array<int, kMaxDim + 1> v{};  // first dim+1 entries are used
  double volume = 0.0;
};

/// Partition of a body into simplices over a shared point list, in the
/// intrinsic coordinates of the body.
struct SimplicialDecomposition {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<Simplex> simplices;

  double total_volume() const {
    double v = 0.0;
    for (const auto& s : simplices) v += s.volume;
    return v;
  }
};

/// A convex polytope given by its vertices. Construction canonicalizes: the
/// hull is computed in the affine hull of the points, and only extreme
/// points are kept. Lower-dimensional bodies carry intrinsic_dim() < dim().
/// Instances are immutable and cheap to copy.
class Polytope {
 public:
  Polytope() = default;

  explicit Polytope(const std::vector<Vec>& points) {
    if (points.empty()) throw DegenerateInput("Polytope: no points");
    auto d = std::make_shared<Data>();
    d->n = static_cast<int>(points.front().size());
    if (d->n < 0 || d->n > kMaxDim) throw DegenerateInput("Polytope: dimension out of range");
    if (d->n == 0) {
      // R^0 holds a single point of measure 1.
      d->origin = d->barycenter = Vec::Zero(0);
      d->frame = Mat(0, 0);
      d->vertices = d->local = {Vec::Zero(0)};
      d->volume = 1.0;
      d->decomposition.points = d->local;
      d->decomposition.simplices = {Simplex{{0}, 1.0}};
      data_ = std::move(d);
      return;
    }
    for (const auto& p : points) {
      if (p.size() != d->n) throw DegenerateInput("Polytope: mixed dimensions");
      if (!p.allFinite()) throw DegenerateInput("Polytope: non-finite coordinate");
    }
    const double eps = 1e-10 * std::max(detail::coordinate_scale(points), 1e-300);
    const std::vector<int> basis = detail::greedy_affine_basis(points, eps);
    d->k = static_cast<int>(basis.size()) - 1;
    d->origin = points[basis[0]];
    if (d->k == d->n) {
      d->origin = Vec::Zero(d->n);
      d->frame = Mat::Identity(d->n, d->n);
    } else {
      std::vector<Vec> dirs;
      for (int i = 1; i <= d->k; ++i) dirs.push_back(points[basis[i]] - points[basis[0]]);
      d->frame = d->k > 0 ? Subspace::span(dirs, d->n).basis() : Mat(d->n, 0);
    }

    if (d->k == 0) {
      d->vertices = {points[basis[0]]};
      d->local = {Vec::Zero(0)};
      d->volume = 1.0;
      d->barycenter = points[basis[0]];
      d->decomposition.dim = 0;
      d->decomposition.points = d->local;
      d->decomposition.simplices = {Simplex{{0}, 1.0}};
    } else {
      std::vector<Vec> local;
      local.reserve(points.size());
      if (d->k == d->n) {
        local = points;
      } else {
        for (const auto& p : points) local.push_back(d->frame.transpose() * (p - d->origin));
      }
      d->hull = convex_hull(local);
      d->local = d->hull.points;
      for (const auto& y : d->local) d->vertices.push_back(d->k == d->n ? y : Vec(d->origin + d->frame * y));
      d->decomposition = fan_triangulation(d->hull);
      Vec bar = Vec::Zero(d->k);
      double vol = 0.0;
      for (const auto& s : d->decomposition.simplices) {
        Vec c = Vec::Zero(d->k);
        for (int i = 0; i <= d->k; ++i) c += d->local[s.v[i]];
        bar += s.volume * c / (d->k + 1);
        vol += s.volume;
      }
      d->volume = vol;
      bar /= vol;
      d->barycenter = d->k == d->n ? bar : Vec(d->origin + d->frame * bar);
    }
    data_ = std::move(d);
  }

  int dim() const { return data_->n; }
  int intrinsic_dim() const { return data_->k; }
  bool full_dimensional() const { return data_->k == data_->n; }
  const std::vector<Vec>& vertices() const { return data_->vertices; }
  std::size_t num_vertices() const { return data_->vertices.size(); }

  /// Hull in intrinsic coordinates; only meaningful for intrinsic_dim() >= 1.
  const Hull& hull() const { return data_->hull; }
  /// Vertices in intrinsic coordinates (same order as vertices()).
  const std::vector<Vec>& local_vertices() const { return data_->local; }
  /// ambient point = origin() + frame() * local point.
  const Vec& origin() const { return data_->origin; }
  const Mat& frame() const { return data_->frame; }

  /// intrinsic_dim()-dimensional volume; a single point has measure 1.
  double volume() const { return data_->volume; }
  const Vec& barycenter() const { return data_->barycenter; }
  const SimplicialDecomposition& decomposition() const { return data_->decomposition; }

  double coordinate_scale() const {
    double s = 0.0;
    for (const auto& v : data_->vertices)
      if (v.size() > 0) s = std::max(s, v.cwiseAbs().maxCoeff());
    return s;
  }

 private:
  struct Data {
    int n = 0;
    int k = 0;
    Vec origin;
    Mat frame;
    std::vector<Vec> vertices;
    std::vector<Vec> local;
    Hull hull;
    SimplicialDecomposition decomposition;
    double volume = 0.0;
    Vec barycenter;
  };

  // Fan from the first hull vertex over every boundary simplex not
  // incident to it; a simplex body yields itself.
  static SimplicialDecomposition fan_triangulation(const Hull& h) {
    SimplicialDecomposition sd;
    sd.dim = h.dim;
    sd.points = h.points;
    const int k = h.dim;
    if (k == 1) {
      sd.simplices.push_back(Simplex{{0, 1}, std::abs(h.points[1](0) - h.points[0](0))});
      return sd;
    }
    double scale = 0.0;
    for (const auto& p : h.points) scale = std::max(scale, (p - h.points[0]).norm());
    const double tiny = 1e-13 * std::pow(scale, k) / factorial(k);
    for (const auto& f : h.simplices) {
      bool incident = false;
      for (int i = 0; i < k; ++i) incident |= (f.v[i] == 0);
      if (incident) continue;
      Mat m(k, k);
      for (int i = 0; i < k; ++i) m.col(i) = h.points[f.v[i]] - h.points[0];
      const double vol = std::abs(m.determinant()) / factorial(k);
      if (vol <= tiny) continue;
      Simplex s;
      s.v[0] = 0;
      for (int i = 0; i < k; ++i) s.v[i + 1] = f.v[i];
      s.volume = vol;
      sd.simplices.push_back(s);
    }
    return sd;
  }

  std::shared_ptr<const Data> data_;
};

/// Full-dimensional hull of `points`; throws DegenerateInput otherwise.
inline Polytope make_body(const std::vector<Vec>& points) {
  Polytope p(points);
  if (!p.full_dimensional())
    throw DegenerateInput("body has affine dimension " + std::to_string(p.intrinsic_dim()) + " < " +
                          std::to_string(p.dim()));
  return p;
}

inline SimplicialDecomposition triangulate(const Polytope& k) {
  if (!k.full_dimensional()) throw DegenerateInput("triangulate: body is not full-dimensional");
  return k.decomposition();
}

inline double volume(const Polytope& k) { return k.volume(); }
inline Vec barycenter(const Polytope& k) { return k.barycenter(); }

inline double support(const Polytope& k, const Vec& y) {
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& v : k.vertices()) h = std::max(h, v.dot(y));
  return h;
}

inline Polytope apply_map(const Polytope& k, const AffineMap& a) {
  if (std::abs(a.det()) <= 1e-12) throw SingularMap("apply_map: |det| <= 1e-12");
  std::vector<Vec> pts;
  pts.reserve(k.num_vertices());
  for (const auto& v : k.vertices()) pts.push_back(a(v));
  return Polytope(pts);
}

inline Polytope apply_linear(const Polytope& k, const Mat& t) {
  return apply_map(k, {t, Vec::Zero(k.dim())});
}

inline Polytope translate(const Polytope& k, const Vec& t) {
  return apply_map(k, {Mat::Identity(k.dim(), k.dim()), t});
}

/// K' = s (K - bar K) with |K'| = 1, together with the map achieving it.
inline std::pair<Polytope, AffineMap> normalize(const Polytope& k) {
  if (!k.full_dimensional()) throw DegenerateInput("normalize: body is not full-dimensional");
  const int n = k.dim();
  const double s = std::pow(k.volume(), -1.0 / n);
  AffineMap m{s * Mat::Identity(n, n), -s * k.barycenter()};
  return {apply_map(k, m), m};
}

inline bool is_centered(const Polytope& k, double tol = 1e-9) {
  if (k.dim() == 0) return true;
  return k.barycenter().cwiseAbs().maxCoeff() <= tol * std::max(1.0, k.coordinate_scale());
}

inline bool is_normalized(const Polytope& k, double tol = 1e-9) {
  return k.full_dimensional() && std::abs(k.volume() - 1.0) <= tol && is_centered(k, tol);
}

/// K = -K up to tolerance.
inline bool is_symmetric(const Polytope& k, double tol = 1e-9) {
  const double s = tol * std::max(1.0, k.coordinate_scale());
  for (const auto& v : k.vertices()) {
    bool found = false;
    for (const auto& w : k.vertices())
      if ((v + w).cwiseAbs().maxCoeff() <= s) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace lwlab
