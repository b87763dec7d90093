#pragma once

// Sections and projections of polytopes.
//
// A hyperplane section K cap {<x,u> = t} is the convex hull of the points
// where edges of the boundary triangulation cross the hyperplane. Sections by
// lower-dimensional subspaces are taken one hyperplane at a time after
// rotating the subspace onto the leading coordinate block.

#include "lwlab/polytope.hpp"
#include "lwlab/types.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lwlab {

namespace detail {

// Crossing points of a full-dimensional polytope with {<x,u> = t}, in the
// polytope's local coordinates. Vertices within tolerance of the plane are
// included as they are.
inline std::vector<Vec> crossing_points(const Polytope& k, const Vec& u, double t) {
  const Hull& h = k.hull();
  const auto& pts = h.points;
  const double tol = 1e-12 * std::max(1.0, k.coordinate_scale());
  std::vector<double> s(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) s[i] = u.dot(pts[i]) - t;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::abs(s[i]) <= tol) out.push_back(pts[i]);
  for (const auto& [a, b] : h.edges) {
    if ((s[a] >= 0.0) == (s[b] >= 0.0)) continue;
    if (std::abs(s[a]) <= tol || std::abs(s[b]) <= tol) continue;
    const double lam = s[a] / (s[a] - s[b]);
    out.push_back(pts[a] + lam * (pts[b] - pts[a]));
  }
  return out;
}

// Enumerates monotone lattice paths from (0,0) to (a-1,b-1); each path is a
// simplex in the staircase triangulation of a product of two simplices.
template <class F>
void for_each_staircase(int a, int b, F&& f) {
  const int steps = a + b - 2;
  std::array<std::pair<int, int>, 2 * kMaxDim> path{};
  for (int mask = 0; mask < (1 << steps); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != a - 1) continue;
    int i = 0, j = 0;
    path[0] = {0, 0};
    for (int s = 0; s < steps; ++s) {
      if (mask & (1 << s))
        ++i;
      else
        ++j;
      path[s + 1] = {i, j};
    }
    f(path.data(), steps + 1);
  }
}

}  // namespace detail

/// K cap {<x,u> = t} in the coordinates of the orthonormal basis `coords`
/// of u-perp (m x (m-1)); the result lives in R^(m-1). `k` must be
/// full-dimensional. The result may be lower-dimensional or throw
/// DegenerateInput if the plane misses K.
inline Polytope slice(const Polytope& k, const Vec& u, double t, const Mat& coords) {
  if (!k.full_dimensional()) throw DegenerateInput("slice: body is not full-dimensional");
  if (k.dim() == 1) {
    // The single edge of a segment crosses the point-hyperplane in its interior.
    const double lo = k.hull().points[0](0) * u(0), hi = k.hull().points[1](0) * u(0);
    if (t < std::min(lo, hi) - 1e-12 || t > std::max(lo, hi) + 1e-12) throw EmptySection("slice: plane misses body");
    return Polytope({Vec::Zero(0)});
  }
  std::vector<Vec> pts = detail::crossing_points(k, u, t);
  if (pts.empty()) throw EmptySection("slice: plane misses body");
  std::vector<Vec> local;
  local.reserve(pts.size());
  for (const auto& p : pts) local.push_back(coords.transpose() * p);
  return Polytope(local);
}

/// (n-1)-volume of K cap {<x,theta> = t} for full-dimensional K and unit theta,
/// computed without building the section polytope: every boundary simplex
/// crossing the plane contributes the cone over its cut, from a common point
/// of the section.
inline double slice_volume(const Polytope& k, const Vec& theta, double t) {
  const int n = k.dim();
  if (!k.full_dimensional()) throw DegenerateInput("slice_volume: body is not full-dimensional");
  if (n == 1) {
    const double a = k.vertices()[0](0) * theta(0), b = k.vertices()[1](0) * theta(0);
    return (t >= std::min(a, b) && t <= std::max(a, b)) ? 1.0 : 0.0;
  }
  const Hull& h = k.hull();
  const auto& pts = h.points;
  const double tol = 1e-12 * std::max(1.0, k.coordinate_scale());
  std::array<double, 512> sbuf;
  std::vector<double> sheap;
  double* s = sbuf.data();
  if (pts.size() > sbuf.size()) {
    sheap.resize(pts.size());
    s = sheap.data();
  }
  double smin = std::numeric_limits<double>::infinity(), smax = -smin;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s[i] = theta.dot(pts[i]) - t;
    smin = std::min(smin, s[i]);
    smax = std::max(smax, s[i]);
  }
  if (smax < -tol || smin > tol) return 0.0;
  if (smax <= tol || smin >= -tol) {
    // Supporting plane: the section is the face lying in it.
    std::vector<Vec> face;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (std::abs(s[i]) <= tol) face.push_back(pts[i]);
    if (static_cast<int>(face.size()) < n) return 0.0;
    const Mat coords = Subspace::orthogonal_to(theta).basis();
    std::vector<Vec> local;
    for (const auto& p : face) local.push_back(coords.transpose() * p);
    Polytope f(local);
    return f.full_dimensional() ? f.volume() : 0.0;
  }

  Vec c = Vec::Zero(n);
  int count = 0;
  for (const auto& [a, b] : h.edges) {
    if ((s[a] >= 0.0) == (s[b] >= 0.0)) continue;
    c += pts[a] + s[a] / (s[a] - s[b]) * (pts[b] - pts[a]);
    ++count;
  }
  if (count == 0) return 0.0;
  c /= count;

  double vol = 0.0;
  std::array<int, kMaxDim> pos{}, neg{};
  Mat m(n, n);
  m.col(n - 1) = theta;
  for (const auto& f : h.simplices) {
    int a = 0, b = 0;
    for (int i = 0; i < n; ++i) {
      if (s[f.v[i]] >= 0.0)
        pos[a++] = f.v[i];
      else
        neg[b++] = f.v[i];
    }
    if (a == 0 || b == 0) continue;
    detail::for_each_staircase(a, b, [&](const std::pair<int, int>* path, int len) {
      for (int q = 0; q < len; ++q) {
        const int i = pos[path[q].first], j = neg[path[q].second];
        const double lam = s[i] / (s[i] - s[j]);
        m.col(q) = pts[i] + lam * (pts[j] - pts[i]) - c;
      }
      vol += std::abs(m.determinant());
    });
  }
  return vol / factorial(n - 1);
}

/// |K cap theta-perp|.
inline double central_section_volume(const Polytope& k, const Vec& theta) { return slice_volume(k, unit(theta), 0.0); }

namespace detail {

// K cap span(r[:, :m]) in the coordinates of those columns, where r is the
// completed basis [H | complement] of H; m >= dim H, m < n.
inline Polytope cut_to(const Polytope& k, const Mat& r, int m) {
  const int n = k.dim();
  // First cut uses the body's own hull; the normal is the last completing column.
  Polytope cur = slice(k, r.col(n - 1), 0.0, r.leftCols(n - 1));
  for (int j = n - 1; j > m; --j) {
    if (!cur.full_dimensional()) throw EmptySection("section: subspace misses the interior");
    Mat coords = Mat::Identity(j, j).leftCols(j - 1);
    cur = slice(cur, basis_vector(j, j - 1), 0.0, coords);
  }
  if (!cur.full_dimensional()) throw EmptySection("section: subspace misses the interior");
  return cur;
}

inline bool origin_interior(const Polytope& k) {
  const double tol = 1e-12 * std::max(1.0, k.coordinate_scale());
  for (const auto& f : k.hull().facets)
    if (f.offset <= tol) return false;
  return true;
}

}  // namespace detail

/// Radial function max{t : t u in K} of a full-dimensional body with 0 in
/// its interior.
inline double radial(const Polytope& k, const Vec& u) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : k.hull().facets) {
    const double c = f.normal.dot(u);
    if (c > 0.0) r = std::min(r, f.offset / c);
  }
  return r;
}

/// K cap span(H) in the orthonormal coordinates of H. Throws EmptySection if
/// span(H) misses the interior of K (a 0-dimensional H needs 0 in int K).
inline Polytope section(const Polytope& k, const Subspace& h) {
  const int n = k.dim();
  const int d = h.dim();
  if (!k.full_dimensional()) throw DegenerateInput("section: body is not full-dimensional");
  if (h.ambient_dim() != n) throw DegenerateInput("section: subspace dimension mismatch");
  if (d == n) {
    std::vector<Vec> pts;
    for (const auto& v : k.vertices()) pts.push_back(h.basis().transpose() * v);
    return Polytope(pts);
  }
  if (d == 0) {
    if (!detail::origin_interior(k)) throw EmptySection("section: 0 is not interior");
    return Polytope({Vec::Zero(0)});
  }
  return detail::cut_to(k, h.completed_basis(), d);
}

/// d-volume of K cap H. Hyperplanes use slice_volume, lines through an
/// interior origin the radial function; other subspaces are cut down to
/// dimension d + 1 first.
inline double section_volume(const Polytope& k, const Subspace& h) {
  const int n = k.dim(), d = h.dim();
  if (d == n - 1 && d >= 1) return slice_volume(k, h.complement().basis().col(0), 0.0);
  if (d == 1 && k.full_dimensional() && detail::origin_interior(k)) {
    const Vec u = h.basis().col(0);
    return radial(k, u) + radial(k, -u);
  }
  if (d >= 1 && d < n - 1 && k.full_dimensional()) {
    const Polytope cur = detail::cut_to(k, h.completed_basis(), d + 1);
    return slice_volume(cur, basis_vector(d + 1, d), 0.0);
  }
  return section(k, h).volume();
}

/// P_H K in the orthonormal coordinates of H.
inline Polytope project(const Polytope& k, const Subspace& h) {
  std::vector<Vec> pts;
  pts.reserve(k.num_vertices());
  for (const auto& v : k.vertices()) pts.push_back(h.basis().transpose() * v);
  return Polytope(pts);
}

/// |P_{theta-perp} K| by Cauchy's projection formula over the boundary.
inline double hyperplane_projection_volume(const Polytope& k, const Vec& theta) {
  if (!k.full_dimensional()) throw DegenerateInput("projection: body is not full-dimensional");
  if (k.dim() == 1) return 1.0;
  double sum = 0.0;
  for (const auto& f : k.hull().simplices) sum += f.area * std::abs(f.normal.dot(theta));
  return 0.5 * sum;
}

/// Volume of P_H K (measure 1 when H = {0}).
inline double projection_volume(const Polytope& k, const Subspace& h) {
  if (h.dim() == k.dim() - 1 && h.dim() >= 1) return hyperplane_projection_volume(k, h.complement().basis().col(0));
  const Polytope p = project(k, h);
  return p.full_dimensional() ? p.volume() : 0.0;
}

/// Ambient coordinates of a body given in the coordinates of H.
inline std::vector<Vec> embed(const Polytope& local, const Subspace& h) {
  std::vector<Vec> out;
  for (const auto& y : local.vertices()) out.push_back(h.basis() * y);
  return out;
}

}  // namespace lwlab
