#pragma once

// Quickhull in dimensions 1..kMaxDim.
//
// The boundary is kept as a simplicial complex (every facet has exactly d
// vertices). Coplanar simplicial facets are merged afterwards into the facet
// planes reported in `Hull::facets`. Points within `eps` of the current hull
// are treated as interior; after the build, vertices whose incident facet
// normals do not span R^d are dropped and the hull is rebuilt from the
// remaining extreme points.

#include "lwlab/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace lwlab {

struct HullSimplex {
  std::array<int, kMaxDim> v{};  // first `dim` entries are used
  Vec normal;                    // outward unit normal
  double offset = 0.0;           // normal . x <= offset on the body
  double area = 0.0;             // (dim-1)-volume of the simplex
};

struct HullFacet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> vertices;
};

struct Hull {
  int dim = 0;
  std::vector<Vec> points;  // extreme points only
  std::vector<HullSimplex> simplices;
  std::vector<HullFacet> facets;  // coplanar simplices merged
  std::vector<std::pair<int, int>> edges;
  Vec interior;
  double eps = 0.0;
};

namespace detail {

inline double coordinate_scale(const std::vector<Vec>& pts) {
  const int d = static_cast<int>(pts.front().size());
  double scale = 0.0;
  for (int k = 0; k < d; ++k) {
    double lo = pts.front()(k), hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p(k));
      hi = std::max(hi, p(k));
      scale = std::max(scale, std::abs(p(k)));
    }
    scale = std::max(scale, hi - lo);
  }
  return scale;
}

// Indices of up to d+1 affinely independent points, chosen greedily by
// distance from the affine span of the ones already chosen. The returned
// size minus one is the affine dimension of the point set.
inline std::vector<int> greedy_affine_basis(const std::vector<Vec>& pts, double eps) {
  const int m = static_cast<int>(pts.size());
  const int d = static_cast<int>(pts.front().size());
  std::vector<int> chosen;
  int i0 = 0;
  for (int i = 1; i < m; ++i)
    if (pts[i](0) < pts[i0](0)) i0 = i;
  chosen.push_back(i0);
  std::vector<Vec> q;  // orthonormal directions spanned so far
  while (static_cast<int>(chosen.size()) <= d) {
    int best = -1;
    double best_r = eps;
    Vec best_res;
    for (int i = 0; i < m; ++i) {
      Vec r = pts[i] - pts[i0];
      for (const auto& b : q) r -= b.dot(r) * b;
      for (const auto& b : q) r -= b.dot(r) * b;  // second pass for stability
      const double rn = r.norm();
      if (rn > best_r) {
        best_r = rn;
        best = i;
        best_res = r;
      }
    }
    if (best < 0) break;
    chosen.push_back(best);
    q.push_back(best_res / best_r);
  }
  return chosen;
}

// Unit normal of the hyperplane through d points in R^d, oriented so that
// `inside` lies on the negative side.
inline void hyperplane_through(const std::vector<Vec>& pts, const int* idx, int d, const Vec& inside,
                               Vec& normal, double& offset) {
  if (d == 1) {
    normal = Vec::Ones(1);
    offset = pts[idx[0]](0);
  } else {
    Mat a(d, d - 1);
    for (int k = 1; k < d; ++k) a.col(k - 1) = pts[idx[k]] - pts[idx[0]];
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    normal = q.col(d - 1);
    offset = normal.dot(pts[idx[0]]);
  }
  if (normal.dot(inside) - offset > 0.0) {
    normal = -normal;
    offset = -offset;
  }
}

inline double simplex_area(const std::vector<Vec>& pts, const int* idx, int d, const Vec& normal) {
  if (d == 1) return 1.0;
  Mat m(d, d);
  for (int k = 1; k < d; ++k) m.col(k - 1) = pts[idx[k]] - pts[idx[0]];
  m.col(d - 1) = normal;
  return std::abs(m.determinant()) / factorial(d - 1);
}

struct QhFacet {
  std::array<int, kMaxDim> v{};
  std::array<int, kMaxDim> nb{};
  Vec normal;
  double offset = 0.0;
  std::vector<int> outside;
  bool alive = true;
  int visit = -1;
  double dist(const Vec& p) const { return normal.dot(p) - offset; }
};

inline Hull segment_hull(const std::vector<Vec>& pts, double eps) {
  int lo = 0, hi = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    if (pts[i](0) < pts[lo](0)) lo = i;
    if (pts[i](0) > pts[hi](0)) hi = i;
  }
  if (pts[hi](0) - pts[lo](0) <= eps) throw DegenerateInput("convex_hull: points do not span R^1");
  Hull h;
  h.dim = 1;
  h.eps = eps;
  h.points = {pts[lo], pts[hi]};
  HullSimplex a, b;
  a.v[0] = 0;
  a.normal = -Vec::Ones(1);
  a.offset = -pts[lo](0);
  a.area = 1.0;
  b.v[0] = 1;
  b.normal = Vec::Ones(1);
  b.offset = pts[hi](0);
  b.area = 1.0;
  h.simplices = {a, b};
  h.facets = {{a.normal, a.offset, {0}}, {b.normal, b.offset, {1}}};
  h.edges = {{0, 1}};
  h.interior = 0.5 * (pts[lo] + pts[hi]);
  return h;
}

inline Hull quickhull(const std::vector<Vec>& pts, bool filter_extreme) {
  const int m = static_cast<int>(pts.size());
  const int d = static_cast<int>(pts.front().size());
  const double scale = coordinate_scale(pts);
  const double eps = 1e-10 * std::max(scale, 1e-300);
  if (d == 1) return segment_hull(pts, eps);

  const std::vector<int> simplex = greedy_affine_basis(pts, eps);
  if (static_cast<int>(simplex.size()) < d + 1)
    throw DegenerateInput("convex_hull: affine hull has dimension " +
                          std::to_string(simplex.size() - 1) + " < " + std::to_string(d));

  Vec interior = Vec::Zero(d);
  for (int s : simplex) interior += pts[s];
  interior /= (d + 1);

  std::vector<QhFacet> facets;
  facets.reserve(8 * m);
  for (int i = 0; i <= d; ++i) {
    QhFacet f;
    int slot = 0;
    for (int j = 0; j <= d; ++j) {
      if (j == i) continue;
      f.v[slot] = simplex[j];
      f.nb[slot] = j;  // facet omitting simplex[j]
      ++slot;
    }
    hyperplane_through(pts, f.v.data(), d, interior, f.normal, f.offset);
    facets.push_back(std::move(f));
  }

  std::vector<char> in_simplex(m, 0);
  for (int s : simplex) in_simplex[s] = 1;
  for (int i = 0; i < m; ++i) {
    if (in_simplex[i]) continue;
    for (auto& f : facets) {
      if (f.dist(pts[i]) > eps) {
        f.outside.push_back(i);
        break;
      }
    }
  }

  std::deque<int> work;
  for (int i = 0; i <= d; ++i)
    if (!facets[i].outside.empty()) work.push_back(i);

  int stamp = 0;
  std::vector<int> visible;
  std::vector<std::array<int, 3>> horizon;  // visible facet, slot, neighbour
  std::map<std::array<int, kMaxDim>, std::pair<int, int>> open_ridges;

  while (!work.empty()) {
    const int fid = work.front();
    work.pop_front();
    if (!facets[fid].alive || facets[fid].outside.empty()) continue;

    int apex = -1;
    double best = -1.0;
    for (int p : facets[fid].outside) {
      const double dd = facets[fid].dist(pts[p]);
      if (dd > best) {
        best = dd;
        apex = p;
      }
    }
    const Vec& ap = pts[apex];

    ++stamp;
    visible.clear();
    horizon.clear();
    visible.push_back(fid);
    facets[fid].visit = stamp;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const int vf = visible[q];
      for (int k = 0; k < d; ++k) {
        const int nb = facets[vf].nb[k];
        if (facets[nb].visit == stamp) continue;
        if (facets[nb].dist(ap) > eps) {
          facets[nb].visit = stamp;
          visible.push_back(nb);
        }
      }
    }
    for (int vf : visible) {
      for (int k = 0; k < d; ++k) {
        const int nb = facets[vf].nb[k];
        if (facets[nb].visit != stamp) horizon.push_back({vf, k, nb});
      }
    }

    open_ridges.clear();
    const int first_new = static_cast<int>(facets.size());
    for (const auto& [vf, k, nb] : horizon) {
      QhFacet nf;
      nf.v = facets[vf].v;
      nf.v[k] = apex;
      nf.nb.fill(-1);
      nf.nb[k] = nb;
      const int nid = static_cast<int>(facets.size());
      for (int s = 0; s < d; ++s)
        if (facets[nb].nb[s] == vf) facets[nb].nb[s] = nid;
      hyperplane_through(pts, nf.v.data(), d, interior, nf.normal, nf.offset);
      facets.push_back(std::move(nf));
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        std::array<int, kMaxDim> key;
        key.fill(-1);
        int c = 0;
        for (int s = 0; s < d; ++s)
          if (s != j) key[c++] = facets[nid].v[s];
        std::sort(key.begin(), key.begin() + c);
        auto it = open_ridges.find(key);
        if (it == open_ridges.end()) {
          open_ridges.emplace(key, std::make_pair(nid, j));
        } else {
          facets[nid].nb[j] = it->second.first;
          facets[it->second.first].nb[it->second.second] = nid;
          open_ridges.erase(it);
        }
      }
    }

    for (int vf : visible) {
      facets[vf].alive = false;
      for (int p : facets[vf].outside) {
        if (p == apex) continue;
        for (int nid = first_new; nid < static_cast<int>(facets.size()); ++nid) {
          if (facets[nid].dist(pts[p]) > eps) {
            facets[nid].outside.push_back(p);
            break;
          }
        }
      }
      facets[vf].outside.clear();
      facets[vf].outside.shrink_to_fit();
    }
    for (int nid = first_new; nid < static_cast<int>(facets.size()); ++nid)
      if (!facets[nid].outside.empty()) work.push_back(nid);
  }

  std::vector<int> alive;
  for (int i = 0; i < static_cast<int>(facets.size()); ++i)
    if (facets[i].alive) alive.push_back(i);

  std::vector<char> used(m, 0);
  for (int f : alive)
    for (int k = 0; k < d; ++k) used[facets[f].v[k]] = 1;

  if (filter_extreme) {
    std::vector<std::vector<int>> incident(m);
    for (int f : alive)
      for (int k = 0; k < d; ++k) incident[facets[f].v[k]].push_back(f);
    std::vector<Vec> extreme;
    bool dropped = false;
    for (int i = 0; i < m; ++i) {
      if (!used[i]) continue;
      Eigen::MatrixXd normals(incident[i].size(), d);
      for (std::size_t r = 0; r < incident[i].size(); ++r)
        normals.row(static_cast<Eigen::Index>(r)) = facets[incident[i][r]].normal.transpose();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(normals);
      const auto sv = svd.singularValues();
      int rank = 0;
      for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > 1e-7) ++rank;
      if (rank == d)
        extreme.push_back(pts[i]);
      else
        dropped = true;
    }
    if (dropped) return quickhull(extreme, false);
  }

  // Re-index onto the used points, preserving input order.
  Hull h;
  h.dim = d;
  h.eps = eps;
  std::vector<int> remap(m, -1);
  for (int i = 0; i < m; ++i) {
    if (!used[i]) continue;
    remap[i] = static_cast<int>(h.points.size());
    h.points.push_back(pts[i]);
  }
  h.interior = Vec::Zero(d);
  for (const auto& p : h.points) h.interior += p;
  h.interior /= static_cast<double>(h.points.size());

  std::vector<int> facet_index(facets.size(), -1);
  for (int f : alive) {
    HullSimplex s;
    for (int k = 0; k < d; ++k) s.v[k] = remap[facets[f].v[k]];
    s.normal = facets[f].normal;
    s.offset = facets[f].offset;
    s.area = simplex_area(h.points, s.v.data(), d, s.normal);
    facet_index[f] = static_cast<int>(h.simplices.size());
    h.simplices.push_back(s);
  }

  // Merge coplanar neighbours with union-find over ridge adjacency.
  std::vector<int> parent(h.simplices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int f : alive) {
    const int a = facet_index[f];
    for (int k = 0; k < d; ++k) {
      const int b = facet_index[facets[f].nb[k]];
      if (b < 0 || b <= a) continue;
      const auto& sa = h.simplices[a];
      const auto& sb = h.simplices[b];
      if (sa.normal.dot(sb.normal) > 1.0 - 1e-10 && std::abs(sa.offset - sb.offset) <= 10 * eps)
        parent[find(b)] = find(a);
    }
  }
  std::map<int, int> group;
  for (int i = 0; i < static_cast<int>(h.simplices.size()); ++i) {
    const int r = find(i);
    auto it = group.find(r);
    if (it == group.end()) {
      group.emplace(r, static_cast<int>(h.facets.size()));
      h.facets.push_back({h.simplices[r].normal, h.simplices[r].offset, {}});
      it = group.find(r);
    }
    auto& verts = h.facets[it->second].vertices;
    for (int k = 0; k < d; ++k) verts.push_back(h.simplices[i].v[k]);
  }
  for (auto& f : h.facets) {
    std::sort(f.vertices.begin(), f.vertices.end());
    f.vertices.erase(std::unique(f.vertices.begin(), f.vertices.end()), f.vertices.end());
  }

  std::set<std::pair<int, int>> edges;
  for (const auto& s : h.simplices)
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) edges.emplace(std::min(s.v[a], s.v[b]), std::max(s.v[a], s.v[b]));
  h.edges.assign(edges.begin(), edges.end());
  return h;
}

}  // namespace detail

/// Convex hull of a full-dimensional point set in R^d, 1 <= d <= kMaxDim.
/// Throws DegenerateInput if the points span an affine subspace of lower dimension.
inline Hull convex_hull(const std::vector<Vec>& points) {
  if (points.empty()) throw DegenerateInput("convex_hull: no points");
  const int d = static_cast<int>(points.front().size());
  if (d < 1 || d > kMaxDim) throw DegenerateInput("convex_hull: dimension out of range");
  if (static_cast<int>(points.size()) < d + 1) throw DegenerateInput("convex_hull: fewer than d+1 points");
  return detail::quickhull(points, true);
}

}  // namespace lwlab
