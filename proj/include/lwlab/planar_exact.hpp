#pragma once

// Exact arithmetic for planar section ratios of rational polygons.

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lwlab {

using Rational = boost::rational<long long>;

struct RationalPoint {
  Rational x, y;
};

namespace detail {

inline Rational cross(const RationalPoint& a, const RationalPoint& b) { return a.x * b.y - a.y * b.x; }

// Counter-clockwise order of a convex polygon's vertices around their mean.
inline std::vector<RationalPoint> ccw_order(std::vector<RationalPoint> pts) {
  Rational cx = 0, cy = 0;
  for (const auto& p : pts) cx += p.x, cy += p.y;
  cx /= static_cast<long long>(pts.size());
  cy /= static_cast<long long>(pts.size());
  auto angle = [&](const RationalPoint& p) {
    return std::atan2(boost::rational_cast<double>(p.y - cy), boost::rational_cast<double>(p.x - cx));
  };
  std::sort(pts.begin(), pts.end(), [&](const RationalPoint& a, const RationalPoint& b) { return angle(a) < angle(b); });
  return pts;
}

// (t_max - t_min) for the chord {t v} of the polygon through the origin.
inline Rational chord_parameter_length(const std::vector<RationalPoint>& poly, const RationalPoint& v) {
  std::optional<Rational> lo, hi;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const RationalPoint& p = poly[i];
    const RationalPoint& q = poly[(i + 1) % m];
    const RationalPoint e{q.x - p.x, q.y - p.y};
    const Rational den = cross(v, e);
    if (den.numerator() == 0) continue;  // mixed int comparisons recurse under C++20 rewrites
    // t v = p + s e  =>  t = cross(p, e) / cross(v, e), s = cross(p, v) / cross(v, e)
    const Rational s = cross(p, v) / den;
    if (s < Rational(0) || s > Rational(1)) continue;
    const Rational t = cross(p, e) / den;
    if (!lo || t < *lo) lo = t;
    if (!hi || t > *hi) hi = t;
  }
  if (!lo) throw std::invalid_argument("chord misses polygon");
  return *hi - *lo;
}

inline std::optional<long long> exact_isqrt(long long v) {
  if (v < 0) return std::nullopt;
  long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) return std::nullopt;
  return r;
}

}  // namespace detail

/// Square of |K| / (|K cap w1-perp| |K cap w2-perp|) for a rational polygon
/// with 0 in its interior and w1 parallel to the integer vector (a, b).
inline Rational exact_planar_ratio_squared(const std::vector<RationalPoint>& vertices, long long a, long long b) {
  const auto poly = detail::ccw_order(vertices);
  Rational area2 = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) area2 += detail::cross(poly[i], poly[(i + 1) % poly.size()]);
  const Rational area = area2 / 2;
  // K cap w1-perp runs along w2 = (-b, a); K cap w2-perp along w1 = (a, b).
  const Rational t1 = detail::chord_parameter_length(poly, {Rational(-b), Rational(a)});
  const Rational t2 = detail::chord_parameter_length(poly, {Rational(a), Rational(b)});
  const Rational norm2 = Rational(a * a + b * b);
  return area * area / (t1 * t1 * norm2 * t2 * t2 * norm2);
}

/// Exact square root when both numerator and denominator are perfect squares.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  const auto n = detail::exact_isqrt(q.numerator());
  const auto d = detail::exact_isqrt(q.denominator());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

}  // namespace lwlab
