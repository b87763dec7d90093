#pragma once

// Deterministic direction sets on S^1 and S^2.

#include "lwlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace lwlab {

/// N equally spaced angles; the even-indexed half is the N/2 set.
inline std::vector<Vec> circle_directions(int count) {
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double a = 2.0 * std::numbers::pi * i / count;
    Vec u(2);
    u << std::cos(a), std::sin(a);
    out.push_back(u);
  }
  return out;
}

/// Fibonacci lattice on S^2.
inline std::vector<Vec> fibonacci_sphere(int count) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * i;
    Vec u(3);
    u << r * std::cos(a), r * std::sin(a), z;
    out.push_back(u);
  }
  return out;
}

/// Default direction set for an intrinsic dimension of 2 or 3.
inline std::vector<Vec> sphere_directions(int d, int count) {
  if (d == 2) return circle_directions(count);
  if (d == 3) return fibonacci_sphere(count);
  throw DegenerateInput("direction sampling supports d = 2 or 3");
}

}  // namespace lwlab
