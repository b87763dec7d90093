#pragma once

// Named bodies, JSON body files and the random spherical-hull family.

#include "lwlab/polytope.hpp"
#include "lwlab/random.hpp"
#include "lwlab/types.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace lwlab {

/// [-1/2, 1/2]^n.
inline Polytope cube(int n) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i & 1) ? 0.5 : -0.5;
    pts.push_back(v);
  }
  return make_body(pts);
}

/// conv{0, e_1, ..., e_n}.
inline Polytope simplex(int n) {
  std::vector<Vec> pts{Vec::Zero(n)};
  for (int i = 0; i < n; ++i) pts.push_back(basis_vector(n, i));
  return make_body(pts);
}

/// conv{+-e_i}.
inline Polytope cross_polytope(int n) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back(basis_vector(n, i));
    pts.push_back(-basis_vector(n, i));
  }
  return make_body(pts);
}

/// Centered box with sides 1/l x l (area 1).
inline Polytope box2d(double l) {
  std::vector<Vec> pts;
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0}) {
      Vec v(2);
      v << sx / (2.0 * l), sy * l / 2.0;
      pts.push_back(v);
    }
  return make_body(pts);
}

/// conv{(0, 1/2), (1, 1/2), (0, -1/2), (-1, -1/2)}: centered, area 1.
inline Polytope parallelogram_fhl() {
  std::vector<Vec> pts(4, Vec(2));
  pts[0] << 0.0, 0.5;
  pts[1] << 1.0, 0.5;
  pts[2] << 0.0, -0.5;
  pts[3] << -1.0, -0.5;
  return make_body(pts);
}

/// Regular k-gon inscribed in the unit circle, first vertex at (1, 0).
inline Polytope ngon(int k) {
  if (k < 3) throw DegenerateInput("ngon: need at least 3 vertices");
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) {
    const double a = 2.0 * std::numbers::pi * i / k;
    Vec v(2);
    v << std::cos(a), std::sin(a);
    pts.push_back(v);
  }
  return make_body(pts);
}

/// Resolves "cube(3)", "cube:3", "box2d(1.5)", "parallelogram-fhl", ...
inline Polytope named_body(const std::string& spec) {
  std::string name = spec, arg;
  if (auto p = spec.find_first_of("(:"); p != std::string::npos) {
    name = spec.substr(0, p);
    arg = spec.substr(p + 1);
    if (!arg.empty() && arg.back() == ')') arg.pop_back();
  }
  auto int_arg = [&] {
    if (arg.empty()) throw DegenerateInput("named body '" + name + "' needs a parameter");
    return std::stoi(arg);
  };
  if (name == "cube") return cube(int_arg());
  if (name == "simplex") return simplex(int_arg());
  if (name == "cross-polytope") return cross_polytope(int_arg());
  if (name == "box2d") return box2d(arg.empty() ? 1.0 : std::stod(arg));
  if (name == "parallelogram-fhl") return parallelogram_fhl();
  if (name == "ngon") return ngon(int_arg());
  throw DegenerateInput("unknown named body '" + name + "'");
}

inline nlohmann::json body_to_json(const Polytope& k) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : k.vertices()) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
    verts.push_back(row);
  }
  return {{"dim", k.dim()}, {"vertices", verts}};
}

inline Polytope body_from_json(const nlohmann::json& j) {
  const int n = j.at("dim").get<int>();
  std::vector<Vec> pts;
  for (const auto& row : j.at("vertices")) {
    if (static_cast<int>(row.size()) != n) throw DegenerateInput("body JSON: vertex of wrong dimension");
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = row[i].get<double>();
    pts.push_back(v);
  }
  return make_body(pts);
}

inline constexpr int kBodyRetries = 8;

/// Hull of m uniform points on S^(n-1), normalized to be centered with volume
/// 1. Symmetric bodies use ceil(m/2) points and their reflections. Degenerate
/// draws are retried up to 8 times with derived seeds.
inline Polytope gen_random_body(int n, int m, bool symmetric, std::uint64_t seed) {
  if (n < 1 || n > kMaxDim) throw DegenerateInput("gen_random_body: dimension out of range");
  if (symmetric ? m < 2 : m < n + 1) throw DegenerateInput("gen_random_body: too few points");
  const int gens = symmetric ? (m + 1) / 2 : m;
  for (int attempt = 0; attempt < kBodyRetries; ++attempt) {
    Rng rng(derive_seed(seed, symmetric ? 0x53594dULL : 0x47454eULL, static_cast<std::uint64_t>(attempt)));
    std::vector<Vec> pts;
    for (int i = 0; i < gens; ++i) {
      pts.push_back(rng.sphere(n));
      if (symmetric) pts.push_back(-pts.back());
    }
    try {
      return normalize(make_body(pts)).first;
    } catch (const DegenerateInput&) {
    }
  }
  throw DegenerateInput("gen_random_body: no full-dimensional draw after 8 attempts");
}

}  // namespace lwlab
