#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lwlab {

// Every body lives in R^n with n <= kMaxDim, so all vectors and matrices use
// Eigen's fixed-capacity dynamic storage and never touch the heap.
inline constexpr int kMaxDim = 6;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Relative tolerance used by the exact pipelines.
inline constexpr double kExactTol = 1e-9;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateInput : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class EmptySection : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class SingularMap : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotNormalized : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class IllConditioned : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class Unconverged : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class SearchFailed : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotAUniformCover : public GeometryError {
 public:
  /// `coordinate` is 1-based, matching the cover file format.
  NotAUniformCover(int coordinate, const std::string& what)
      : GeometryError(what), coordinate_(coordinate) {}
  int coordinate() const noexcept { return coordinate_; }

 private:
  int coordinate_;
};

inline Vec unit(const Vec& v) { return v / v.norm(); }

inline Vec basis_vector(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace lwlab
