#pragma once

// Portable pseudo-random helpers. The standard distributions are
// implementation-defined, so Gaussians are drawn by Box-Muller from raw
// mt19937_64 output to keep streams identical across toolchains.

#include "lwlab/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lwlab {

/// splitmix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for trial `index` of a stream keyed by `master` and `salt`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(salt)) + index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  Vec gaussian_vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = gaussian();
    return v;
  }

  /// Uniform point on S^{n-1}.
  Vec sphere(int n) {
    for (;;) {
      Vec v = gaussian_vector(n);
      const double r = v.norm();
      if (r > 1e-12) return v / r;
    }
  }

  /// Haar-distributed orthogonal matrix from the QR of a Gaussian matrix.
  Mat orthogonal(int n) {
    Mat g(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = gaussian();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    const Mat r = qr.matrixQR();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lwlab
