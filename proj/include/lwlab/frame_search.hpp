#pragma once

// Derivative-free minimization over SO(m) in Givens-angle coordinates:
// Q(a) = Q0 * prod_{i<j} G_ij(a_ij). Each restart runs a coarse pattern
// search; the best few are refined to the final tolerance and polished with
// Nelder-Mead.

#include "lwlab/parallel.hpp"
#include "lwlab/random.hpp"
#include "lwlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace lwlab {

struct FrameSearchOptions {
  int restarts = 32;
  std::uint64_t seed = 0x4c574c4142ULL;
  double tol = 1e-10;       // final step size / objective spread
  double coarse_tol = 1e-4; // step size at which coarse searches stop
  int refine = 4;           // restarts refined to `tol`
  int max_evals = 20000;    // per restart
  bool maximize = false;
  /// Leading seeds; remaining restarts draw Haar-random starts.
  std::vector<Mat> seeds;
};

struct FrameSearchResult {
  Mat q;
  double value = 0.0;
  int best_restart = 0;
  long evaluations = 0;
  double final_step = 0.0;
  std::vector<double> restart_values;  // after the coarse phase
};

/// Givens rotation product applied to a start matrix.
inline Mat givens_frame(const Mat& q0, const std::vector<double>& angles) {
  const int m = static_cast<int>(q0.cols());
  Mat q = q0;
  int k = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j, ++k) {
      const double c = std::cos(angles[k]), s = std::sin(angles[k]);
      for (int r = 0; r < q.rows(); ++r) {
        const double a = q(r, i), b = q(r, j);
        q(r, i) = c * a + s * b;
        q(r, j) = -s * a + c * b;
      }
    }
  }
  return q;
}

namespace detail {

template <class F>
struct LocalSearch {
  const F& f;
  Mat q0;
  double sign;
  std::vector<double> x;
  double fx = 0.0;
  double step = 0.5;
  long evals = 0;
  int max_evals = 0;

  double eval(const std::vector<double>& a) {
    ++evals;
    return sign * f(givens_frame(q0, a));
  }

  // Compass search along +-coordinate directions with step halving.
  void pattern(double stop) {
    const std::size_t k = x.size();
    while (step >= stop && evals < max_evals) {
      bool improved = false;
      for (std::size_t i = 0; i < k; ++i) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> y = x;
          y[i] += dir * step;
          const double fy = eval(y);
          if (fy < fx) {
            x = std::move(y);
            fx = fy;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  void nelder_mead(double size, double tol) {
    const std::size_t k = x.size();
    std::vector<std::vector<double>> s(k + 1, x);
    std::vector<double> fs(k + 1, fx);
    for (std::size_t i = 0; i < k; ++i) {
      s[i + 1][i] += size;
      fs[i + 1] = eval(s[i + 1]);
    }
    std::vector<std::size_t> idx(k + 1);
    for (int iter = 0; iter < 200 * static_cast<int>(k) && evals < max_evals; ++iter) {
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
      const std::size_t best = idx.front(), worst = idx.back(), second = idx[k - 1];
      if (std::abs(fs[worst] - fs[best]) <= tol * std::max(1.0, std::abs(fs[best]))) break;
      std::vector<double> c(k, 0.0);
      for (std::size_t i = 0; i <= k; ++i)
        if (i != worst)
          for (std::size_t j = 0; j < k; ++j) c[j] += s[i][j] / k;
      auto along = [&](double t) {
        std::vector<double> y(k);
        for (std::size_t j = 0; j < k; ++j) y[j] = c[j] + t * (s[worst][j] - c[j]);
        return y;
      };
      std::vector<double> r = along(-1.0);
      const double fr = eval(r);
      if (fr < fs[best]) {
        std::vector<double> e = along(-2.0);
        const double fe = eval(e);
        if (fe < fr) {
          s[worst] = std::move(e), fs[worst] = fe;
        } else {
          s[worst] = std::move(r), fs[worst] = fr;
        }
      } else if (fr < fs[second]) {
        s[worst] = std::move(r), fs[worst] = fr;
      } else {
        std::vector<double> ct = along(fr < fs[worst] ? -0.5 : 0.5);
        const double fc = eval(ct);
        if (fc < std::min(fr, fs[worst])) {
          s[worst] = std::move(ct), fs[worst] = fc;
        } else {
          for (std::size_t i = 0; i <= k; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < k; ++j) s[i][j] = s[best][j] + 0.5 * (s[i][j] - s[best][j]);
            fs[i] = eval(s[i]);
          }
        }
      }
    }
    const std::size_t b = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    if (fs[b] < fx) {
      x = s[b];
      fx = fs[b];
    }
  }
};

}  // namespace detail

/// Minimizes (or maximizes) f over m x m orthogonal frames. f receives the
/// frame as a matrix whose columns are the directions.
template <class F>
FrameSearchResult search_frames(int m, const F& f, const FrameSearchOptions& opt = {}) {
  const int restarts = std::max<int>(1, std::max<int>(opt.restarts, static_cast<int>(opt.seeds.size())));
  const int k = m * (m - 1) / 2;
  const double sign = opt.maximize ? -1.0 : 1.0;

  std::vector<Mat> starts;
  for (int r = 0; r < restarts; ++r) {
    if (r < static_cast<int>(opt.seeds.size())) {
      starts.push_back(opt.seeds[r]);
    } else {
      Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(r)));
      starts.push_back(rng.orthogonal(m));
    }
  }

  using Search = detail::LocalSearch<F>;
  auto coarse = parallel_map(starts.size(), [&](std::size_t r) {
    Search s{f, starts[r], sign, std::vector<double>(k, 0.0)};
    s.max_evals = opt.max_evals;
    s.fx = s.eval(s.x);
    if (k > 0) s.pattern(opt.coarse_tol);
    return s;
  });

  FrameSearchResult out;
  for (const auto& s : coarse) {
    out.restart_values.push_back(sign * s.fx);
    out.evaluations += s.evals;
  }
  std::vector<std::size_t> order(coarse.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return coarse[a].fx < coarse[b].fx; });
  order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(1, opt.refine))));

  auto refined = parallel_map(order.size(), [&](std::size_t i) {
    Search s = coarse[order[i]];
    if (k > 0) {
      s.max_evals = s.evals + opt.max_evals;
      s.pattern(opt.tol);
      s.nelder_mead(std::max(16 * opt.tol, 1e-6), opt.tol);
      s.step = std::min(s.step, 1e-6);
      s.pattern(opt.tol);
    }
    return s;
  });

  // Lowest value wins; equal values go to the lowest restart index.
  std::size_t best = 0;
  for (std::size_t i = 1; i < refined.size(); ++i) {
    if (refined[i].fx < refined[best].fx || (refined[i].fx == refined[best].fx && order[i] < order[best])) best = i;
  }
  for (std::size_t i = 0; i < refined.size(); ++i) out.evaluations += refined[i].evals - coarse[order[i]].evals;
  out.q = givens_frame(refined[best].q0, refined[best].x);
  out.value = sign * refined[best].fx;
  out.best_restart = static_cast<int>(order[best]);
  out.final_step = refined[best].step;
  return out;
}

}  // namespace lwlab
