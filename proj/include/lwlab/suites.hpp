#pragma once

// Verification suites: each maps an inequality to rows of InequalityReport.

#include "lwlab/bodies.hpp"
#include "lwlab/centroid.hpp"
#include "lwlab/lambda.hpp"
#include "lwlab/moments.hpp"
#include "lwlab/parallel.hpp"
#include "lwlab/planar_exact.hpp"
#include "lwlab/projection_body.hpp"
#include "lwlab/random.hpp"
#include "lwlab/report.hpp"
#include "lwlab/section.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace lwlab {

struct SuiteConfig {
  std::vector<int> dims;  // empty: suite default
  int trials = 0;         // 0: suite default
  std::uint64_t seed = 42;
  int restarts = 32;
  int directions = 20;    // hensley directions per body
};

inline const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{"lw",  "meyer",          "hensley",     "thm1", "thm2",    "thm3",
                                            "thm4", "restricted-lw", "petty-zhang", "agj",  "paouris", "planar"};
  return ids;
}

inline void validate_config(const SuiteConfig& cfg) {
  if (cfg.trials < 0) throw std::invalid_argument("trials must be at least 1");
  for (int n : cfg.dims)
    if (n < 2 || n > 5) throw std::invalid_argument("dims must lie in {2, ..., 5}");
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (cfg.directions < 1) throw std::invalid_argument("directions must be at least 1");
}

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

inline std::string frame_witness(const Mat& q) {
  std::string s;
  for (int j = 0; j < q.cols(); ++j) {
    if (j) s += ';';
    s += 'w' + std::to_string(j + 1) + "=[";
    std::vector<double> col(q.rows());
    for (int i = 0; i < q.rows(); ++i) col[i] = q(i, j);
    s += format_vector(col) + ']';
  }
  return s;
}

inline std::string vector_witness(const char* name, const Vec& v) {
  std::vector<double> c(v.data(), v.data() + v.size());
  return std::string(name) + "=[" + format_vector(c) + ']';
}

// One random body per (n, trial); the seed depends only on the suite,
// dimension and trial index.
struct Trial {
  int n;
  int t;
  std::uint64_t seed;
  std::string body_id;
  int d = 0;  // subspace dimension, for suites that need one
};

inline std::vector<Trial> make_trials(const std::string& suite, const std::vector<int>& dims, int trials,
                                      std::uint64_t master, const std::string& tag = "rand") {
  std::vector<Trial> out;
  for (int n : dims)
    for (int t = 0; t < trials; ++t)
      out.push_back({n, t, derive_seed(master, fnv1a(suite), static_cast<std::uint64_t>(n) * 1000003ULL + t),
                     tag + "-n" + std::to_string(n) + "-t" + std::to_string(t)});
  return out;
}

// Runs `rows_for` on every trial in parallel; rows keep trial order, and a
// throwing trial becomes an error row.
template <class F>
std::vector<InequalityReport> collect(const std::string& check, const std::vector<Trial>& trials, F&& rows_for) {
  auto per = parallel_map(trials.size(), [&](std::size_t i) {
    try {
      return rows_for(trials[i]);
    } catch (const std::exception& e) {
      return std::vector<InequalityReport>{make_error(check, trials[i].body_id, trials[i].n, e.what())};
    }
  });
  std::vector<InequalityReport> rows;
  for (auto& v : per)
    for (auto& r : v) rows.push_back(std::move(r));
  return rows;
}

inline std::vector<int> dims_or(const SuiteConfig& cfg, std::vector<int> def) { return cfg.dims.empty() ? def : cfg.dims; }
inline int trials_or(const SuiteConfig& cfg, int def) { return cfg.trials > 0 ? cfg.trials : def; }

inline Polytope random_body(const Trial& t, bool symmetric = false) { return gen_random_body(t.n, 4 * t.n, symmetric, t.seed); }

inline Subspace random_subspace(int n, int d, std::uint64_t seed) {
  Rng rng(splitmix64(seed ^ 0x5355425350ULL));
  return Subspace::from_basis(rng.orthogonal(n).leftCols(d));
}

// Equality row: lhs = value, rhs = expected; passes iff |margin| <= tol.
inline InequalityReport equality_row(std::string check, std::string body, int n, double value, double expected,
                                     double tol, std::string witness = {}) {
  InequalityReport r = make_check(std::move(check), std::move(body), n, value, expected, expected, 0.0, std::move(witness));
  r.status = std::abs(r.margin) <= tol ? Status::pass : Status::fail;
  return r;
}

inline double product_of_sections(const Polytope& k, const Mat& q) {
  double p = 1.0;
  for (int i = 0; i < q.cols(); ++i) p *= slice_volume(k, q.col(i), 0.0);
  return p;
}

inline double product_of_shadows(const Polytope& k, const Mat& q) {
  double p = 1.0;
  for (int i = 0; i < q.cols(); ++i) p *= hyperplane_projection_volume(k, q.col(i));
  return p;
}

}  // namespace detail

/// Loomis-Whitney: |K| <= prod |P_{e_i-perp} K|^(1/(n-1)).
inline std::vector<InequalityReport> suite_lw(const SuiteConfig& cfg) {
  const auto trials = detail::make_trials("lw", detail::dims_or(cfg, {2, 3, 4}), detail::trials_or(cfg, 20), cfg.seed);
  return detail::collect("lw", trials, [](const detail::Trial& t) {
    const Polytope k = detail::random_body(t);
    const int n = t.n;
    const double rhs = std::pow(detail::product_of_shadows(k, Mat::Identity(n, n)), 1.0 / (n - 1));
    return std::vector{make_check("lw", t.body_id, n, k.volume(), rhs, 1.0)};
  });
}

/// Meyer: |K| >= (n!)^(1/(n-1)) / n^(n/(n-1)) prod |K cap e_i-perp|^(1/(n-1)).
inline double meyer_constant(int n) { return std::pow(factorial(n), 1.0 / (n - 1)) / std::pow(n, n / (n - 1.0)); }

inline std::vector<InequalityReport> suite_meyer(const SuiteConfig& cfg) {
  const auto trials = detail::make_trials("meyer", detail::dims_or(cfg, {2, 3, 4}), detail::trials_or(cfg, 20), cfg.seed);
  return detail::collect("meyer", trials, [](const detail::Trial& t) {
    const Polytope k = detail::random_body(t);
    const int n = t.n;
    const double c = meyer_constant(n);
    const double lhs = c * std::pow(detail::product_of_sections(k, Mat::Identity(n, n)), 1.0 / (n - 1));
    return std::vector{make_check("meyer", t.body_id, n, lhs, k.volume(), c)};
  });
}

/// Hensley: c1 <= h_{Z_2 K}(theta) |K cap theta-perp| <= c2(n), as the
/// minimum and maximum over random directions per body, plus the two
/// equality cases.
inline std::vector<InequalityReport> suite_hensley(const SuiteConfig& cfg) {
  const auto trials = detail::make_trials("hensley", detail::dims_or(cfg, {2, 3, 4}), detail::trials_or(cfg, 20), cfg.seed);
  const int dirs = cfg.directions;
  auto rows = detail::collect("hensley", trials, [dirs](const detail::Trial& t) {
    const Polytope k = detail::random_body(t);
    const CovarianceMatrix cov = covariance(k);
    Rng rng(splitmix64(t.seed ^ 0x444952ULL));
    double lo = INFINITY, hi = -INFINITY;
    Vec arg_lo, arg_hi;
    for (int i = 0; i < dirs; ++i) {
      const Vec th = rng.sphere(t.n);
      const double v = hensley_product(k, cov, th);
      if (v < lo) lo = v, arg_lo = th;
      if (v > hi) hi = v, arg_hi = th;
    }
    return std::vector{
        make_check("hensley-lower", t.body_id, t.n, hensley_c1(), lo, hensley_c1(), 0.0, detail::vector_witness("theta", arg_lo)),
        make_check("hensley-upper", t.body_id, t.n, hi, hensley_c2(t.n), hensley_c2(t.n), 0.0,
                   detail::vector_witness("theta", arg_hi))};
  });
  for (int n : detail::dims_or(cfg, {2, 3, 4})) {
    const Polytope c = cube(n);
    rows.push_back(detail::equality_row("hensley-cube-equality", "cube(" + std::to_string(n) + ")", n,
                                        hensley_product(c, basis_vector(n, 0)), hensley_c1(), 1e-12, "theta=e1"));
  }
  const Polytope l1 = normalize(cross_polytope(2)).first;
  rows.push_back(detail::equality_row("hensley-l1-equality", "cross-polytope(2)", 2, hensley_product(l1, basis_vector(2, 0)),
                                      hensley_c2(2), 1e-9, "theta=e1"));
  return rows;
}

/// Sandwich: lambda_tilde(K) <= (2 sqrt3 L_K)^n, and for the isotropic
/// image every basis gives at least (sqrt2 L_K)^n.
inline std::vector<InequalityReport> suite_thm1(const SuiteConfig& cfg) {
  const auto trials = detail::make_trials("thm1", detail::dims_or(cfg, {2, 3, 4}), detail::trials_or(cfg, 5), cfg.seed);
  const int restarts = cfg.restarts;
  return detail::collect("thm1", trials, [restarts](const detail::Trial& t) {
    const int n = t.n;
    const Polytope k = detail::random_body(t);
    const double L = isotropic_constant(k);
    const LambdaResult r = lambda_tilde(k, restarts);
    const Polytope iso = apply_map(k, isotropic_transform(k).transform);
    const LambdaResult ri = lambda_tilde(iso, restarts);
    const double upper = std::pow(2.0 * std::sqrt(3.0) * L, n);
    const double lower = std::pow(std::sqrt(2.0) * L, n);
    return std::vector{
        make_check("thm1-upper", t.body_id, n, r.value, upper, 2.0 * std::sqrt(3.0), 0.0, detail::frame_witness(r.witness)),
        make_check("thm1-certificate", t.body_id, n, r.value, r.certificate, 1.0, 0.0, detail::frame_witness(r.witness)),
        make_check("thm1-lower-isotropic", t.body_id, n, lower, ri.value, std::sqrt(2.0), 0.0, detail::frame_witness(ri.witness))};
  });
}

inline std::vector<std::pair<std::string, UniformCover>> suite_covers(int n) {
  std::vector<std::pair<std::string, UniformCover>> covers{{"singletons", singleton_cover(n)}, {"trivial", trivial_cover(n)}};
  if (n >= 3) {
    UniformCover cyc;
    for (int i = 1; i <= n; ++i) cyc.sets.push_back({i, i % n + 1}), cyc.weights.push_back(0.5);
    covers.emplace_back("cyclic-pairs", cyc);
  }
  if (n == 4) covers.emplace_back("pairs", UniformCover{{{1, 2}, {3, 4}, {1, 3}, {2, 4}}, {0.5, 0.5, 0.5, 0.5}});
  return covers;
}

/// Uniform covers: the search never exceeds the Z_2
/// certificate; the trivial cover gives exactly 1; constants are report-only.
inline std::vector<InequalityReport> suite_thm2(const SuiteConfig& cfg) {
  const auto trials = detail::make_trials("thm2", detail::dims_or(cfg, {2, 3, 4}), detail::trials_or(cfg, 2), cfg.seed);
  const int restarts = std::min(cfg.restarts, 8);
  return detail::collect("thm2", trials, [restarts](const detail::Trial& t) {
    const int n = t.n;
    const Polytope k = detail::random_body(t);
    const double L = isotropic_constant(k);
    std::vector<InequalityReport> rows;
    for (const auto& [name, cover] : suite_covers(n)) {
      const std::string id = t.body_id + "/" + name;
      try {
        const CoverInfo info = validate_cover(cover, n);
        const LambdaResult r = lambda_cover_search(k, cover, restarts);
        if (name == "trivial")
          rows.push_back(detail::equality_row("thm2-trivial", id, n, r.value, 1.0, 1e-12));
        rows.push_back(make_check("thm2-certificate", id, n, r.value, r.certificate, info.p, 0.0, detail::frame_witness(r.witness)));
        rows.push_back(make_record("thm2-constant", id, n, r.value, std::pow(L, n), std::pow(r.value, 1.0 / n) / L));
      } catch (const std::exception& e) {
        rows.push_back(make_error("thm2-certificate", id, n, e.what()));
      }
    }
    return rows;
  });
}

/// Cross-polytope frames: the frame of the inscribed cross-polytope satisfies
/// |P_{H-perp} K| |K|^(d-1) >= C(n+d,n)/(2n)^d prod_i |P_{w_i-perp} K|.
inline std::vector<InequalityReport> suite_thm3(const SuiteConfig& cfg) {
  const auto dims = detail::dims_or(cfg, {3, 4});
  std::vector<detail::Trial> trials;
  for (const auto& t : detail::make_trials("thm3", dims, detail::trials_or(cfg, 5), cfg.seed))
    for (int d = 2; d <= std::min(3, t.n - 1); ++d)
      trials.push_back({t.n, t.t, t.seed, t.body_id + "-d" + std::to_string(d), d});
  return detail::collect("thm3", trials, [](const detail::Trial& t) {
    const int n = t.n, d = t.d;
    const Polytope k = detail::random_body(t);
    const Subspace h = detail::random_subspace(n, d, t.seed + d);
    const CrossPolytopeWitness w = inscribed_cross_polytope(k, h);
    const double c = binomial(n + d, n) / std::pow(2.0 * n, d);
    const double lhs = c * detail::product_of_shadows(k, w.frame);
    const double rhs = projection_volume(k, h.complement()) * std::pow(k.volume(), d - 1);
    const double rel = w.uncertainty / w.section_volume;
    const std::string wit = detail::frame_witness(w.frame);
    return std::vector{make_check("thm3", t.body_id, n, lhs, rhs, c, lhs * rel, wit),
                       make_check("thm3-cross-polytope", t.body_id, n, w.section_volume, factorial(d) * w.cross_volume,
                                  factorial(d), w.uncertainty, wit)};
  });
}

/// Sums of sections, report-only: C_emp = |K| |K cap H-perp|^(d-1) /
/// prod_j |K cap (H-perp + <w_j>)| at the frame from P_H Z_d(K).
inline std::vector<InequalityReport> suite_thm4(const SuiteConfig& cfg) {
  const auto trials = detail::make_trials("thm4", detail::dims_or(cfg, {3}), detail::trials_or(cfg, 20), cfg.seed);
  const int restarts = cfg.restarts;
  return detail::collect("thm4", trials, [restarts](const detail::Trial& t) {
    const int n = t.n, d = 2;
    const Polytope k = detail::random_body(t);
    const Subspace h = detail::random_subspace(n, d, t.seed);
    const SectionFrameResult r = theorem4_frame(k, h, restarts);
    return std::vector{make_record("thm4", t.body_id, n, r.lhs, r.product, r.c_emp, r.uncertainty * r.c_emp,
                                   detail::frame_witness(r.frame))};
  });
}

inline double restricted_lw_constant(int n, int d) {
  return std::pow(binomial(n - 1, n - d), d) / std::pow(binomial(n, d), d - 1);
}

/// Restricted LW: |P_{H-perp} K| |K|^(d-1) <= C prod_j |P_{e_j-perp} K| for an
/// orthonormal basis e_j of H; H is the leading coordinate block and a random
/// subspace for each body.
inline std::vector<InequalityReport> suite_restricted_lw(const SuiteConfig& cfg) {
  const auto trials = detail::make_trials("restricted-lw", detail::dims_or(cfg, {3, 4}), detail::trials_or(cfg, 20), cfg.seed);
  return detail::collect("restricted-lw", trials, [](const detail::Trial& t) {
    const int n = t.n;
    const Polytope k = detail::random_body(t);
    std::vector<InequalityReport> rows;
    for (int d = 2; d <= n - 1; ++d) {
      const double c = restricted_lw_constant(n, d);
      std::vector<int> idx(d);
      for (int i = 0; i < d; ++i) idx[i] = i;
      for (const auto& [tag, h] : {std::pair{std::string("coord"), Subspace::coordinate(n, idx)},
                                   std::pair{std::string("random"), detail::random_subspace(n, d, t.seed + d)}}) {
        const double lhs = projection_volume(k, h.complement()) * std::pow(k.volume(), d - 1);
        const double rhs = c * detail::product_of_shadows(k, h.basis());
        rows.push_back(make_check("restricted-lw", t.body_id + "-d" + std::to_string(d) + "-" + tag, n, lhs, rhs, c, 0.0,
                                  detail::frame_witness(h.basis())));
      }
    }
    return rows;
  });
}

/// Petty-Zhang bounds on named extremal bodies and random bodies.
inline std::vector<InequalityReport> suite_petty_zhang(const SuiteConfig& cfg) {
  std::vector<std::pair<std::string, Polytope>> named{{"simplex(2)", simplex(2)},
                                                      {"cube(2)", cube(2)},
                                                      {"ngon(64)", ngon(64)},
                                                      {"simplex(3)", simplex(3)},
                                                      {"cube(3)", cube(3)}};
  std::vector<InequalityReport> rows;
  auto add = [&rows](const PettyZhangReport& r) {
    rows.push_back(r.lower);
    rows.push_back(r.upper);
  };
  for (const auto& [id, k] : named) {
    try {
      add(petty_zhang_check(k, id));
    } catch (const std::exception& e) {
      rows.push_back(make_error("petty-zhang-lower", id, k.dim(), e.what()));
    }
  }
  const auto trials = detail::make_trials("petty-zhang", detail::dims_or(cfg, {2, 3}), detail::trials_or(cfg, 5), cfg.seed);
  for (auto& r : detail::collect("petty-zhang-lower", trials, [](const detail::Trial& t) {
         const PettyZhangReport p = petty_zhang_check(detail::random_body(t), t.body_id);
         return std::vector{p.lower, p.upper};
       }))
    rows.push_back(std::move(r));
  return rows;
}

/// AGJ: |K|^(d-1) |Pi* K cap H| >= C(n+d,n) / (n^d |P_{H-perp} K|).
inline std::vector<InequalityReport> suite_agj(const SuiteConfig& cfg) {
  std::vector<InequalityReport> rows;
  try {
    rows.push_back(agj_section_check(cube(2), Subspace::full(2), "cube(2)"));
  } catch (const std::exception& e) {
    rows.push_back(make_error("agj", "cube(2)", 2, e.what()));
  }
  const auto trials = detail::make_trials("agj", detail::dims_or(cfg, {3}), detail::trials_or(cfg, 10), cfg.seed);
  for (auto& r : detail::collect("agj", trials, [](const detail::Trial& t) {
         const Polytope k = detail::random_body(t);
         std::vector<InequalityReport> out;
         for (int d = 2; d <= std::min(3, t.n - 1); ++d)
           out.push_back(agj_section_check(k, detail::random_subspace(t.n, d, t.seed + d), t.body_id + "-d" + std::to_string(d)));
         return out;
       }))
    rows.push_back(std::move(r));
  return rows;
}

/// Paouris sandwich, report-only: |K cap H-perp|^(1/d) and |P_H Z_d K|^(1/d).
inline std::vector<InequalityReport> suite_paouris(const SuiteConfig& cfg) {
  const auto trials = detail::make_trials("paouris", detail::dims_or(cfg, {3, 4}), detail::trials_or(cfg, 3), cfg.seed);
  return detail::collect("paouris", trials, [](const detail::Trial& t) {
    const int n = t.n, d = 2;
    const Polytope k = detail::random_body(t);
    const Subspace h = detail::random_subspace(n, d, t.seed);
    const double sec = std::pow(section_volume(k, h.complement()), 1.0 / d);
    const PaourisValue p = paouris_product(k, h);
    return std::vector{make_record("paouris", t.body_id, n, sec, p.value / sec, p.value, p.uncertainty,
                                   detail::frame_witness(h.basis()))};
  });
}

/// Planar rows: box values and diagonal witnesses, the parallelogram ratio
/// in exact arithmetic, and min(1, 12 L_K^2) for random symmetric bodies.
inline std::vector<InequalityReport> suite_planar(const SuiteConfig& cfg) {
  std::vector<InequalityReport> rows;
  for (const auto& [label, l] : {std::pair{"1", 1.0}, std::pair{"sqrt2", std::sqrt(2.0)}, std::pair{"2", 2.0}}) {
    const std::string id = std::string("box2d(") + label + ")";
    try {
      const LambdaResult r = lambda_tilde_planar(box2d(l));
      const double expected = std::pow(l, 4) / (std::pow(l, 4) + 1.0);
      rows.push_back(detail::equality_row("planar-box", id, 2, r.value, expected, 1e-6, detail::frame_witness(r.witness)));
      // Angle between w1 and the nearer box diagonal.
      const double w = std::atan2(r.witness(1, 0), r.witness(0, 0));
      const double diag = std::atan2(l / 2.0, 1.0 / (2.0 * l));
      double off = INFINITY;
      for (double target : {diag, -diag, std::numbers::pi - diag, diag - std::numbers::pi})
        off = std::min(off, std::abs(std::remainder(w - target, 2.0 * std::numbers::pi)));
      rows.push_back(make_check("planar-box-diagonal", id, 2, off, 1e-4, diag, 0.0, detail::frame_witness(r.witness), 0.0));
    } catch (const std::exception& e) {
      rows.push_back(make_error("planar-box", id, 2, e.what()));
    }
  }
  try {
    const std::vector<RationalPoint> fhl{{Rational(0), Rational(1, 2)},
                                         {Rational(1), Rational(1, 2)},
                                         {Rational(0), Rational(-1, 2)},
                                         {Rational(-1), Rational(-1, 2)}};
    const Rational sq = exact_planar_ratio_squared(fhl, 2, 1);
    const auto root = exact_sqrt(sq);
    if (!root) throw std::runtime_error("parallelogram ratio is not a rational square");
    const double exact = boost::rational_cast<double>(*root);
    rows.push_back(detail::equality_row("planar-fhl-exact", "parallelogram-fhl", 2, exact, 0.6, 1e-12,
                                        "w1=(2,1)/sqrt5 ratio^2=" + std::to_string(sq.numerator()) + "/" +
                                            std::to_string(sq.denominator())));
    const Polytope k = parallelogram_fhl();
    const Vec w = unit((Vec(2) << 2.0, 1.0).finished());
    Mat q(2, 2);
    q << w(0), -w(1), w(1), w(0);
    rows.push_back(detail::equality_row("planar-fhl-float", "parallelogram-fhl", 2, lambda_ratio(k, q), 0.6, 1e-12,
                                        detail::frame_witness(q)));
    const LambdaResult r = lambda_tilde_planar(k);
    rows.push_back(make_check("planar-fhl-min", "parallelogram-fhl", 2, r.value, 0.6, 0.6, 0.0, detail::frame_witness(r.witness)));
  } catch (const std::exception& e) {
    rows.push_back(make_error("planar-fhl-exact", "parallelogram-fhl", 2, e.what()));
  }
  const auto trials = detail::make_trials("planar", {2}, detail::trials_or(cfg, 20), cfg.seed, "sym");
  for (auto& r : detail::collect("planar-symmetric", trials, [](const detail::Trial& t) {
         const Polytope k = gen_random_body(2, 6 + 2 * (t.t % 5), true, t.seed);
         const LambdaResult res = lambda_tilde_planar(k);
         const double L = isotropic_constant(k);
         const double bound = std::min(1.0, 12.0 * L * L);
         return std::vector{make_check("planar-symmetric", t.body_id, 2, res.value, bound, 12.0, 0.0, detail::frame_witness(res.witness))};
       }))
    rows.push_back(std::move(r));
  return rows;
}

/// Runs one suite by id, or every suite in a fixed order for "all".
inline std::vector<InequalityReport> run_suite(const std::string& id, const SuiteConfig& cfg) {
  validate_config(cfg);
  using Fn = std::vector<InequalityReport> (*)(const SuiteConfig&);
  static const std::vector<std::pair<std::string, Fn>> table{
      {"lw", suite_lw},     {"meyer", suite_meyer},         {"hensley", suite_hensley},         {"thm1", suite_thm1},
      {"thm2", suite_thm2}, {"thm3", suite_thm3},           {"thm4", suite_thm4},               {"restricted-lw", suite_restricted_lw},
      {"petty-zhang", suite_petty_zhang}, {"agj", suite_agj}, {"paouris", suite_paouris},       {"planar", suite_planar}};
  if (id == "all") {
    std::vector<InequalityReport> rows;
    for (const auto& [name, fn] : table)
      for (auto& r : fn(cfg)) rows.push_back(std::move(r));
    return rows;
  }
  for (const auto& [name, fn] : table)
    if (name == id) return fn(cfg);
  throw std::invalid_argument("unknown suite '" + id + "'");
}

/// True iff some assertable row failed (fail, drift or error).
inline bool any_failed(const std::vector<InequalityReport>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const InequalityReport& r) { return r.failed(); });
}

}  // namespace lwlab
