#include "generators.hpp"
#include "oracles.hpp"

#include "lwlab/bodies.hpp"
#include "lwlab/centroid.hpp"
#include "lwlab/moments.hpp"
#include "lwlab/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace lwlab;

namespace {

// Cube in R^3, e_1, any p: (int_{-1/2}^{1/2} |t|^p dt)^(1/p) = (1/2)(p+1)^(-1/p).
double cube_zp(double p) { return 0.5 * std::pow(p + 1.0, -1.0 / p); }
// P_{e3-perp} Z_2(cube): disk of radius 1/sqrt12.
constexpr double kCubeZ2DiskArea = 0.26179938779914941;
// Paouris product at the cube, H = span(e1, e2): 1 * (pi/12)^(1/2).
constexpr double kCubePaouris = 0.51166335397324424;

Vec diag2() { return (Vec(2) << 1.0, 1.0).finished() / std::sqrt(2.0); }

}  // namespace

TEST(Oracle, CubeZpClosedForm) {
  for (double p : {1.0, 1.5, 2.0, 3.7, 8.0}) {
    const double m = oracle::simpson([p](double t) { return std::pow(std::abs(t), p); }, 0.0, 0.5, 20000) * 2.0;
    EXPECT_NEAR(std::pow(m, 1.0 / p), cube_zp(p), 1e-10) << p;
  }
  EXPECT_NEAR(kCubeZ2DiskArea, std::numbers::pi / 12.0, 1e-16);
  EXPECT_NEAR(kCubePaouris, std::sqrt(std::numbers::pi / 12.0), 1e-16);
}

TEST(Marginal, SquareDensities) {
  const MarginalDensity f = marginal(cube(2), basis_vector(2, 0));
  for (double t : {-0.49, -0.2, 0.0, 0.3, 0.49}) EXPECT_NEAR(f(t), 1.0, 1e-12);
  EXPECT_EQ(f(0.6), 0.0);
  const MarginalDensity g = marginal(cube(2), diag2());
  EXPECT_NEAR(g(0.0), std::sqrt(2.0), 1e-12);
  // Section length of the square along the diagonal at offset t: 2(1/sqrt2 - |t|).
  for (double t : {-0.5, -0.1, 0.2, 0.6}) EXPECT_NEAR(g(t), 2.0 * (1.0 / std::sqrt(2.0) - std::abs(t)), 1e-12);
}

TEST(Marginal, IntegratesToVolume) {
  gen::forall(20, 51, [](Rng& r) {
    auto c = gen::body(r, 2, 5);
    return std::make_pair(c, r.sphere(c.n));
  }, [](const auto& p) { EXPECT_NEAR(marginal(p.first.k, p.second).integral(), p.first.k.volume(), 1e-8); });
}

TEST(Zp, CubeGeneralP) {
  for (double p : {1.0, 1.5, 2.0, 3.7, 8.0}) EXPECT_NEAR(zp_support(cube(3), p, basis_vector(3, 0)), cube_zp(p), 1e-12) << p;
  EXPECT_NEAR(zp_support(cube(3), 2.0, basis_vector(3, 0)), 1.0 / std::sqrt(12.0), 1e-14);
}

TEST(Zp, P2MatchesCovariance) {
  gen::forall(20, 52, [](Rng& r) {
    auto c = gen::body(r, 2, 5);
    return std::make_pair(c, r.sphere(c.n));
  }, [](const auto& p) {
    const auto& [c, th] = p;
    EXPECT_NEAR(zp_support(c.k, 2.0, th), std::sqrt(th.dot(covariance(c.k).m * th)), 1e-9);
  });
}

TEST(Zp, MonotoneInP) {
  gen::forall(20, 53, [](Rng& r) {
    auto c = gen::body(r, 2, 4);
    return std::make_pair(c, r.sphere(c.n));
  }, [](const auto& p) {
    const auto& [c, y] = p;
    const double a = zp_support(c.k, 2.0, y), b = zp_support(c.k, 4.0, y), d = zp_support(c.k, 8.0, y);
    EXPECT_LE(a, b + 1e-12);
    EXPECT_LE(b, d + 1e-12);
  });
}

TEST(Zp, NonIntegerMatchesSimpsonOnMarginal) {
  gen::forall(10, 54, [](Rng& r) {
    auto c = gen::body(r, 2, 4);
    return std::make_tuple(c, r.sphere(c.n), 1.0 + 4.0 * r.uniform());
  }, [](const auto& q) {
    const auto& [c, th, p] = q;
    const MarginalDensity f = marginal(c.k, th);
    // Simpson on the piecewise polynomial, split at breakpoints and at 0.
    std::vector<double> cuts = f.breakpoints;
    cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] > cuts[i])
        sum += oracle::simpson([&](double t) { return std::pow(std::abs(t), p) * f(t); }, cuts[i], cuts[i + 1], 2000);
    EXPECT_NEAR(f.abs_moment(p), sum, 1e-7 * sum);
  });
}

TEST(Zp, Errors) {
  EXPECT_THROW(zp_support(cube(2), 0.5, basis_vector(2, 0)), DegenerateInput);
  EXPECT_THROW(zp_support(simplex(2), 2.0, basis_vector(2, 0)), NotNormalized);
}

TEST(ProjectedZp, EllipseArea) {
  gen::forall(5, 55, [](Rng& r) { return gen_random_body(2, 8, false, r.engine()()); }, [](const Polytope& k) {
    const double L = isotropic_constant(k);
    const SupportSampledBody z = projected_zp_body(k, 2.0, Subspace::full(2));
    EXPECT_NEAR(z.volume() / (std::numbers::pi * L * L), 1.0, 5e-3);
  });
}

TEST(ProjectedZp, CubeDisk) {
  const SupportSampledBody z = projected_zp_body(cube(3), 2.0, Subspace::coordinate(3, {0, 1}));
  EXPECT_NEAR(z.volume() / kCubeZ2DiskArea, 1.0, 5e-3);
}

TEST(ProjectedZp, Containment) {
  const Polytope k = gen_random_body(3, 12, false, 8);
  const Subspace h = Subspace::coordinate(3, {0, 2});
  auto build = [&](int n) {
    SupportSampledBody b(2);
    for (const auto& u : circle_directions(n)) b.add(u, zp_support(k, 3.0, h.basis() * u));
    return b.outer();
  };
  const Polytope coarse = build(64), fine = build(128);
  for (const auto& v : fine.vertices())
    for (const auto& f : coarse.hull().facets) EXPECT_LE(f.normal.dot(v), f.offset + 1e-12);
  EXPECT_LE(fine.volume(), coarse.volume());
}

TEST(Paouris, Cube) {
  const PaourisValue v = paouris_product(cube(3), Subspace::coordinate(3, {0, 1}));
  EXPECT_NEAR(v.value / kCubePaouris, 1.0, 5e-3);
}

TEST(Paouris, OrthogonalInvariance) {
  gen::forall(4, 56, [](Rng& r) {
    const Polytope k = gen_random_body(3, 12, false, r.engine()());
    return std::make_tuple(k, r.orthogonal(3), Subspace::span({r.sphere(3), r.sphere(3)}, 3));
  }, [](const auto& p) {
    const auto& [k, q, h] = p;
    const PaourisValue a = paouris_product(k, h);
    const PaourisValue b = paouris_product(apply_linear(k, q), Subspace::from_basis(q * h.basis()));
    EXPECT_GT(a.value, 0.0);
    EXPECT_NEAR(a.value, b.value, 3.0 * (a.uncertainty + b.uncertainty) + 1e-3 * a.value);
  });
}

TEST(HalfspaceIntersection, Square) {
  std::vector<Vec> normals;
  for (int i = 0; i < 2; ++i) normals.push_back(basis_vector(2, i)), normals.push_back(-basis_vector(2, i));
  EXPECT_NEAR(halfspace_intersection(normals, {0.5, 0.5, 0.5, 0.5}).volume(), 1.0, 1e-14);
  EXPECT_THROW(halfspace_intersection({basis_vector(2, 0), basis_vector(2, 1), -basis_vector(2, 0)}, {1, 1, 1}), DegenerateInput);
}
