#include "generators.hpp"
#include "oracles.hpp"

#include "lwlab/bodies.hpp"
#include "lwlab/moments.hpp"
#include "lwlab/section.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace lwlab;

namespace {

// int_{-1/2}^{1/2} t^2 dt.
constexpr double kSquareVariance = 1.0 / 12.0;
// Disk of area 1: r = 1/sqrt(pi), E x_1^2 = r^2/4, L = sqrt(r^2/4) = 1/(2 sqrt(pi)).
constexpr double kDiskL = 0.28209479177387814;
// Volume-normalized l1 ball in R^2: int_{B_1^2} x_1^2 = 1/3 over area 2; scaling by
// 1/sqrt2 gives variance 1/12, section sqrt2, product sqrt2/sqrt12.
constexpr double kL1Product = 0.408248290463863;

Mat rotation(double phi) {
  Mat r(2, 2);
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

}  // namespace

TEST(Oracle, FrozenConstants) {
  EXPECT_NEAR(oracle::simpson([](double t) { return t * t; }, -0.5, 0.5, 2), kSquareVariance, 1e-16);
  const double r = 1.0 / std::sqrt(std::numbers::pi);
  // E x_1^2 over the disk by polar integration: (1/area) int_0^r s^3 ds int cos^2.
  const double ex1 = oracle::simpson([](double s) { return s * s * s; }, 0.0, r, 1000) * std::numbers::pi;
  EXPECT_NEAR(std::sqrt(ex1), kDiskL, 1e-12);
  EXPECT_NEAR(kL1Product, std::sqrt(2.0) / std::sqrt(12.0), 1e-15);
}

TEST(Covariance, UnitSquare) {
  const Mat c = covariance(cube(2)).m;
  EXPECT_NEAR(c(0, 0), kSquareVariance, 1e-15);
  EXPECT_NEAR(c(1, 1), kSquareVariance, 1e-15);
  EXPECT_NEAR(c(0, 1), 0.0, 1e-15);
}

TEST(Covariance, RequiresNormalized) { EXPECT_THROW(covariance(simplex(2)), NotNormalized); }

TEST(Covariance, MonteCarloOracle) {
  const Polytope k = gen_random_body(3, 12, false, 2024);
  const auto mc = oracle::monte_carlo(k.vertices(), 10'000'000, 3);
  const Mat c = covariance(k).m;
  const Eigen::MatrixXd mcov = mc.second - Eigen::VectorXd(mc.mean) * Eigen::VectorXd(mc.mean).transpose();
  const double scale = c.diagonal().maxCoeff();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(c(i, j), mcov(i, j), 0.01 * scale) << i << "," << j;
}

TEST(Covariance, Equivariance) {
  gen::forall(20, 8, [](Rng& r) {
    auto c = gen::body(r, 2, 4);
    return std::make_pair(c, gen::unimodular(r, c.n));
  }, [](const auto& p) {
    const auto& [c, a] = p;
    const Mat lhs = covariance(apply_linear(c.k, a)).m;
    const Mat rhs = a * covariance(c.k).m * a.transpose();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
  });
}

TEST(Isotropic, GoldenValues) {
  EXPECT_NEAR(isotropic_constant(cube(2)), 1.0 / std::sqrt(12.0), 1e-9);
  EXPECT_NEAR(isotropic_constant(simplex(2)), 1.0 / (std::sqrt(6.0) * std::pow(3.0, 0.25)), 1e-9);
  EXPECT_NEAR(isotropic_constant(ngon(64)), kDiskL, 1e-3);
  EXPECT_NEAR(ball_isotropic_constant(2), kDiskL, 1e-13);
}

TEST(Isotropic, AffineInvariance) {
  gen::forall(20, 12, [](Rng& r) {
    auto c = gen::body(r, 2, 4);
    Mat a = gen::unimodular(r, c.n) * (0.5 + r.uniform());
    return std::make_tuple(c, a, r.gaussian_vector(c.n));
  }, [](const auto& p) {
    const auto& [c, a, t] = p;
    EXPECT_NEAR(isotropic_constant(apply_map(c.k, {a, t})), isotropic_constant(c.k), 1e-10);
  });
}

TEST(IsotropicTransform, CubeIsOrthogonal) {
  const IsotropicData d = isotropic_transform(cube(3));
  const Mat t = d.transform.linear;
  EXPECT_LT((t * t.transpose() - Mat::Identity(3, 3)).norm(), 1e-10);
}

TEST(IsotropicTransform, Box) {
  for (double a : {1.5, 3.0}) {
    const Polytope box = box2d(a);
    const Mat c = covariance(box).m;
    EXPECT_NEAR(c(0, 0), 1.0 / (12 * a * a), 1e-14);
    EXPECT_NEAR(c(1, 1), a * a / 12.0, 1e-14);
    const IsotropicData d = isotropic_transform(box);
    const Polytope img = apply_map(box, d.transform);
    const Mat ci = covariance(img).m;
    EXPECT_LT((ci - kSquareVariance * Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE(d.residual, 1e-8);
  }
}

TEST(IsotropicTransform, IdempotentProperty) {
  gen::forall(15, 14, [](Rng& r) { return gen::body(r, 2, 4); }, [](const gen::BodyCase& c) {
    const IsotropicData d = isotropic_transform(c.k);
    const Polytope iso = apply_map(c.k, d.transform);
    const Mat cov = covariance(iso).m;
    EXPECT_LT((cov - d.L * d.L * Mat::Identity(c.n, c.n)).cwiseAbs().maxCoeff(), 1e-10);
    const Mat t2 = isotropic_transform(iso).transform.linear;
    EXPECT_LT((t2 * t2.transpose() - Mat::Identity(c.n, c.n)).cwiseAbs().maxCoeff(), 1e-8);
  });
}

TEST(Z2Ellipsoid, VolumeAndSquare) {
  gen::forall(10, 15, [](Rng& r) { return gen::body(r, 2, 4); }, [](const gen::BodyCase& c) {
    const double L = isotropic_constant(c.k);
    EXPECT_NEAR(z2_ellipsoid(c.k).volume(), std::pow(L, c.n) * unit_ball_volume(c.n), 1e-9);
  });
  const Ellipsoid e = z2_ellipsoid(cube(2));
  for (double a : {0.0, 0.4, 1.3}) EXPECT_NEAR(e.support((Vec(2) << std::cos(a), std::sin(a)).finished()), std::sqrt(kSquareVariance), 1e-15);
}

TEST(PrincipalAxes, DiagonalAndTies) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 4, m(1, 1) = 1;
  EXPECT_LT((principal_axes(Ellipsoid{m}) - Mat::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT((principal_axes(Ellipsoid{2.5 * Mat::Identity(3, 3)}) - Mat::Identity(3, 3)).norm(), 1e-15);
}

TEST(PrincipalAxes, RotatedReproducesAngle) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 4, m(1, 1) = 1;
  for (double phi : {0.3, 1.1, -0.7}) {
    const Mat r = rotation(phi);
    const Mat q = principal_axes(Ellipsoid{r * m * r.transpose()});
    EXPECT_NEAR(std::abs(q.col(0).dot(r.col(0))), 1.0, 1e-12);
    double ang = std::atan2(q(1, 0), q(0, 0));
    if (ang - phi > std::numbers::pi / 2) ang -= std::numbers::pi;
    if (phi - ang > std::numbers::pi / 2) ang += std::numbers::pi;
    EXPECT_NEAR(ang, phi, 1e-10);
  }
}

TEST(Hensley, CubeEquality) {
  for (int n = 2; n <= 5; ++n) EXPECT_NEAR(hensley_product(cube(n), basis_vector(n, 0)), hensley_c1(), 1e-12) << n;
}

TEST(Hensley, L1BallEquality) {
  const Polytope l1 = normalize(cross_polytope(2)).first;
  EXPECT_NEAR(hensley_product(l1, basis_vector(2, 0)), kL1Product, 1e-9);
  EXPECT_NEAR(hensley_c2(2), kL1Product, 1e-15);
}

TEST(Hensley, BoundsProperty) {
  gen::forall(60, 16, [](Rng& r) {
    auto c = gen::body(r, 2, 4);
    return std::make_pair(c, r.sphere(c.n));
  }, [](const auto& p) {
    const auto& [c, th] = p;
    const double v = hensley_product(c.k, th);
    EXPECT_GE(v, hensley_c1() - 1e-9);
    EXPECT_LE(v, hensley_c2(c.n) + 1e-9);
  });
}
