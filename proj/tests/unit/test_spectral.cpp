#include <gtest/gtest.h>

#include <cmath>

#include "sclab/gallery.hpp"
#include "sclab/spectral.hpp"

using namespace sclab;

namespace {

SpectralParams params(double beta, std::size_t n = 2048) {
  SpectralParams p;
  p.beta = beta;
  p.n = n;
  return p;
}

}  // namespace

class SphereBeta : public ::testing::TestWithParam<double> {};

TEST_P(SphereBeta, FirstEigenvalueIsBeta) {
  double beta = GetParam();
  auto r = first_eigenvalue(make_round_sphere(), params(beta), Boundary::closed);
  EXPECT_NEAR(r.lambda1, beta, 1e-6);
  // The eigenfunction is constant: 1/√(4π).
  EXPECT_NEAR(r.eigenfunction(1.3).v, 1.0 / std::sqrt(4.0 * kPi), 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Betas, SphereBeta, ::testing::Values(0.3, 0.5, 1.0));

TEST(Spectral, RadiusTwoQuarter) {
  auto r = first_eigenvalue(make_round_sphere(2.0), params(1.0), Boundary::closed);
  EXPECT_NEAR(r.lambda1, 0.25, 1e-6);
}

TEST(Spectral, ScalingProperty) {
  auto m = make_spheroid(0.2);
  double l = first_eigenvalue(m, params(0.7), Boundary::closed).lambda1;
  for (double c : {0.5, 3.0}) {
    double lc = first_eigenvalue(m.rescaled(c), params(0.7), Boundary::closed).lambda1;
    EXPECT_NEAR(lc * c * c, l, 1e-9 * std::abs(l) + 1e-12);
  }
}

TEST(Spectral, HemisphereDirichletAndNeumann) {
  // -Δ + K on the hemisphere: Dirichlet mode cos r gives 2 + 1, Neumann the constant gives 1.
  auto m = make_hemisphere();
  EXPECT_NEAR(first_eigenvalue(m, params(1.0, 4096), Boundary::dirichlet).lambda1, 3.0, 1e-5);
  EXPECT_NEAR(first_eigenvalue(m, params(1.0, 4096), Boundary::neumann).lambda1, 1.0, 1e-6);
}

TEST(Spectral, SubdomainDirichlet) {
  // Band [a, b] of the flat cylinder of the capsule (K = 0): -u'' with u(a) = u(b) = 0.
  auto m = make_capsule(4.0);
  double a = kPi / 2 + 0.5, b = kPi / 2 + 3.5;
  double l = first_eigenvalue(m, params(1.0, 4096), Boundary::dirichlet, std::pair{a, b}).lambda1;
  EXPECT_NEAR(l, (kPi / 3.0) * (kPi / 3.0), 1e-5);
}

TEST(Spectral, RayleighUpperBound) {
  // Constant test function: Rayleigh quotient β∫K/|Σ| = 4πβ/|Σ| >= λ1.
  auto m = make_two_neck();
  double beta = 0.8;
  auto one = RadialField::analytic([](double) { return Jet{1.0, 0.0, 0.0}; });
  double area_total = area(m, 0.0, m.length()).value;
  double rq = rayleigh_quotient(m, beta, one, Boundary::closed);
  EXPECT_NEAR(rq, 4.0 * kPi * beta / area_total, 1e-6);
  EXPECT_LE(first_eigenvalue(m, params(beta), Boundary::closed).lambda1, rq);
}

TEST(Spectral, EigenfunctionRayleighMatches) {
  auto m = make_spheroid(0.3);
  auto r = first_eigenvalue(m, params(1.0), Boundary::closed);
  EXPECT_NEAR(rayleigh_quotient(m, 1.0, r.eigenfunction, Boundary::closed), r.lambda1, 1e-6);
  EXPECT_LT(r.residual, 1e-8);
}

TEST(Spectral, CertifiedBelowComputed) {
  auto m = make_spheroid(0.3);
  double c = certified_lambda1(m, params(1.0), Boundary::closed);
  double l = first_eigenvalue(m, params(1.0, 4096), Boundary::closed).lambda1;
  EXPECT_LE(c, l);
  EXPECT_GT(c, l - 1e-4);
}

TEST(Spectral, SpheroidPositive) {
  EXPECT_GT(first_eigenvalue(make_spheroid(0.1), params(1.0), Boundary::closed).lambda1, 0.0);
}

TEST(Pencil, SymmetricPositiveMass) {
  auto m = make_round_sphere();
  auto p = assemble_pencil(m, 0.5, m.grid(64), Boundary::closed);
  EXPECT_EQ(p.diag.size(), p.mass.size());
  EXPECT_EQ(p.off.size() + 1, p.diag.size());
  for (double w : p.mass) EXPECT_GT(w, 0.0);
  for (double o : p.off) EXPECT_LE(o, 0.0);
}

TEST(Supersolution, BetaQuarterIdentity) {
  // Δφ - (K/4 - λ)φ = 0 for f = e^{2λx²}, φ = e^{-λx²}.
  auto q = make_beta_quarter_model(1.0, 5.0);
  EXPECT_LE(std::abs(supersolution_residual(q.metric, 0.25, 1.0, q.phi, 2048)), 1e-8);
}

TEST(Supersolution, SymbolicOracleAtNodes) {
  // f = e^{2x²}: K = -(16x² + 4); φ = e^{-x²}: Δφ = φ'' + 4xφ' = (-4x² - 2)φ = (K/4 - 1)φ.
  auto q = make_beta_quarter_model(1.0, 5.0);
  for (double x : {0.0, 0.3, 2.0}) {
    double r = x + 5.0;
    double phi = std::exp(-x * x);
    EXPECT_NEAR(q.phi(r).v, phi, 1e-14);
    EXPECT_NEAR(radial_laplacian(q.metric, q.phi(r), r), (-4.0 * x * x - 2.0) * phi, 1e-12);
    EXPECT_NEAR(gauss_curvature(q.metric, r), -(16.0 * x * x + 4.0), 1e-9 * (16.0 * x * x + 4.0));
  }
}

TEST(Supersolution, ConstantOnSphere) {
  // φ = 1: Δφ - (βK - λ) = λ - β, nonpositive iff λ <= β.
  auto m = make_round_sphere();
  auto one = RadialField::analytic([](double) { return Jet{1.0, 0.0, 0.0}; }, FieldSign::positive);
  EXPECT_NEAR(supersolution_residual(m, 0.5, 0.5, one), 0.0, 1e-12);
  EXPECT_NEAR(supersolution_residual(m, 0.5, 0.7, one), 0.2, 1e-12);
}

TEST(Supersolution, UpwardKinkIsDefect) {
  // On the capsule φ = 1 + c|r - π/2| kinks upward at the cap junction, where f' is smooth.
  auto m = make_capsule(2.0);
  const double r0 = kPi / 2;
  auto kink = [r0](double c) {
    return RadialField::analytic_sided([r0, c](double r, Side s) {
      bool right = r > r0 || (r == r0 && s == Side::right);
      return right ? Jet{1.0 + c * (r - r0), c, 0.0} : Jet{1.0 + c * (r0 - r), -c, 0.0};
    }, FieldSign::positive);
  };
  EXPECT_GT(supersolution_residual(m, 0.5, -100.0, kink(0.1), 256, std::pair{1.0, 2.0}), 0.0);
  // A downward corner is allowed.
  EXPECT_LE(supersolution_residual(m, 0.5, -100.0, kink(-0.1), 256, std::pair{1.0, 2.0}), 0.0);
}

class PowerNeckBeta : public ::testing::TestWithParam<double> {};

TEST_P(PowerNeckBeta, BundledPhiIsSupersolution) {
  auto b = make_power_neck(CounterexampleParams::make(GetParam(), 100.0));
  EXPECT_LE(supersolution_residual(b.metric, GetParam(), 0.0, b.phi, 2048, std::nullopt, true), 1e-10);
  EXPECT_GE(first_eigenvalue(b.metric, params(GetParam(), 2048), Boundary::closed).lambda1, -1e-6);
}

INSTANTIATE_TEST_SUITE_P(Betas, PowerNeckBeta, ::testing::Values(0.3, 0.4, 0.45));

TEST(Perturbation, SphereMatchesCentral) {
  auto h = RadialField::analytic([](double r) {
    double c = std::cos(r), s = std::sin(r);
    return Jet{c * c, -2.0 * s * c, -2.0 * (c * c - s * s)};
  });
  auto p = eigenvalue_perturbation(make_round_sphere(), 1.0, h, 1e-4);
  // φ is constant, so dλ/dt = -2β mean(h) = -2/3.
  EXPECT_NEAR(p.analytic_full, -2.0 / 3.0, 1e-6);
  EXPECT_NEAR(p.central_diff, p.analytic_full, 1e-3 * std::abs(p.analytic_full));
}
