#include <gtest/gtest.h>

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "sclab/gallery.hpp"
#include "sclab/mu_bubble.hpp"
#include "sclab/spectral.hpp"

using namespace sclab;

namespace {

RadialField constant(double c) {
  return RadialField::analytic([c](double) { return Jet{c, 0.0, 0.0}; }, FieldSign::positive);
}

// Root of g on [a, b] by bracketing, independent of the bubble solver.
double root(const std::function<double(double)>& g, double a, double b) {
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t it = 200;
  auto [lo, hi] = boost::math::tools::toms748_solve(g, a, b, tol, it);
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Weight, PowerJets) {
  auto phi = RadialField::analytic([](double r) { return Jet{2.0 + std::cos(r), -std::sin(r), -std::cos(r)}; },
                                   FieldSign::positive);
  auto u = weight_from_supersolution(phi, 0.4);
  const double r = 0.7, h = 1e-4;
  auto at = [&](double x) { return std::pow(2.0 + std::cos(x), 1.0 / 0.4); };
  EXPECT_NEAR(u(r).v, at(r), 1e-12);
  EXPECT_NEAR(u(r).d1, (at(r + h) - at(r - h)) / (2 * h), 1e-6);
  EXPECT_NEAR(u(r).d2, (at(r + h) - 2 * at(r) + at(r - h)) / (h * h), 1e-4);
}

TEST(Weight, ResidualOfEigenfunction) {
  auto m = make_spheroid(0.2);
  SpectralParams sp;
  sp.beta = 0.7;
  auto eig = first_eigenvalue(m, sp, Boundary::closed);
  auto u = weight_from_supersolution(eig.eigenfunction, 0.7);
  EXPECT_LE(weight_residual(m, 0.7, eig.lambda1, u), 1e-5);
}

TEST(GeodesicChain, SphereOracle) {
  // u ≡ 1, β = λ = 1 on the unit sphere: I0 = I1 = I2 = ∫ψ'² - ∫ψ² = 0, I3 = (4/3)(π/2) - π/2.
  auto c = weighted_geodesic_chain(make_round_sphere(), 1.0, 1.0, constant(1.0));
  EXPECT_NEAR(c.lines[0], 0.0, 1e-8);
  EXPECT_NEAR(c.lines[1], 0.0, 1e-8);
  EXPECT_NEAR(c.lines[2], 0.0, 1e-8);
  EXPECT_NEAR(c.lines[3], kPi / 6.0, 1e-8);
  EXPECT_EQ(c.violated_line, -1);
  EXPECT_NEAR(c.bound, 2.0 * kPi / std::sqrt(3.0), 1e-12);
}

TEST(GeodesicChain, LineOneEqualsLineTwo) {
  // The two middle lines agree algebraically for any weight.
  auto m = make_spheroid(0.3);
  auto u = RadialField::analytic([](double r) { return Jet{1.5 + std::cos(r), -std::sin(r), -std::cos(r)}; },
                                 FieldSign::positive);
  auto c = weighted_geodesic_chain(m, 0.8, 0.5, u);
  EXPECT_NEAR(c.lines[1], c.lines[2], 1e-8 * std::max(1.0, std::abs(c.lines[1])));
}

class GeodesicSpheroid : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(GeodesicSpheroid, ChainAndBound) {
  auto [eps, beta] = GetParam();
  auto m = make_spheroid(eps);
  SpectralParams sp;
  sp.beta = beta;
  auto eig = first_eigenvalue(m, sp, Boundary::closed);
  auto u = weight_from_supersolution(eig.eigenfunction, beta);
  auto r = weighted_geodesic_audit(m, beta, eig.lambda1, u);
  EXPECT_TRUE(r.passed()) << r.note;
}

INSTANTIATE_TEST_SUITE_P(Family, GeodesicSpheroid,
                         ::testing::Values(std::pair{0.3, 1.0}, std::pair{0.1, 0.5}, std::pair{-0.2, 2.0}));

TEST(GeodesicChain, Refusals) {
  auto m = make_round_sphere();
  EXPECT_THROW(weighted_geodesic_audit(m, 0.25, 1.0, constant(1.0)), InputError);
  EXPECT_EQ(weighted_geodesic_audit(m, 1.0, 0.0, constant(1.0)).verdict, Verdict::skipped);
}

TEST(BubbleProblem, ValidatesObstacles) {
  auto m = make_round_sphere();
  EXPECT_THROW(BubbleProblem(m, constant(0.0), constant(1.0), 2.0, 1.0, 1.5), InputError);
  EXPECT_THROW(BubbleProblem(m, constant(0.0), constant(1.0), 0.5, 2.0, 2.5), InputError);
}

TEST(BubbleEnergy, FlatWeightOracle) {
  // h ≡ 1, u ≡ 1: E(t) = 2π sin t - ∫_{t0}^{t} 2π sin = 2π (sin t + cos t - cos t0).
  auto m = make_round_sphere();
  BubbleProblem p(m, constant(1.0), constant(1.0), 0.2, 3.0, 0.5);
  for (double t : {0.3, 1.0, 2.7})
    EXPECT_NEAR(bubble_energy(p, t), 2.0 * kPi * (std::sin(t) + std::cos(t) - std::cos(0.5)), 1e-10);
  EXPECT_THROW(bubble_energy(p, 3.1), InputError);
}

TEST(SolveBubble, ZeroHOnSphereGoesToBoundary) {
  auto m = make_round_sphere();
  BubbleProblem p(m, constant(0.0), constant(1.0), 0.0, kPi, 0.0);
  auto s = solve_bubble(p);
  EXPECT_TRUE(s.at_boundary);
  EXPECT_NEAR(s.t, 0.0, 1e-8);
}

TEST(SolveBubble, CotProfileMatchesRoot) {
  // cot t = cot(2(t - 0.1)) has its root at t = 0.2.
  auto m = make_round_sphere();
  auto h = cot_profile(1.0, 2.0, 0.1);
  BubbleProblem p(m, h.h, constant(1.0), 0.15, 1.5, 0.5);
  auto s = solve_bubble(p);
  double t = root([](double x) { return std::cos(x) / std::sin(x) - 1.0 / std::tan(2.0 * (x - 0.1)); }, 0.16, 1.0);
  EXPECT_NEAR(t, 0.2, 1e-12);
  EXPECT_NEAR(s.t, t, 1e-8 * kPi);
  EXPECT_FALSE(s.at_boundary);
  EXPECT_LT(s.residual, 1e-6);
}

TEST(SolveBubble, TwoNeckTiesPickSmaller) {
  // h = 0, u = 1: critical sets are the necks, f' = 0. The band keeps both.
  auto m = make_two_neck();
  BubbleProblem p(m, constant(0.0), constant(1.0), 0.2, m.length() - 0.2, 0.2);
  auto s = solve_bubble(p);
  double neck = root([&](double r) { return m.warp(r).d1; }, 0.6, 0.9);
  EXPECT_NEAR(s.t, neck, 1e-6);
  EXPECT_GE(s.near_ties, 2u);
  EXPECT_FALSE(s.at_boundary);
}

TEST(PrescribedH, Constants) {
  auto h = prescribed_h(1.0, 1.0, 0.05, 0.0);
  EXPECT_NEAR(h.c2, std::sqrt(0.7), 1e-12);
  EXPECT_NEAR(h.c1, std::sqrt(1.0 / 0.7), 1e-12);
  EXPECT_NEAR(h.c1 * h.c2, 1.0, 1e-12);
  EXPECT_NEAR(h.reach(), kPi / std::sqrt(0.7), 1e-12);
  EXPECT_THROW(prescribed_h(0.25, 1.0, 0.05, 0.0), InputError);
  EXPECT_THROW(prescribed_h(1.0, 1.0, 0.8, 0.0), InputError);
}

TEST(PrescribedH, InequalityHoldsWithEqualityAtZero) {
  auto h = prescribed_h(1.0, 1.0, 0.05, 0.0);
  auto r = audit_h_inequality(1.0, 1.0, h.h, 0.01, h.reach() - 0.01);
  EXPECT_TRUE(r.passed()) << r.note;
  // Doubling c2 breaks it.
  auto bad = cot_profile(h.c1, 2.0 * h.c2, 0.0);
  EXPECT_FALSE(audit_h_inequality(1.0, 1.0, bad.h, 0.01, bad.reach() - 0.01).passed());
}

TEST(Stability, CotProfileOnSphereFails) {
  auto m = make_round_sphere();
  auto h = cot_profile(1.0, 2.0, 0.1);
  BubbleProblem p(m, h.h, constant(1.0), 0.15, 1.5, 0.5);
  auto r = stability_audit(p, 0.2, 1.0, 1.0);
  EXPECT_FALSE(r.passed());
}

TEST(BubbleDiameter, SphereWithinFivePercent) {
  auto m = make_round_sphere();
  auto r = audit_bubble_diameter(m, 1.0, 1.0, 0.01, constant(1.0));
  EXPECT_TRUE(r.passed());
  double bm = 2.0 * kPi / std::sqrt(3.0);
  double reach = kPi / std::sqrt(1.0 - 0.25 - 0.01);
  EXPECT_NEAR(r.rhs, reach + 1e-6 * kPi, 1e-12);
  EXPECT_LE(reach / bm, 1.05);
}

TEST(BubbleDiameter, LargeSphereFails) {
  // Radius 2 with λ = 1 violates the hypothesis; the certificate fails.
  auto r = audit_bubble_diameter(make_round_sphere(2.0), 1.0, 1.0, 0.01, constant(1.0));
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.note.find("bubble at"), std::string::npos);
}
