#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "sclab/gallery.hpp"
#include "sclab/mt_audit.hpp"

using namespace sclab;

namespace {

// Dense quadrature oracle for ∫ g 2π f dr on [a, b].
double quad(const std::function<double(double)>& g, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 15, 1e-13);
}

}  // namespace

TEST(TestFunctions, TentShape) {
  auto t = mt_tent(0.2, 0.6, 2.0);
  EXPECT_DOUBLE_EQ(t.u(0.1).v, 2.0);
  EXPECT_DOUBLE_EQ(t.u(0.4).v, 1.0);
  EXPECT_DOUBLE_EQ(t.u(0.7).v, 0.0);
  EXPECT_NEAR(t.u(0.4).d1, -5.0, 1e-12);
  EXPECT_EQ(t.breaks.size(), 2u);
  EXPECT_THROW(mt_tent(0.5, 0.4), InputError);
}

TEST(TestFunctions, BumpFamilies) {
  EXPECT_EQ(mt_bump(0.0, 0.5).family, "bump_pole");
  EXPECT_EQ(mt_bump(0.6, 0.5).family, "bump");
  EXPECT_NEAR(mt_bump(0.0, 0.5).u(0.0).v, 1.0, 1e-14);
  EXPECT_THROW(mt_bump(0.2, 0.5), InputError);
}

TEST(TestFunctions, SampleSeededAndSupported) {
  auto a = mt_sample(1.0, 40, 7), b = mt_sample(1.0, 40, 7);
  ASSERT_EQ(a.size(), 40u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].family, b[i].family);
    EXPECT_DOUBLE_EQ(a[i].u(0.3).v, b[i].u(0.3).v);
    EXPECT_NEAR(a[i].u(1.0).v, 0.0, 1e-14);
  }
}

TEST(Dirichlet, ConeTentAgainstDenseOracle) {
  const double s = 0.5, R = 1.0, a = 0.3, xi = 2.0 * kPi * 0.5;
  auto m = make_cone(s, R);
  auto t = mt_tent(a, R);
  auto res = mt_dirichlet_audit(m, R, t, xi);
  // E = ∫_a^R (1/(R-a))² 2π s r dr.
  double E = kPi * s * (R * R - a * a) / ((R - a) * (R - a));
  EXPECT_NEAR(res.energy, E, 1e-10 * E);
  double area_total = kPi * s * R * R;
  auto u = [&](double r) { return r < a ? 1.0 : (R - r) / (R - a); };
  double num = quad([&](double r) { return std::exp(xi * u(r) * u(r) / E) * 2.0 * kPi * s * r; }, 0.0, a) +
               quad([&](double r) { return std::exp(xi * u(r) * u(r) / E) * 2.0 * kPi * s * r; }, a, R);
  EXPECT_NEAR(res.ratio, num / area_total, 1e-6 * num / area_total);
}

TEST(Dirichlet, ScaleInvariant) {
  auto m = make_hemisphere();
  auto b = mt_bump(0.0, 1.2);
  auto b3 = mt_bump(0.0, 1.2, 3.0);
  auto r1 = mt_dirichlet_audit(m, kPi / 2, b, 5.0);
  auto r3 = mt_dirichlet_audit(m, kPi / 2, b3, 5.0);
  EXPECT_NEAR(r1.ratio, r3.ratio, 1e-10 * r1.ratio);
  EXPECT_NEAR(r3.energy, 9.0 * r1.energy, 1e-10 * r3.energy);
}

TEST(Dirichlet, HemisphereUpperBound) {
  EXPECT_NEAR(dirichlet_ratio_ub(make_hemisphere(), kPi / 2), 2.0 * kPi, 1e-6);
  EXPECT_NEAR(dirichlet_ratio_ub(make_cone(0.5), 1.0), 2.0 * kPi, 1e-6);
}

TEST(Dirichlet, Refusals) {
  auto m = make_hemisphere();
  EXPECT_THROW(mt_dirichlet_audit(m, kPi / 2, mt_tent(0.1, 0.5), 7.0), InputError);
  // u(R) != 0
  EXPECT_THROW(mt_dirichlet_audit(m, 0.3, mt_tent(0.1, 0.5), 5.0), InputError);
  // E = 0
  EXPECT_THROW(mt_dirichlet_audit(m, kPi / 2, mt_tent(0.1, 0.5, 0.0), 5.0), InputError);
}

TEST(Dirichlet, AdvisoryNearBound) {
  auto m = make_hemisphere();
  EXPECT_TRUE(mt_dirichlet_audit(m, kPi / 2, mt_tent(0.1, 0.5), 2.0 * kPi * 0.95).advisory);
  EXPECT_FALSE(mt_dirichlet_audit(m, kPi / 2, mt_tent(0.1, 0.5), 3.0).advisory);
}

TEST(Closed, SphereCosine) {
  // u = cos r on the unit sphere: mean 0, E = ∫ sin² r 2π sin r dr = 8π/3.
  MTTestFunction c{"cos", RadialField::analytic([](double r) {
                     return Jet{std::cos(r), -std::sin(r), -std::cos(r)};
                   }), {}};
  auto res = mt_closed_audit(make_round_sphere(), c);
  EXPECT_NEAR(res.energy, 8.0 * kPi / 3.0, 1e-8);
  EXPECT_GT(res.ratio, 1.0);
}

TEST(Closed, ZeroFunctionGivesOne) {
  auto res = mt_closed_audit(make_round_sphere(), mt_tent(0.5, 1.0, 0.0));
  EXPECT_DOUBLE_EQ(res.ratio, 1.0);
  EXPECT_DOUBLE_EQ(res.ratio_exp, 1.0);
}

TEST(Closed, OnlySpheres) {
  EXPECT_THROW(mt_closed_audit(make_hemisphere(), mt_tent(0.2, 0.5)), InputError);
}

TEST(Suite, HemisphereYoungDomination) {
  auto s = mt_suite(make_hemisphere(), kPi / 2, 2.0 * kPi, 60, 3);
  ASSERT_EQ(s.results.size(), 60u);
  EXPECT_TRUE(s.young_dominated);
  EXPECT_GE(s.max_ratio, s.max_ratio_exp);
  for (const auto& r : s.results) {
    EXPECT_GE(r.ratio, 1.0);
    EXPECT_LE(r.ratio_exp, r.ratio * (1.0 + 1e-12));
  }
}

TEST(Suite, ClosedSphere) {
  auto s = mt_suite(make_round_sphere(), 0.0, 0.0, 30, 5);
  EXPECT_TRUE(s.young_dominated);
  EXPECT_TRUE(std::isfinite(s.max_ratio));
}

TEST(Envelope, HemisphereAndCone) {
  auto h = mt_envelope_audit(make_hemisphere(), kPi / 2, 2.0 * kPi, 60);
  EXPECT_TRUE(h.passed()) << h.note;
  auto c = mt_envelope_audit(make_cone(0.5), 1.0, 2.0 * kPi, 60);
  EXPECT_TRUE(c.passed()) << c.note;
}
