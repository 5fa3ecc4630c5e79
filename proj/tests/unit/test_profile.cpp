#include <gtest/gtest.h>

#include <cmath>

#include "sclab/profile.hpp"
#include "sclab/spline.hpp"

using namespace sclab;

namespace {

Jet sine(double r) { return {std::sin(r), std::cos(r), -std::sin(r)}; }

}  // namespace

TEST(Topology, RoundTrip) {
  for (auto t : {Topology::sphere, Topology::collar, Topology::half_open})
    EXPECT_EQ(topology_from_string(to_string(t)), t);
  EXPECT_THROW(topology_from_string("torus"), InputError);
}

TEST(GridMap, LogarithmicInverts) {
  auto g = GridMap::logarithmic();
  for (double r : {0.1, 1.0, 37.5}) {
    auto [back, drds] = g.from_grid(g.to_grid(r));
    EXPECT_NEAR(back, r, 1e-12 * r);
    EXPECT_NEAR(drds, r, 1e-12 * r);
  }
}

TEST(RadialProfile, SphereValidates) {
  RadialProfile p({ProfilePiece::uniform(0.0, kPi, sine)}, Topology::sphere);
  EXPECT_DOUBLE_EQ(p.length(), kPi);
  EXPECT_TRUE(p.pole_at_start());
  EXPECT_TRUE(p.pole_at_end());
  EXPECT_EQ(p.grid(9).size(), 9u);
}

TEST(RadialProfile, RejectsBadPole) {
  auto wide = [](double r) { return Jet{2.0 * std::sin(r), 2.0 * std::cos(r), -2.0 * std::sin(r)}; };
  EXPECT_THROW(RadialProfile({ProfilePiece::uniform(0.0, kPi, wide)}, Topology::sphere), InputError);
}

TEST(RadialProfile, RejectsGap) {
  auto one = [](double) { return Jet{1.0, 0.0, 0.0}; };
  EXPECT_THROW(RadialProfile({ProfilePiece::uniform(0.0, 1.0, one), ProfilePiece::uniform(1.5, 2.0, one)},
                             Topology::collar),
               InputError);
}

TEST(RadialProfile, CornerNeedsOption) {
  // f' drops from 1 to -1 at r = 1.
  auto up = [](double r) { return Jet{1.0 + r, 1.0, 0.0}; };
  auto down = [](double r) { return Jet{3.0 - r, -1.0, 0.0}; };
  std::vector<ProfilePiece> pieces = {ProfilePiece::uniform(0.0, 1.0, up),
                                      ProfilePiece::uniform(1.0, 2.0, down)};
  EXPECT_THROW(RadialProfile(pieces, Topology::collar), InputError);
  ProfileOptions opt;
  opt.allow_corners = true;
  RadialProfile p(pieces, Topology::collar, opt);
  EXPECT_NEAR(p.junction_mismatches().at(0), 2.0, 1e-12);
  // An upward kink stays illegal.
  std::vector<ProfilePiece> rev = {ProfilePiece::uniform(0.0, 1.0, [](double r) { return Jet{3.0 - r, -1.0, 0.0}; }),
                                   ProfilePiece::uniform(1.0, 2.0, [](double r) { return Jet{1.0 + r, 1.0, 0.0}; })};
  EXPECT_THROW(RadialProfile(rev, Topology::collar, opt), InputError);
}

TEST(RadialProfile, SidedEvaluationAtJunction) {
  auto up = [](double r) { return Jet{1.0 + r, 1.0, 0.0}; };
  auto down = [](double r) { return Jet{3.0 - r, -1.0, 0.0}; };
  ProfileOptions opt;
  opt.allow_corners = true;
  RadialProfile p({ProfilePiece::uniform(0.0, 1.0, up), ProfilePiece::uniform(1.0, 2.0, down)},
                  Topology::collar, opt);
  EXPECT_DOUBLE_EQ(p.warp(1.0, Side::left).d1, 1.0);
  EXPECT_DOUBLE_EQ(p.warp(1.0, Side::right).d1, -1.0);
}

TEST(RadialProfile, FromTableMatchesSine) {
  std::vector<double> r, f;
  for (int i = 0; i <= 400; ++i) {
    r.push_back(kPi * i / 400.0);
    f.push_back(std::sin(r.back()));
  }
  auto p = RadialProfile::from_table(r, f, Topology::sphere);
  for (double x : {0.3, 1.1, 2.9}) EXPECT_NEAR(p.warp(x).v, std::sin(x), 1e-8);
}

TEST(HermiteTable, ReproducesQuintic) {
  auto q = [](double x) { return Jet{x * x * x * x * x - x, 5 * x * x * x * x - 1, 20 * x * x * x}; };
  std::vector<double> x = {0.0, 0.7, 1.3, 2.0}, y, d, dd;
  for (double v : x) {
    auto j = q(v);
    y.push_back(j.v);
    d.push_back(j.d1);
    dd.push_back(j.d2);
  }
  HermiteTable t(x, y, d, dd);
  for (double v : {0.1, 0.95, 1.77}) {
    EXPECT_NEAR(t(v).v, q(v).v, 1e-12);
    EXPECT_NEAR(t(v).d1, q(v).d1, 1e-11);
    EXPECT_NEAR(t(v).d2, q(v).d2, 1e-10);
  }
}

TEST(HermiteTable, OriginShiftsDomain) {
  std::vector<double> x = {0.0, 1.0}, y = {0.0, 1.0}, d = {1.0, 1.0}, dd = {0.0, 0.0};
  HermiteTable t(x, y, d, dd, 1e6);
  EXPECT_DOUBLE_EQ(t.lo(), 1e6);
  EXPECT_NEAR(t(1e6 + 0.25).v, 0.25, 1e-12);
}

TEST(CubicSpline, ClampedSlopes) {
  std::vector<double> x, y;
  for (int i = 0; i <= 50; ++i) {
    x.push_back(i / 50.0);
    y.push_back(std::exp(x.back()));
  }
  CubicSpline s(x, y, 1.0, std::exp(1.0));
  EXPECT_NEAR(s(0.0).d1, 1.0, 1e-12);
  EXPECT_NEAR(s(0.5).v, std::exp(0.5), 1e-7);
}

TEST(Reparametrize, HalfSpeedCircle) {
  // t -> (sin t, |dt| = 2) is a round sphere of radius 2: f(r) = 2 sin(r/2).
  ParametricPiece pp;
  pp.t0 = 0.0;
  pp.t1 = kPi;
  pp.warp_t = [](double t) { return Jet{2.0 * std::sin(t), 2.0 * std::cos(t), -2.0 * std::sin(t)}; };
  pp.speed_t = [](double) { return Jet{2.0, 0.0, 0.0}; };
  pp.map = GridMap::identity();
  auto piece = reparametrize(0.0, pp, 257);
  EXPECT_NEAR(piece.b, 2.0 * kPi, 1e-12);
  for (double r : {0.4, 3.0, 5.9}) {
    auto j = piece.warp(r);
    EXPECT_NEAR(j.v, 2.0 * std::sin(r / 2.0), 1e-10);
    EXPECT_NEAR(j.d1, std::cos(r / 2.0), 1e-9);
    EXPECT_NEAR(j.d2, -0.5 * std::sin(r / 2.0), 1e-7);
  }
}

TEST(Reparametrize, FarStartKeepsPrecision) {
  ParametricPiece pp;
  pp.t0 = 0.0;
  pp.t1 = 1.0;
  pp.warp_t = [](double t) { return Jet{1.0 + t * t, 2.0 * t, 2.0}; };
  pp.speed_t = [](double) { return Jet{1.0, 0.0, 0.0}; };
  pp.map = GridMap::identity();
  auto piece = reparametrize(1e5, pp, 129);
  EXPECT_NEAR(piece.a, 1e5, 1e-9);
  EXPECT_NEAR(piece.warp(1e5 + 0.5).d2, 2.0, 1e-9);
}
