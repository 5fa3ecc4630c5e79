// Acceptance run: one line per criterion. Exit status is 0 when the set of
// failing criteria equals the --expect-fail list (empty by default).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sclab/conformal.hpp"
#include "sclab/distances.hpp"
#include "sclab/fundamental_eq.hpp"
#include "sclab/gallery.hpp"
#include "sclab/mt_audit.hpp"
#include "sclab/mu_bubble.hpp"
#include "sclab/spectral.hpp"

using namespace sclab;

namespace {

// Pinned tolerances.
constexpr double kSpectralTol = 1e-6;
constexpr double kSpectralSeconds = 1.0;
constexpr double kQuarterTol = 1e-8;
constexpr double kJunctionTol = 1e-8;
constexpr double kNodeRoundoff = 1e-10;  // relative residual at double precision
constexpr double kTanhMin = 0.16;
constexpr double kRhsMax = 0.1;
constexpr double kSlopeRel = 0.15;
constexpr double kRatioRel = 0.20;
constexpr double kScalingSeconds = 60.0;
constexpr double kFundamentalRel = 1e-6;
constexpr double kBubbleRel = 0.05;
constexpr double kPerturbRel = 1e-3;
constexpr double kGapTol = 1e-6;
constexpr double kEnergyTol = 1e-6;
constexpr double kInvarianceTol = 1e-8;
constexpr double kRigidityEnd = 0.05;
constexpr double kGreatCircleRel = 5e-3;
constexpr double kDijkstraRel = 0.02;
constexpr double kEnvelopeGrowth = 0.10;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SpectralParams params(double beta, std::size_t n = 2048) {
  SpectralParams p;
  p.beta = beta;
  p.n = n;
  return p;
}

RadialField field(std::function<Jet(double)> f) { return RadialField::analytic(std::move(f)); }

std::vector<std::pair<std::string, WarpedMetric>> closed_gallery() {
  return {{"round_sphere", make_round_sphere()},
          {"round_sphere_r2", make_round_sphere(2.0)},
          {"spheroid_0.3", make_spheroid(0.3)},
          {"spheroid_-0.2", make_spheroid(-0.2)},
          {"capsule", make_capsule(2.0)},
          {"two_neck", make_two_neck()}};
}

void c1(Outcome& o) {
  for (double beta : {0.3, 0.5, 1.0}) {
    auto t0 = Clock::now();
    double l = first_eigenvalue(make_round_sphere(), params(beta), Boundary::closed).lambda1;
    double dt = seconds_since(t0);
    o.detail << " beta=" << beta << " err=" << std::abs(l - beta) << " t=" << dt << "s";
    o.require(std::abs(l - beta) <= kSpectralTol, "lambda1 off");
    o.require(dt < kSpectralSeconds, "slow");
  }
}

void c2(Outcome& o) {
  auto q = make_beta_quarter_model(1.0, 5.0);
  double res = std::abs(supersolution_residual(q.metric, 0.25, 1.0, q.phi, 2048));
  o.detail << " max residual=" << res;
  o.require(res <= kQuarterTol, "residual");
}

void c3(Outcome& o) {
  double worst_j = 0.0, worst_res = -1e300;
  for (double beta : {0.3, 0.4, 0.45}) {
    auto b = make_power_neck(CounterexampleParams::make(beta, 100.0));
    for (double j : b.junction_f) worst_j = std::max(worst_j, j);
    double res = supersolution_residual(b.metric, beta, 0.0, b.phi, 2048, std::nullopt, true);
    worst_res = std::max(worst_res, res);
    o.require(res <= kNodeRoundoff, "positive residual at beta " + std::to_string(beta));
  }
  auto c = CounterexampleParams::make(0.4, 100.0);
  o.detail << " junction=" << worst_j << " residual=" << worst_res << " tanh=" << c.tanh_term()
           << " rhs=" << c.rhs_term();
  o.require(worst_j <= kJunctionTol, "junction");
  o.require(c.tanh_term() >= kTanhMin, "tanh term");
  o.require(c.rhs_term() <= kRhsMax, "rhs term");
}

void c4(Outcome& o) {
  auto t0 = Clock::now();
  auto rep = scaling_sweep(0.4, {1e2, 1e3, 1e4, 1e5}, 4096);
  double dt = seconds_since(t0);
  double want_slope = 1.0 - rep.p;
  std::size_t used = 0;
  for (const auto& r : rep.rows) used += !r.excluded;
  o.detail << " slope=" << rep.slope_ch_diam << " (want " << want_slope << ")"
           << " ratio=" << rep.exponent_ratio << " (want " << rep.p << ") t=" << dt << "s";
  o.require(used == rep.rows.size(), "excluded rows");
  o.require(std::abs(rep.slope_ch_diam / want_slope - 1.0) <= kSlopeRel, "Ch*diam slope");
  o.require(std::abs(rep.exponent_ratio / rep.p - 1.0) <= kRatioRel, "exponent ratio");
  o.require(dt < kScalingSeconds, "slow");
}

void c5(Outcome& o) {
  std::vector<std::pair<WarpedMetric, double>> ms = {
      {make_round_sphere(), 1.0},
      {make_spheroid(0.1), 1.0},
      {make_spheroid(0.2), 1.0},
      {make_spheroid(-0.3), 1.0},
      {make_power_neck(CounterexampleParams::make(0.4, 100.0)).metric, 0.4}};
  double worst = 1e300;
  std::size_t count = 0;
  for (const auto& [m, beta] : ms) {
    double lam = certified_lambda1(m, params(beta), Boundary::closed);
    o.require(lam >= 0.0, "negative certified lambda1");
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
      auto c = coordinate_curve(m, U(rng) * m.length());
      auto tf = random_test_function(rng, c.rho_minus, c.rho_plus);
      auto rec = evaluate_fundamental(m, beta, lam, c, tf);
      double scale = std::max({std::abs(rec.lhs), std::abs(rec.rhs), 1.0});
      worst = std::min(worst, rec.margin / scale);
      ++count;
    }
  }
  o.detail << " cases=" << count << " min relative margin=" << worst;
  o.require(count == 250 && worst >= -kFundamentalRel, "margin");
}

void c6(Outcome& o) {
  std::size_t passed = 0, skipped_n = 0;
  for (const auto& [name, m] : closed_gallery()) {
    for (double beta : {0.6, 1.0, 2.0}) {
      auto r = audit_isoperimetric_1(m, beta);
      double lam = certified_lambda1(m, params(beta), Boundary::closed);
      if (lam >= 0.0) {
        o.require(r.passed(), "global " + name);
        passed += r.passed();
      } else {
        o.require(r.verdict == Verdict::skipped, "global not fail-closed " + name);
        skipped_n += r.verdict == Verdict::skipped;
      }
    }
  }
  // Collar bands: certified on caps and spheroid equators, fail-closed across a neck.
  struct Band { WarpedMetric m; double r0, rho; };
  std::vector<Band> bands = {{make_round_sphere(), kPi / 2, 0.5},
                             {make_round_sphere(), 1.0, 0.8},
                             {make_spheroid(0.3), 1.2, 0.4},
                             {make_capsule(2.0), kPi / 2 + 1.0, 0.9}};
  for (const auto& b : bands) {
    for (double beta : {0.6, 1.0, 2.0}) {
      auto r = audit_collar(b.m, beta, b.r0, b.rho);
      o.require(r.passed(), "collar");
      passed += r.passed();
    }
  }
  auto neck = audit_collar(make_two_neck(), 0.75, 0.751, 0.7);
  o.require(neck.verdict == Verdict::skipped, "collar not fail-closed");
  skipped_n += neck.verdict == Verdict::skipped;
  o.detail << " passed=" << passed << " fail-closed=" << skipped_n;
}

void c7(Outcome& o) {
  std::size_t bm = 0, chains = 0;
  for (const auto& [name, m] : closed_gallery()) {
    for (double beta : {0.3, 0.5, 1.0, 2.0}) {
      auto eig = first_eigenvalue(m, params(beta), Boundary::closed);
      if (!(eig.lambda1 > 0.0)) continue;
      auto r = audit_bonnet_myers(m, beta, eig.lambda1);
      o.require(r.passed(), "Bonnet-Myers " + name);
      ++bm;
      auto u = weight_from_supersolution(eig.eigenfunction, beta);
      auto chain = weighted_geodesic_audit(m, beta, eig.lambda1, u);
      o.require(chain.passed(), "chain " + name);
      ++chains;
    }
  }
  // μ-bubble route on the round sphere (λ1 = β, u ≡ 1).
  double worst_ratio = 0.0;
  auto one = RadialField::analytic([](double) { return Jet{1.0, 0.0, 0.0}; }, FieldSign::positive);
  for (double beta : {0.5, 1.0, 2.0}) {
    auto r = audit_bubble_diameter(make_round_sphere(), beta, beta, 0.01, one);
    o.require(r.passed(), "bubble certificate");
    double slack = 1.0 - 1.0 / (4.0 * beta) - 0.01;
    double reach = kPi / std::sqrt(slack);
    double bound = 2.0 * kPi * beta / std::sqrt(beta * (4.0 * beta - 1.0));
    worst_ratio = std::max(worst_ratio, reach / bound);
  }
  o.detail << " Bonnet-Myers runs=" << bm << " chains=" << chains << " bubble/geodesic ratio=" << worst_ratio;
  o.require(worst_ratio <= 1.0 + kBubbleRel, "bubble bound ratio");
}

void c8(Outcome& o) {
  std::vector<std::pair<std::string, RadialField>> hs = {
      {"cos^2", field([](double r) {
         double c = std::cos(r), s = std::sin(r);
         return Jet{c * c, -2.0 * s * c, -2.0 * (c * c - s * s)};
       })},
      {"1+cos", field([](double r) { return Jet{1.0 + std::cos(r), -std::sin(r), -std::cos(r)}; })},
      {"exp(-r)", field([](double r) { double e = std::exp(-r); return Jet{e, -e, e}; })},
      {"r^2", field([](double r) { return Jet{r * r, 2.0 * r, 2.0}; })},
      {"sin^2+cos/2", field([](double r) {
         double c = std::cos(r), s = std::sin(r);
         return Jet{s * s + 0.5 * c, 2.0 * s * c - 0.5 * s, 2.0 * (c * c - s * s) - 0.5 * c};
       })}};
  double worst = 0.0;
  for (const auto& [name, h] : hs) {
    auto p = eigenvalue_perturbation(make_round_sphere(), 1.0, h, 1e-4);
    double rel = std::abs(p.central_diff - p.analytic_full) / std::abs(p.analytic_full);
    worst = std::max(worst, rel);
    o.require(rel <= kPerturbRel, name);
  }
  o.detail << " worst relative gap=" << worst;
}

void c9(Outcome& o) {
  ConformalOptions eig_opt;
  eig_opt.residual_tol = 1e-5;
  std::size_t bundles = 0;
  double min_gap = 1e300, max_excess = -1e300, max_inv = 0.0;
  auto check = [&](const ConformalBundle& b) {
    ++bundles;
    min_gap = std::min(min_gap, b.min_gap);
    max_excess = std::max(max_excess, b.energy_tilde - 4.0 * kPi / b.beta);
    max_inv = std::max(max_inv, std::abs(b.energy_tilde - b.energy_base));
    for (const auto& r : conformal_audits(b)) o.require(r.passed(), r.audit);
  };
  for (double eps : {0.3, 0.1, -0.2}) {
    auto m = make_spheroid(eps);
    for (double beta : {0.5, 1.0}) {
      auto eig = first_eigenvalue(m, params(beta), Boundary::closed);
      for (double target : {1.0, 4.0 * kPi})
        check(build_conformal(m, beta, eig.lambda1, eig.eigenfunction, target, eig_opt));
    }
  }
  auto one = RadialField::analytic([](double) { return Jet{1.0, 0.0, 0.0}; }, FieldSign::positive);
  check(build_conformal(make_round_sphere(2.0), 1.0, 0.25, one, 4.0 * kPi));
  ConformalOptions corners;
  corners.allow_corners = true;
  for (double beta : {0.3, 0.4, 0.45}) {
    auto ab = make_power_neck(CounterexampleParams::make(beta, 100.0));
    check(build_conformal(ab.metric, beta, 0.0, ab.phi, 4.0 * kPi, corners));
  }
  o.detail << " bundles=" << bundles << " min gap=" << min_gap << " max energy excess=" << max_excess
           << " max invariance error=" << max_inv;
  o.require(min_gap >= -kGapTol, "gap");
  o.require(max_excess <= kEnergyTol, "energy");
  o.require(max_inv <= kInvarianceTol, "invariance");
}

void c10(Outcome& o) {
  std::size_t n = 0;
  auto run = [&](const WarpedMetric& m, double beta, const RadialField& phi, const std::string& name) {
    auto r = anti_harnack_audit(m, beta, phi);
    o.require(r.passed(), name);
    ++n;
  };
  for (const auto& [name, m] : closed_gallery()) {
    for (double beta : {0.5, 1.0}) {
      auto eig = first_eigenvalue(m, params(beta), Boundary::closed);
      if (eig.lambda1 < 0.0) continue;
      run(m, beta, eig.eigenfunction, name);
    }
  }
  for (double beta : {0.3, 0.4, 0.45}) {
    auto ab = make_power_neck(CounterexampleParams::make(beta, 100.0));
    run(ab.metric, beta, ab.phi, "power_neck");
  }
  o.detail << " supersolutions=" << n;
}

void c11(Outcome& o) {
  std::vector<std::pair<double, WarpedMetric>> fam;
  for (double e : {0.3, 0.2, 0.1, 0.05, 0.01}) fam.emplace_back(e, make_spheroid(e));
  auto rep = rigidity_experiment(fam, 1.0);
  bool delta_dec = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    o.require(!rep.rows[i].excluded, "excluded row");
    o.require(rep.rows[i].delta > 0.0, "delta not positive");
    if (i > 0) delta_dec = delta_dec && rep.rows[i].delta < rep.rows[i - 1].delta;
  }
  o.require(delta_dec, "delta not decreasing");
  o.require(rep.monotone, "D_inf not monotone");
  o.require(rep.small_at_end && rep.rows.back().d_inf <= kRigidityEnd, "D_inf at end");
  o.require(rep.energy_ok, "energy");
  o.detail << " delta(0.01)=" << rep.rows.back().delta << " D_inf(0.3)=" << rep.rows.front().d_inf
           << " D_inf(0.01)=" << rep.rows.back().d_inf;
}

void c12(Outcome& o) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto m = make_round_sphere();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    SurfacePoint p{U(rng) * kPi, U(rng) * 2.0 * kPi}, q{U(rng) * kPi, U(rng) * 2.0 * kPi};
    double c = std::cos(p.r) * std::cos(q.r) + std::sin(p.r) * std::sin(q.r) * std::cos(p.theta - q.theta);
    double exact = std::acos(std::clamp(c, -1.0, 1.0));
    worst = std::max(worst, std::abs(geodesic_distance(m, p, q) - exact) / std::max(exact, 1e-3));
  }
  o.require(worst <= kGreatCircleRel, "great circle");
  double worst_d = 0.0;
  for (const char* name : {"round_sphere", "spheroid", "capsule", "two_neck"}) {
    auto g = build_gallery(name, {}).metric;
    std::mt19937_64 r2(21);
    for (int i = 0; i < 3; ++i) {
      SurfacePoint p{U(r2) * g.length(), U(r2) * 2.0 * kPi}, q{U(r2) * g.length(), U(r2) * 2.0 * kPi};
      double c = geodesic_distance(g, p, q);
      double d = dijkstra_distance(g, p, q, 512, 1024, 5);
      double rel = std::abs(d - c) / std::max(c, 0.05 * g.length());
      worst_d = std::max(worst_d, rel);
    }
  }
  o.require(worst_d <= kDijkstraRel, "dijkstra");
  o.detail << " great-circle rel=" << worst << " dijkstra rel=" << worst_d;
}

void c13(Outcome& o) {
  struct Model { std::string name; WarpedMetric m; double R; };
  std::vector<Model> ms = {{"hemisphere", make_hemisphere(), kPi / 2}, {"cone", make_cone(0.5), 1.0}};
  for (const auto& [name, m, R] : ms) {
    double xi = dirichlet_ratio_ub(m, R);
    auto r = mt_envelope_audit(m, R, xi, 100, 1);
    o.detail << " " << name << " growth=" << r.lhs;
    o.require(r.passed() && r.lhs <= kEnvelopeGrowth, name);
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) expected.insert(std::stoi(tok));
    }
  }
  const std::vector<std::pair<const char*, void (*)(Outcome&)>> criteria = {
      {"spectral exactness on the round sphere", c1},
      {"beta = 1/4 borderline identity", c2},
      {"counterexample reconstruction", c3},
      {"scaling laws", c4},
      {"fundamental inequality suite", c5},
      {"isoperimetric and collar audits", c6},
      {"diameter bounds", c7},
      {"perturbation gradient", c8},
      {"conformal invariants", c9},
      {"anti-Harnack", c10},
      {"rigidity sweep", c11},
      {"distance engine", c12},
      {"Moser-Trudinger envelopes", c13}};
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    int id = static_cast<int>(i) + 1;
    if (!o.pass) failed.insert(id);
    std::printf("%s %2d %s:%s (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.str().c_str(), seconds_since(t0),
                (!o.pass && expected.count(id)) ? " (expected)" : "");
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
  if (failed != expected) {
    for (int id : expected)
      if (!failed.count(id)) std::printf("criterion %d was expected to fail but passed\n", id);
    return 1;
  }
  return 0;
}
