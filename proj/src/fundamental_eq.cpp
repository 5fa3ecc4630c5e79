#include "sclab/fundamental_eq.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sclab/spectral.hpp"

namespace sclab {

double CurveData::level(const WarpedMetric& m, double s) const {
  return level_length(m, std::clamp(r0 + s, 0.0, m.length()));
}

double CurveData::big_g(const WarpedMetric& m, double s) const {
  double r = std::clamp(r0 + s, 0.0, m.length());
  return -2.0 * kPi * (m.warp(r, s < 0 ? Side::left : Side::right).d1 - m.warp(r0).d1);
}

double CurveData::big_gamma(const WarpedMetric& m, double s) const {
  // χ(s) = 0: the bands {0 <= d < s} are annuli until they reach a pole.
  return -big_g(m, s) + total_curvature;
}

CurveData coordinate_curve(const WarpedMetric& m, double r0) {
  if (m.topology() != Topology::sphere) throw InputError("base curves need a closed sphere");
  if (!(r0 > 0.0 && r0 < m.length())) throw InputError("base circle must lie strictly inside");
  CurveData c;
  c.r0 = r0;
  c.rho_minus = r0;
  c.rho_plus = m.length() - r0;
  Jet f = m.warp(r0);
  c.length = 2.0 * kPi * f.v;
  c.total_curvature = 2.0 * kPi * f.d1;
  return c;
}

std::string to_string(TestFamily f) {
  switch (f) {
    case TestFamily::linear: return "linear";
    case TestFamily::polynomial: return "polynomial";
    case TestFamily::volume_cutoff: return "volume_cutoff";
    case TestFamily::constant: return "constant";
    case TestFamily::power_mix: return "power_mix";
  }
  return "?";
}

Jet TestFunction::operator()(double s, Side side) const {
  if (s < 0.0 || (s == 0.0 && side == Side::left)) return left(s);
  return right(s);
}

namespace {

// ((ρ + σρ ∓ s)/((1+σ)ρ))^p and its derivatives; dir = +1 on the left side.
Jet power_side(double s, double rho, double sigma, double p, double dir) {
  double base = (1.0 + sigma) * rho;
  double u = (base + dir * s) / base;
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  double v = std::pow(u, p);
  double d1 = dir * p * v / (u * base);
  double d2 = p * (p - 1.0) * v / (u * u * base * base);
  return {v, d1, d2};
}

}  // namespace

TestFunction TestFunction::linear(double rm, double rp) {
  return polynomial(rm, rp, 0.0, 1.0);
}

TestFunction TestFunction::polynomial(double rm, double rp, double sigma, double p) {
  if (!(rm > 0.0 && rp > 0.0)) throw InputError("test function radii must be positive");
  if (!(sigma >= 0.0 && p >= 1.0)) throw InputError("need sigma >= 0 and p >= 1");
  TestFunction t;
  t.family = (sigma == 0.0 && p == 1.0) ? TestFamily::linear : TestFamily::polynomial;
  t.sigma = sigma;
  t.p = p;
  t.rho_minus = rm;
  t.rho_plus = rp;
  t.left = [=](double s) { return power_side(s, rm, sigma, p, 1.0); };
  t.right = [=](double s) { return power_side(s, rp, sigma, p, -1.0); };
  t.slope_left = p / ((1.0 + sigma) * rm);
  t.slope_right = -p / ((1.0 + sigma) * rp);
  return t;
}

TestFunction TestFunction::volume_cutoff(double rm, double rp, double radius, double p) {
  if (!(rm > 0.0 && rp > 0.0 && radius > 0.0)) throw InputError("radii must be positive");
  if (!(p >= 1.0)) throw InputError("cutoff exponent must be >= 1");
  TestFunction t;
  t.family = TestFamily::volume_cutoff;
  t.p = p;
  t.support = radius;
  t.rho_minus = rm;
  t.rho_plus = rp;
  t.left = [](double) { return Jet{1.0, 0.0, 0.0}; };
  // (1 - s/2r)^p is power_side with base 2r and σ = 0.
  t.right = [=](double s) { return power_side(s, 2.0 * radius, 0.0, p, -1.0); };
  t.slope_left = 0.0;
  t.slope_right = -p / (2.0 * radius);
  if (2.0 * radius < rp) t.breaks.push_back(2.0 * radius);
  return t;
}

TestFunction TestFunction::constant(double rm, double rp, double value) {
  if (!(value >= 0.0)) throw InputError("constant test function must be nonnegative");
  TestFunction t;
  t.family = TestFamily::constant;
  t.rho_minus = rm;
  t.rho_plus = rp;
  t.left = [value](double) { return Jet{value, 0.0, 0.0}; };
  t.right = t.left;
  return t;
}

TestFunction TestFunction::power_mix(double rm, double rp, double a, double p_minus,
                                     double p_plus) {
  if (!(a >= 0.0 && a <= 1.0)) throw InputError("mix weight must lie in [0, 1]");
  if (!(p_minus >= 1.0 && p_plus >= 1.0)) throw InputError("exponents must be >= 1");
  TestFunction t;
  t.family = TestFamily::power_mix;
  t.p = std::max(p_minus, p_plus);
  t.rho_minus = rm;
  t.rho_plus = rp;
  auto mix = [a](Jet j) { return Jet{a + (1.0 - a) * j.v, (1.0 - a) * j.d1, (1.0 - a) * j.d2}; };
  t.left = [=](double s) { return mix(power_side(s, rm, 0.0, p_minus, 1.0)); };
  t.right = [=](double s) { return mix(power_side(s, rp, 0.0, p_plus, -1.0)); };
  t.slope_left = (1.0 - a) * p_minus / rm;
  t.slope_right = -(1.0 - a) * p_plus / rp;
  return t;
}

void check_admissible(const TestFunction& tf, std::size_t samples) {
  const double tol = 1e-12;
  for (std::size_t i = 0; i <= samples; ++i) {
    double u = static_cast<double>(i) / samples;
    double sl = -tf.rho_minus * (1.0 - u), sr = tf.rho_plus * u;
    Jet l = tf(sl, Side::left), r = tf(sr, Side::right);
    if (!(l.v >= -tol && r.v >= -tol)) throw InputError("test function is negative");
    if (l.d1 < -tol) {
      std::ostringstream os;
      os << "test function decreases at s = " << sl << " < 0 (phi' = " << l.d1 << ")";
      throw InputError(os.str());
    }
    if (r.d1 > tol) {
      std::ostringstream os;
      os << "test function increases at s = " << sr << " > 0 (phi' = " << r.d1 << ")";
      throw InputError(os.str());
    }
  }
  Jet a = tf(0.0, Side::left), b = tf(0.0, Side::right);
  if (std::abs(a.v - b.v) > 1e-12 * std::max(1.0, std::abs(a.v)))
    throw InputError("test function is discontinuous at s = 0");
}

TestFunction random_test_function(std::mt19937_64& rng, double rm, double rp) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int kind = static_cast<int>(U(rng) * 4.0);
  switch (kind) {
    case 0: return TestFunction::polynomial(rm, rp, 0.05 + 2.0 * U(rng), 1.0 + 3.0 * U(rng));
    case 1: return TestFunction::power_mix(rm, rp, U(rng), 1.0 + 3.0 * U(rng), 1.0 + 3.0 * U(rng));
    case 2: {
      double radius = (0.1 + 0.9 * U(rng)) * rp;
      return TestFunction::volume_cutoff(rm, rp, radius, 2.0 + 2.0 * U(rng));
    }
    default: return TestFunction::linear(rm, rp);
  }
}

FundamentalTerms fundamental_terms(const WarpedMetric& m, const CurveData& c,
                                   const TestFunction& tf, std::size_t n) {
  const double L = m.length();
  std::vector<double> cuts = {0.0, c.r0};
  for (double b : tf.breaks) cuts.push_back(c.r0 + b);
  cuts.push_back(L);
  std::sort(cuts.begin(), cuts.end());
  FundamentalTerms t;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double a = cuts[k], b = cuts[k + 1];
    if (!(b > a)) continue;
    // Endpoints see the one-sided values of this segment.
    auto phi = [&](double r) {
      Side side = r >= b ? Side::left : Side::right;
      return tf(r - c.r0, side);
    };
    auto lev = [&](double r) { return level_length(m, r); };
    t.dirichlet += integrate_radial(m, [&](double r) { Jet j = phi(r); return lev(r) * j.d1 * j.d1; }, a, b, n);
    t.hessian += integrate_radial(m, [&](double r) { Jet j = phi(r); return lev(r) * j.v * j.d2; }, a, b, n);
    t.mass += integrate_radial(m, [&](double r) { Jet j = phi(r); return lev(r) * j.v * j.v; }, a, b, n);
  }
  double fp = tf(c.rho_plus, Side::left).v, fm = tf(-c.rho_minus, Side::right).v;
  t.boundary = c.chi_plus * fp * fp + c.chi_minus * fm * fm;
  t.kink = c.length * tf(0.0).v * (tf.slope_left - tf.slope_right);
  return t;
}

AuditRecord evaluate_fundamental(const WarpedMetric& m, double beta, double lambda,
                                 const CurveData& c, const TestFunction& tf, std::size_t n) {
  check_admissible(tf);
  auto t = fundamental_terms(m, c, tf, n);
  double lhs = (2.0 * beta - 1.0) * t.dirichlet + 2.0 * beta * t.hessian + lambda * t.mass;
  double rhs = 2.0 * kPi * beta * t.boundary + 2.0 * beta * t.kink;
  double tol = 1e-6 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
  auto rec = check_le("fundamental",
                      "(2b-1)int L phi'^2 + 2b int L phi phi'' + lam int L phi^2 <= "
                      "2 pi b [chi+ phi(rho+)^2 + chi- phi(-rho-)^2] + 2b|gamma| phi(0)[phi'(0-) - phi'(0+)]",
                      lhs, rhs, tol);
  rec.beta = beta;
  rec.lambda = lambda;
  rec.note = to_string(tf.family);
  rec.discretization = {{"n", static_cast<double>(n)}, {"r0", c.r0}, {"sigma", tf.sigma},
                        {"p", tf.p}};
  return rec;
}

Geometry measure_geometry(const WarpedMetric& m, double beta, std::size_t n) {
  Geometry g;
  g.scan = isoperimetric_scan(m, n);
  g.area = g.scan.total_area;
  g.diam = diameter(m).diam;
  SpectralParams sp;
  sp.beta = beta;
  sp.n = n;
  g.lambda1 = certified_lambda1(m, sp, Boundary::closed);
  return g;
}

AuditRecord audit_isoperimetric_1(const WarpedMetric& m, double beta) {
  if (!(beta > 0.5)) throw InputError("isoperimetric bound (1) needs beta > 1/2");
  return audit_isoperimetric_1(m, beta, measure_geometry(m, beta));
}

AuditRecord audit_isoperimetric_1(const WarpedMetric& m, double beta, const Geometry& g) {
  if (!(beta > 0.5)) throw InputError("isoperimetric bound (1) needs beta > 1/2");
  const char* stmt = "(2b-1)^2/(16 b^2) |S|/diam^2 <= IN_ub";
  if (g.lambda1 < 0.0) {
    auto r = skipped("isoperimetric_1", stmt, "lambda1 not certified nonnegative");
    r.beta = beta;
    r.lambda = g.lambda1;
    return r;
  }
  double c = (2.0 * beta - 1.0) * (2.0 * beta - 1.0) / (16.0 * beta * beta);
  double lhs = c * g.area / (g.diam * g.diam);
  auto rec = check_le("isoperimetric_1", stmt, lhs, g.scan.in_ub, 1e-10 * g.scan.in_ub);
  rec.beta = beta;
  rec.lambda = g.lambda1;
  rec.note = m.name();
  rec.discretization = {{"scan_n", static_cast<double>(g.scan.rows.size())}};
  return rec;
}

AuditRecord audit_collar(const WarpedMetric& m, double beta, double r0, double rho,
                         std::size_t n) {
  if (!(beta > 0.5)) throw InputError("collar bound needs beta > 1/2");
  if (!(rho > 0.0 && r0 - rho > 0.0 && r0 + rho < m.length()))
    throw InputError("collar must lie strictly inside the surface");
  const char* stmt = "|N_rho| / (rho |gamma|) <= 4b/(2b-1)";
  SpectralParams sp;
  sp.beta = beta;
  sp.n = n;
  double lam = certified_lambda1(m, sp, Boundary::dirichlet,
                                 std::pair<double, double>{r0 - rho, r0 + rho});
  if (lam < 0.0) {
    auto r = skipped("collar", stmt, "Dirichlet lambda1 on the collar is negative");
    r.beta = beta;
    r.lambda = lam;
    return r;
  }
  double band = area(m, r0 - rho, r0 + rho, n).value;
  double gamma = level_length(m, r0);
  double lhs = band / (rho * gamma);
  double rhs = 4.0 * beta / (2.0 * beta - 1.0);
  auto rec = check_le("collar", stmt, lhs, rhs, 1e-9 * rhs);
  rec.beta = beta;
  rec.lambda = lam;
  rec.note = m.name();
  rec.discretization = {{"r0", r0}, {"rho", rho}, {"n", static_cast<double>(n)}};
  return rec;
}

Iso2Constants iso2_constants(double beta, double epsilon) {
  if (!(beta > 0.25 && beta <= 0.5)) throw InputError("isoperimetric bound (2) needs 1/4 < beta <= 1/2");
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  Iso2Constants k;
  k.p = (2.0 * beta + epsilon) / (4.0 * beta - 1.0);
  k.c1 = (4.0 * beta - 1.0) * k.p * k.p - 2.0 * beta * k.p;
  k.exponent = 2.0 * k.p - 1.0;
  double ca = std::sqrt(8.0 * kPi * beta * k.c1) / (8.0 * k.p * beta);
  k.c_chain = ca * ca * std::pow(4.0, 1.0 - 2.0 * k.p) *
              std::pow(std::min(1.0, k.c1 / (8.0 * kPi * beta)), k.exponent);
  return k;
}

double iso2_sigma(double beta, double epsilon, double z) {
  auto k = iso2_constants(beta, epsilon);
  return std::sqrt(k.c1 * z / (8.0 * kPi * beta));
}

std::vector<AuditRecord> audit_isoperimetric_2(const WarpedMetric& m, double beta,
                                               double epsilon) {
  auto k = iso2_constants(beta, epsilon);
  (void)k;
  return audit_isoperimetric_2(m, beta, epsilon, measure_geometry(m, beta));
}

std::vector<AuditRecord> audit_isoperimetric_2(const WarpedMetric& m, double beta,
                                               double epsilon, const Geometry& g) {
  auto k = iso2_constants(beta, epsilon);
  const char* chain = "C(b,e) min(1, Z^(2p-1)) <= |gamma|^2/|Omega-| on coordinate circles";
  const char* head = "C(b,e) min(1, (|S|/diam^2)^(2p-1)) <= IN_ub";
  if (g.lambda1 < 0.0) {
    auto a = skipped("isoperimetric_2_chain", chain, "lambda1 not certified nonnegative");
    auto b = skipped("isoperimetric_2", head, "lambda1 not certified nonnegative");
    return {a, b};
  }
  const double L = m.length();
  double worst = -1.0, worst_r = 0.0;
  for (const auto& row : g.scan.rows) {
    if (!(row.r > 0.0 && row.r < L) || !(row.area_in > 0.0 && row.area_out > 0.0)) continue;
    double rm = row.r, rp = L - row.r;
    double z = row.area_in / (rm * rm) + row.area_out / (rp * rp);
    double small_side = rm <= rp ? row.area_in : row.area_out;
    double lhs = k.c_chain * std::min(1.0, std::pow(z, k.exponent));
    double ratio = lhs / (row.perimeter * row.perimeter / small_side);
    if (ratio > worst) {
      worst = ratio;
      worst_r = row.r;
    }
  }
  auto a = check_le("isoperimetric_2_chain", chain, worst, 1.0, 1e-10);
  a.discretization = {{"r_worst", worst_r}, {"p", k.p}, {"C", k.c_chain}};
  double ratio = g.area / (g.diam * g.diam);
  double lhs = k.c_chain * std::min(1.0, std::pow(ratio, k.exponent));
  auto b = check_le("isoperimetric_2", head, lhs, g.scan.in_ub, 1e-10 * g.scan.in_ub);
  b.discretization = {{"p", k.p}, {"C", k.c_chain}, {"exponent", k.exponent}};
  for (auto* r : {&a, &b}) {
    r->beta = beta;
    r->lambda = g.lambda1;
    r->epsilon = epsilon;
    r->note = m.name();
  }
  return {a, b};
}

VolumeConstants volume_constants(double beta, double epsilon) {
  if (!(beta > 0.25)) throw InputError("volume comparison needs beta > 1/4");
  VolumeConstants v;
  v.p = std::max(2.0, (2.0 * beta + epsilon) / (4.0 * beta - 1.0));
  v.c1 = (4.0 * beta - 1.0) * v.p * v.p - 2.0 * beta * v.p;
  v.upper = std::pow(4.0, v.p) * 4.0 * kPi * beta / v.c1;
  return v;
}

double isoperimetric_lower_constant(double beta, double ratio, double epsilon) {
  if (beta > 0.5) return (2.0 * beta - 1.0) * (2.0 * beta - 1.0) / (16.0 * beta * beta) * ratio;
  auto k = iso2_constants(beta, epsilon);
  return k.c_chain * std::min(1.0, std::pow(ratio, k.exponent));
}

std::vector<AuditRecord> audit_volume_comparison(const WarpedMetric& m, double beta,
                                                 const std::vector<double>& radii,
                                                 double epsilon) {
  if (radii.empty()) throw InputError("need at least one radius");
  auto vc = volume_constants(beta, epsilon);
  const double L = m.length();
  double worst_up = 0.0, worst_up_r = 0.0;
  std::vector<double> ratio(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double r = radii[i];
    if (!(r > 0.0)) throw InputError("radii must be positive");
    ratio[i] = area(m, 0.0, std::min(r, L)).value / (r * r);
    if (ratio[i] > worst_up) {
      worst_up = ratio[i];
      worst_up_r = r;
    }
  }
  auto up = check_le("volume_upper", "|B(r)|/r^2 <= C'(b)", worst_up, vc.upper, 1e-9 * vc.upper);
  up.discretization = {{"r_worst", worst_up_r}, {"p", vc.p}};
  up.beta = beta;
  up.epsilon = epsilon;
  up.note = m.name();
  AuditRecord lo;
  if (m.topology() != Topology::sphere) {
    lo = skipped("volume_lower", "C(b, |S|/diam^2) <= |B(r)|/r^2", "needs a closed surface");
  } else {
    auto g = measure_geometry(m, beta);
    double rt = g.area / (g.diam * g.diam);
    double c = std::min(isoperimetric_lower_constant(beta, rt, epsilon) / 4.0, 0.5 * rt);
    double worst = kInf, worst_r = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (radii[i] > g.diam) continue;
      if (ratio[i] < worst) {
        worst = ratio[i];
        worst_r = radii[i];
      }
    }
    if (!std::isfinite(worst)) {
      lo = skipped("volume_lower", "C(b, |S|/diam^2) <= |B(r)|/r^2", "no radius below diam");
    } else {
      lo = check_le("volume_lower", "C(b, |S|/diam^2) <= |B(r)|/r^2", c, worst, 1e-9 * c);
      lo.discretization = {{"r_worst", worst_r}};
    }
    lo.lambda = g.lambda1;
  }
  lo.beta = beta;
  lo.epsilon = epsilon;
  lo.note = m.name();
  return {up, lo};
}

AuditRecord audit_bonnet_myers(const WarpedMetric& m, double beta, std::optional<double> lambda1) {
  if (!(beta > 0.25)) throw InputError("diameter bound needs beta > 1/4");
  const char* stmt = "diam sqrt(lam1) <= 2 pi b / sqrt(4b - 1)";
  double lam = 0.0;
  if (lambda1) {
    lam = *lambda1;
  } else {
    SpectralParams sp;
    sp.beta = beta;
    lam = certified_lambda1(m, sp, Boundary::closed);
  }
  if (!(lam > 0.0)) {
    auto r = skipped("bonnet_myers", stmt, "lambda1 is not positive");
    r.beta = beta;
    r.lambda = lam;
    return r;
  }
  double d = diameter(m).diam;
  double rhs = 2.0 * kPi * beta / std::sqrt(4.0 * beta - 1.0);
  auto rec = check_le("bonnet_myers", stmt, d * std::sqrt(lam), rhs, 1e-9 * rhs);
  rec.beta = beta;
  rec.lambda = lam;
  rec.note = m.name();
  rec.discretization = {{"diam", d}};
  return rec;
}

}  // namespace sclab
