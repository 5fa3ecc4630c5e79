#include "sclab/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sclab/distances.hpp"
#include "sclab/kernels.hpp"
#include "sclab/spectral.hpp"

namespace sclab {

namespace {

// a·log φ + shift with derivatives.
RadialField log_field(const RadialField& phi, double a, double shift) {
  return RadialField::analytic_sided([phi, a, shift](double r, Side side) {
    Jet p = phi(r, side);
    if (!(p.v > 0.0)) throw InputError("conformal weight needs a positive function");
    double l1 = p.d1 / p.v;
    return Jet{a * std::log(p.v) + shift, a * l1, a * (p.d2 / p.v - l1 * l1)};
  });
}

bool is_pole(const WarpedMetric& m, double r) {
  return (r == 0.0 && m.profile().pole_at_start()) ||
         (r == m.length() && m.profile().pole_at_end());
}

// Integrates g(r~, r, side) over each piece of the image, mapping back to the
// base arclength with that piece's table.
double integrate_image(const ConformalImage& im,
                       const std::function<double(double, double, Side)>& g, std::size_t n) {
  const auto& pieces = im.metric.profile().pieces();
  double total = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    double a = pieces[k].a, b = pieces[k].b;
    const auto& tab = im.to_base[k];
    total += integrate_radial(im.metric, [&](double rt, Side side) {
      return g(rt, tab(rt).v, side);
    }, a, b, n);
  }
  return total;
}

}  // namespace

ConformalBundle build_conformal(const WarpedMetric& m, double beta, double lambda,
                                const RadialField& phi, double target_area,
                                const ConformalOptions& opt) {
  if (!(beta > 0.0)) throw InputError("beta must be positive");
  if (!(target_area > 0.0)) throw InputError("target area must be positive");
  double residual = supersolution_residual(m, beta, lambda, phi, opt.n, {}, true);
  if (residual > opt.residual_tol) {
    std::ostringstream os;
    os << "not a supersolution: relative residual " << residual << " > " << opt.residual_tol;
    throw InputError(os.str());
  }
  const double L = m.length();
  RadialField u0 = log_field(phi, 1.0 / beta, 0.0);
  double a0 = 2.0 * kPi * integrate_radial(m, [&](double r, Side side) {
    return std::exp(2.0 * u0(r, side).v) * m.warp(r, side).v;
  }, 0.0, L, opt.n);
  double shift = 0.5 * std::log(target_area / a0);
  RadialField u = log_field(phi, 1.0 / beta, shift);
  ConformalBundle b{.base = m,
                    .beta = beta,
                    .lambda = lambda,
                    .phi = phi,
                    .u = u,
                    .shift = shift,
                    .target_area = target_area,
                    .image = conformal_image(m, u, opt.knots, opt.allow_corners)};
  b.residual = residual;
  const auto& tm = b.image.metric;
  b.area_tilde = area(tm, 0.0, tm.length(), opt.n).value;

  b.energy_base = 2.0 * kPi * integrate_radial(m, [&](double r, Side side) {
    double d = b.u(r, side).d1;
    return d * d * m.warp(r, side).v;
  }, 0.0, L, opt.n);
  b.energy_tilde = 2.0 * kPi * integrate_image(b.image, [&](double rt, double r, Side side) {
    Jet w = b.u(r, side);
    double d = w.d1 * std::exp(-w.v);  // du/dr~
    return d * d * tm.warp(rt, side).v;
  }, opt.n);

  // Pointwise curvature checks on the base nodes, both sides at breakpoints.
  auto bps = m.breakpoints();
  auto near_break = [&](double r, double h) {
    for (double x : bps) if (std::abs(r - x) <= 2.0 * h) return true;
    return false;
  };
  b.min_gap = kInf;
  b.min_gap_lambda = kInf;
  auto nodes = m.grid(opt.n);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double r = nodes[i];
    if (is_pole(m, r)) continue;
    bool is_break = std::find(bps.begin(), bps.end(), r) != bps.end();
    for (Side side : {Side::left, Side::right}) {
      if ((r == 0.0 && side == Side::left) || (r == L && side == Side::right)) continue;
      if (!is_break && side == Side::left) continue;
      Jet f = m.warp(r, side);
      Jet w = b.u(r, side);
      double K = -f.d2 / f.v;
      double lap = w.d2 + f.d1 / f.v * w.d1;
      double e = std::exp(-2.0 * w.v);
      double kt = e * (K - lap);
      double grad2 = e * w.d1 * w.d1;
      b.min_gap = std::min(b.min_gap, kt - beta * grad2);
      b.min_gap_lambda = std::min(b.min_gap_lambda, kt - lambda / beta * e - beta * grad2);
    }
    double h = std::min(i > 0 ? r - nodes[i - 1] : kInf,
                        i + 1 < nodes.size() ? nodes[i + 1] - r : kInf);
    if (near_break(r, h)) continue;
    Jet f = m.warp(r);
    Jet w = b.u(r);
    double kt = std::exp(-2.0 * w.v) * (-f.d2 / f.v - w.d2 - f.d1 / f.v * w.d1);
    double rt = b.image.tilde_of(r, m);
    Jet ft = tm.warp(rt);
    // Relative to the curvature scale of the circle itself.
    double diff = std::abs(kt + ft.d2 / ft.v) / std::max(std::abs(kt), 1.0 / (ft.v * ft.v));
    b.curvature_mismatch = std::max(b.curvature_mismatch, diff);
  }
  for (double rt : tm.grid(opt.n)) {
    double s = std::abs(tm.warp(rt, rt >= tm.length() ? Side::left : Side::right).d1);
    if (s > b.max_slope) {
      b.max_slope = s;
      b.max_slope_at = rt;
    }
  }
  return b;
}

std::vector<AuditRecord> conformal_audits(const ConformalBundle& b) {
  std::vector<AuditRecord> out;
  out.push_back(check_le("conformal_curvature", "b|grad~ u|^2 - K~ <= 0", -b.min_gap, 0.0, 1e-6));
  out.push_back(check_le("conformal_energy", "int |grad~ u|^2 dA~ <= 4 pi / b", b.energy_tilde,
                         4.0 * kPi / b.beta, 1e-6));
  out.push_back(check_le("energy_invariance", "|int |grad u|^2 dA - int |grad~ u|^2 dA~| <= 0",
                         std::abs(b.energy_base - b.energy_tilde), 0.0, 1e-8));
  out.push_back(check_le("curvature_identity", "|e^{-2u}(K - lap u) + f~''/f~| <= 0",
                         b.curvature_mismatch, 0.0, 1e-4));
  if (b.lambda > 0.0) {
    // Curvature tolerance in units of the 4π-area sphere.
    out.push_back(check_le("conformal_curvature_lambda",
                           "(lam/b) e^{-2u} + b|grad~ u|^2 - K~ <= 0", -b.min_gap_lambda, 0.0,
                           1e-6 * std::max(1.0, 4.0 * kPi / b.target_area)));
    const double area_g = area(b.base, 0.0, b.base.length()).value;
    if (std::abs(b.target_area - 4.0 * kPi) < 1e-12 && std::abs(b.lambda - b.beta) < 1e-12) {
      out.push_back(check_le("rigidity_energy", "int |grad~ u|^2 dA~ <= (4 pi - |S|)/b",
                             b.energy_tilde, (4.0 * kPi - area_g) / b.beta, 1e-6));
    }
  }
  for (auto& r : out) {
    r.beta = b.beta;
    r.lambda = b.lambda;
    r.note = b.base.name();
  }
  return out;
}

EmbeddingProfile embed(const WarpedMetric& tm, std::size_t n, double tol) {
  if (tm.topology() != Topology::sphere) throw InputError("embedding needs a closed sphere");
  EmbeddingProfile e;
  e.s = tm.grid(n);
  const double L = tm.length();
  std::size_t N = e.s.size();
  e.rho.resize(N);
  e.drho.resize(N);
  e.dz.resize(N);
  for (std::size_t j = 0; j < N; ++j) {
    Jet f = tm.warp(e.s[j], e.s[j] >= L ? Side::left : Side::right);
    if (std::abs(f.d1) > 1.0 + tol) {
      std::ostringstream os;
      os << "embedding obstruction: |f'| = " << std::abs(f.d1) << " at r = " << e.s[j];
      throw InputError(os.str());
    }
    if (f.d2 * std::max(f.v, 0.0) > tol) {  // K~ f~² >= -tol
      std::ostringstream os;
      os << "profile is not convex: f'' = " << f.d2 << " at r = " << e.s[j];
      throw InputError(os.str());
    }
    e.rho[j] = std::max(0.0, f.v);
    e.drho[j] = std::clamp(f.d1, -1.0, 1.0);
    e.dz[j] = std::sqrt(1.0 - e.drho[j] * e.drho[j]);
  }
  auto dz = cell_integrals(Exec::serial, e.s, [&](double s) {
    double d = tm.warp(s).d1;
    return std::sqrt(std::max(0.0, 1.0 - d * d));
  });
  e.z = prefix_sum(dz);
  auto dmin = [&](double c) {
    double best = kInf;
    for (std::size_t j = 0; j < N; ++j) best = std::min(best, std::hypot(e.rho[j], e.z[j] - c));
    return best;
  };
  const double z0 = e.z.front(), z1 = e.z.back();
  const int M = 200;
  double bc = z0, bv = -1.0;
  for (int k = 0; k <= M; ++k) {
    double c = z0 + (z1 - z0) * k / M, v = dmin(c);
    if (v > bv) {
      bv = v;
      bc = c;
    }
  }
  double lo = std::max(z0, bc - (z1 - z0) / M), hi = std::min(z1, bc + (z1 - z0) / M);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = dmin(x1), f2 = dmin(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = dmin(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = dmin(x2);
    }
  }
  e.center = 0.5 * (lo + hi);
  if (dmin(e.center) < bv) e.center = bc;
  for (double& z : e.z) z -= e.center;
  e.d1 = dmin(0.0);
  e.d2 = 0.0;
  for (std::size_t j = 0; j < N; ++j) e.d2 = std::max(e.d2, std::hypot(e.rho[j], e.z[j]));
  return e;
}

EmbeddingProfile embed(const ConformalBundle& b, std::size_t n) { return embed(b.tilde(), n); }

Distortion projection_distortion(const EmbeddingProfile& e) {
  Distortion d;
  if (!(e.d1 > 0.0)) throw InputError("centre lies on the surface");
  for (std::size_t j = 0; j < e.s.size(); ++j) {
    double R = std::hypot(e.rho[j], e.z[j]);
    double cross = e.rho[j] * e.dz[j] - e.z[j] * e.drho[j];  // x · N
    if (!(cross > 0.0)) throw InputError("centre lies outside the convex body");
    d.lip = std::max({d.lip, 1.0 / R, cross / (R * R)});
    d.lip_inv = std::max({d.lip_inv, R, R * R / cross});
  }
  d.bound_lip = 1.0 / e.d1;
  d.bound_lip_inv = e.d2 * e.d2 / e.d1;
  return d;
}

double projected_angle(const EmbeddingProfile& e, double s) {
  s = std::clamp(s, e.s.front(), e.s.back());
  auto it = std::upper_bound(e.s.begin(), e.s.end(), s);
  std::size_t j = it == e.s.end() ? e.s.size() - 1 : static_cast<std::size_t>(it - e.s.begin());
  if (j == 0) j = 1;
  double t = (s - e.s[j - 1]) / (e.s[j] - e.s[j - 1]);
  double a0 = std::atan2(e.rho[j - 1], -e.z[j - 1]), a1 = std::atan2(e.rho[j], -e.z[j]);
  return a0 + t * (a1 - a0);
}

AuditRecord audit_tilde_diameter(const ConformalBundle& b, double base_ratio, double envelope) {
  if (envelope <= 0.0) envelope = 2.0 * (std::sqrt(kPi) / 2.0);
  const char* stmt = "diam(g~) <= envelope for |S|/diam^2 >= base ratio (area(g~) = 1)";
  if (std::abs(b.area_tilde - 1.0) > 1e-6) {
    return skipped("tilde_diameter", stmt, "bundle is not normalized to unit area");
  }
  double dt = diameter(b.tilde()).diam;
  double dg = diameter(b.base).diam;
  double ratio = area(b.base, 0.0, b.base.length()).value / (dg * dg);
  auto rec = check_le("tilde_diameter", stmt, dt, envelope, 1e-9);
  rec.advisory = ratio < base_ratio;
  if (rec.advisory) rec.note = "below base ratio; recorded only";
  rec.beta = b.beta;
  rec.lambda = b.lambda;
  rec.discretization = {{"ratio", ratio}, {"base_ratio", base_ratio}};
  return rec;
}

AuditRecord anti_harnack_audit(const WarpedMetric& m, double beta, const RadialField& phi,
                               std::size_t n) {
  const char* stmt = "(diam Ch_ub)^(-b/2) <= max phi / min phi";
  double res = supersolution_residual(m, beta, 0.0, phi, n, {}, true);
  if (res > 1e-6) {
    auto r = skipped("anti_harnack", stmt, "phi is not a supersolution");
    r.beta = beta;
    return r;
  }
  auto scan = isoperimetric_scan(m, n);
  double d = diameter(m).diam;
  double hi = 0.0, lo = kInf;
  for (double r : m.grid(n)) {
    for (Side side : {Side::left, Side::right}) {
      double v = phi(r, side).v;
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
  }
  double lhs = std::pow(d * scan.ch_ub, -beta / 2.0);
  auto rec = check_le("anti_harnack", stmt, lhs, hi / lo, 1e-9 * lhs);
  rec.beta = beta;
  rec.lambda = 0.0;
  rec.note = m.name();
  rec.discretization = {{"diam", d}, {"ch_ub", scan.ch_ub}, {"residual", res}};
  return rec;
}

DualPair duality_transform(const WarpedMetric& m, double beta, const RadialField& phi,
                           const ConformalOptions& opt) {
  double res = supersolution_residual(m, beta, 0.0, phi, opt.n, {}, true);
  if (res > opt.residual_tol) throw InputError("duality needs a supersolution");
  RadialField w = log_field(phi, 2.0 / beta, 0.0);
  DualPair out{m, {}, conformal_image(m, w, opt.knots, opt.allow_corners), 0.0};
  out.metric = out.image.metric;
  auto im = std::make_shared<ConformalImage>(out.image);
  out.phi = RadialField::analytic_sided([im, phi, beta](double rp, Side side) {
    const auto& prof = im->metric.profile();
    double rc = std::clamp(rp, 0.0, im->metric.length());
    std::size_t k = prof.piece_index(rc, side);
    double r = im->to_base[k](rc).v;
    Jet p = phi(r, side);
    double e = std::pow(p.v, -2.0 / beta);  // e^{-w}
    double wp = 2.0 / beta * p.d1 / p.v;
    double v = 1.0 / p.v;
    double d1 = -p.d1 / (p.v * p.v) * e;
    double d2 = e * e *
                (-p.d2 / (p.v * p.v) + 2.0 * p.d1 * p.d1 / (p.v * p.v * p.v) +
                 p.d1 / (p.v * p.v) * wp);
    return Jet{v, d1, d2};
  }, FieldSign::positive);
  out.residual = supersolution_residual(out.metric, beta, 0.0, out.phi, opt.n, {}, true);
  return out;
}

RigidityReport rigidity_experiment(const std::vector<std::pair<double, WarpedMetric>>& family,
                                   double beta, std::size_t pairs, unsigned seed) {
  if (!(beta > 0.25)) throw InputError("rigidity needs beta > 1/4");
  RigidityReport rep;
  rep.beta = beta;
  rep.rows.resize(family.size());
  for_each_index(Exec::parallel, family.size(), [&](std::size_t i) {
    RigidityRow& row = rep.rows[i];
    row.epsilon = family[i].first;
    try {
      const WarpedMetric& m0 = family[i].second;
      SpectralParams sp;
      sp.beta = beta;
      sp.n = 4096;
      double l1 = first_eigenvalue(m0, sp, Boundary::closed).lambda1;
      sp.n = 8192;
      double l2 = first_eigenvalue(m0, sp, Boundary::closed).lambda1;
      double lam = (4.0 * l2 - l1) / 3.0;
      if (!(lam > 0.0)) {
        row.excluded = true;
        row.reason = "lambda1 is not positive";
        return;
      }
      WarpedMetric m = m0.rescaled(std::sqrt(lam / beta));
      auto eig = first_eigenvalue(m, sp, Boundary::closed);
      row.lambda1 = lam;
      ConformalOptions opt;
      opt.residual_tol = 1e-5;
      auto b = build_conformal(m, beta, beta, eig.eigenfunction, 4.0 * kPi, opt);
      row.delta = 4.0 * kPi - area(m, 0.0, m.length()).value;
      row.energy = b.energy_tilde;
      row.u_bar = 2.0 * kPi * integrate_radial(m, [&](double r, Side side) {
        Jet w = b.u(r, side);
        return w.v * std::exp(2.0 * w.v) * m.warp(r).v;
      }, 0.0, m.length()) / (4.0 * kPi);
      auto e = embed(b);
      auto d = projection_distortion(e);
      row.d1 = e.d1;
      row.d2 = e.d2;
      row.lip = d.lip;
      row.lip_inv = d.lip_inv;
      // Sample pairs: poles, an equatorial antipode, then random points.
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> U(0.0, 1.0);
      const double L = m.length();
      std::vector<std::pair<SurfacePoint, SurfacePoint>> pts = {
          {{0.0, 0.0}, {L, 0.0}}, {{0.5 * L, 0.0}, {0.5 * L, kPi}}, {{0.0, 0.0}, {0.5 * L, 1.0}}};
      while (pts.size() < pairs) {
        pts.push_back({{U(rng) * L, U(rng) * 2.0 * kPi}, {U(rng) * L, U(rng) * 2.0 * kPi}});
      }
      for (const auto& [p, q] : pts) {
        double dg = geodesic_distance(m, p, q);
        double a = projected_angle(e, b.image.tilde_of(p.r, m));
        double c = projected_angle(e, b.image.tilde_of(q.r, m));
        double cosd = std::cos(a) * std::cos(c) + std::sin(a) * std::sin(c) * std::cos(q.theta - p.theta);
        double dr = std::acos(std::clamp(cosd, -1.0, 1.0));
        row.d_inf = std::max(row.d_inf, std::abs(dg - dr));
      }
    } catch (const std::exception& ex) {
      row.excluded = true;
      row.reason = ex.what();
    }
  });
  // Deviations as δ decreases, in input order.
  std::vector<const RigidityRow*> kept;
  for (const auto& r : rep.rows) if (!r.excluded) kept.push_back(&r);
  auto dev = [](const RigidityRow& r) {
    return std::vector<double>{std::abs(r.u_bar), std::abs(r.d2 - 1.0), std::abs(1.0 - r.d1),
                               std::max(r.lip, r.lip_inv) - 1.0, r.d_inf};
  };
  rep.monotone = !kept.empty();
  rep.energy_ok = !kept.empty();
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i]->energy > kept[i]->delta / beta + 1e-6) rep.energy_ok = false;
    if (i == 0) continue;
    if (!(kept[i]->delta < kept[i - 1]->delta)) rep.monotone = false;
    auto a = dev(*kept[i - 1]), b = dev(*kept[i]);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (b[k] > a[k] * 1.1 + 1e-12) rep.monotone = false;
    }
  }
  if (!kept.empty()) {
    auto last = dev(*kept.back());
    rep.small_at_end = std::all_of(last.begin(), last.end(), [](double v) { return v < 0.05; });
  }
  return rep;
}

std::string rigidity_csv(const RigidityReport& r) {
  std::ostringstream os;
  os.precision(10);
  os << "# rigidity v1\nepsilon,delta,u_bar,energy,d1,d2,lip,lip_inv,d_inf,excluded\n";
  for (const auto& x : r.rows) {
    os << x.epsilon << ',' << x.delta << ',' << x.u_bar << ',' << x.energy << ',' << x.d1 << ','
       << x.d2 << ',' << x.lip << ',' << x.lip_inv << ',' << x.d_inf << ',' << (x.excluded ? 1 : 0)
       << '\n';
  }
  return os.str();
}

}  // namespace sclab
