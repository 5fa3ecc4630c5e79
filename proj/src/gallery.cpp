#include "sclab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sclab/distances.hpp"
#include "sclab/spectral.hpp"

namespace sclab {

WarpedMetric make_round_sphere(double radius) {
  if (!(radius > 0.0)) throw InputError("radius must be positive");
  RadialProfile p({ProfilePiece::uniform(0.0, kPi, [](double r) {
                     double s = std::sin(r);
                     return Jet{s, std::cos(r), -s};
                   }, "sphere")},
                  Topology::sphere);
  p.name = "round_sphere";
  p.params["radius"] = radius;
  return WarpedMetric(std::move(p), radius);
}

WarpedMetric make_spheroid(double eps, std::size_t knots) {
  if (!(std::abs(eps) <= 0.5)) throw InputError("spheroid needs |epsilon| <= 0.5");
  ParametricPiece pp;
  pp.t0 = 0.0;
  pp.t1 = kPi;
  pp.warp_t = [eps](double t) {
    double s = std::sin(t), c = std::cos(t), w = 1.0 + eps * s * s;
    return Jet{s * w, c * (1.0 + 3.0 * eps * s * s),
               -s * (1.0 + 3.0 * eps * s * s) + 6.0 * eps * s * c * c};
  };
  pp.speed_t = [eps](double t) {
    double s = std::sin(t);
    return Jet{1.0 + eps * s * s, 2.0 * eps * s * std::cos(t), 0.0};
  };
  pp.map = GridMap::identity();
  pp.label = "spheroid";
  ProfileOptions opt;
  opt.tol_glue = 1e-8;
  RadialProfile prof({reparametrize(0.0, pp, knots)}, Topology::sphere, opt);
  prof.name = "spheroid";
  prof.params["epsilon"] = eps;
  WarpedMetric raw(std::move(prof));
  double a = area(raw, 0.0, raw.length()).value;
  return raw.rescaled(std::sqrt(4.0 * kPi / a));
}

WarpedMetric make_capsule(double ell) {
  if (!(ell >= 0.0)) throw InputError("cylinder length must be non-negative");
  std::vector<ProfilePiece> pieces;
  double h = 0.5 * kPi;
  pieces.push_back(ProfilePiece::uniform(0.0, h, [](double r) {
    return Jet{std::sin(r), std::cos(r), -std::sin(r)};
  }, "cap"));
  if (ell > 0.0) {
    pieces.push_back(ProfilePiece::uniform(h, h + ell, [](double) { return Jet{1.0, 0.0, 0.0}; },
                                           "cylinder"));
  }
  pieces.push_back(ProfilePiece::uniform(h + ell, kPi + ell, [ell](double r) {
    double s = std::sin(r - ell);
    return Jet{s, std::cos(r - ell), -s};
  }, "cap"));
  RadialProfile p(std::move(pieces), Topology::sphere);
  p.name = "capsule";
  p.params["length"] = ell;
  return WarpedMetric(std::move(p));
}

WarpedMetric make_two_neck(double a) {
  if (!(a > 0.0 && a < 1.0)) throw InputError("two_neck needs 0 < a < 1");
  RadialProfile p({ProfilePiece::uniform(0.0, kPi, [a](double r) {
                     double s = std::sin(r), c = std::cos(r);
                     double q = std::sin(2.0 * r), qc = std::cos(2.0 * r);
                     double g = 1.0 - a * q * q;
                     double g1 = -4.0 * a * q * qc;
                     double g2 = -8.0 * a * (qc * qc - q * q);
                     return Jet{s * g, c * g + s * g1, -s * g + 2.0 * c * g1 + s * g2};
                   }, "two_neck")},
                  Topology::sphere);
  p.name = "two_neck";
  p.params["a"] = a;
  return WarpedMetric(std::move(p));
}

WarpedMetric make_cone(double slope, double length) {
  if (!(slope > 0.0 && slope <= 1.0)) throw InputError("cone slope must be in (0, 1]");
  if (!(length > 0.0)) throw InputError("cone length must be positive");
  ProfileOptions opt;
  opt.tip_slope = slope;
  RadialProfile p({ProfilePiece::uniform(0.0, length, [slope](double r) {
                     return Jet{slope * r, slope, 0.0};
                   }, "cone")},
                  Topology::half_open, opt);
  p.name = "cone";
  p.params["slope"] = slope;
  p.params["length"] = length;
  return WarpedMetric(std::move(p));
}

WarpedMetric make_hemisphere() {
  RadialProfile p({ProfilePiece::uniform(0.0, 0.5 * kPi, [](double r) {
                     return Jet{std::sin(r), std::cos(r), -std::sin(r)};
                   }, "hemisphere")},
                  Topology::half_open);
  p.name = "hemisphere";
  return WarpedMetric(std::move(p));
}

BetaQuarterModel make_beta_quarter_model(double lambda, double R) {
  if (!(lambda > 0.0) || !(R > 0.0)) throw InputError("lambda and R must be positive");
  RadialProfile p({ProfilePiece::uniform(0.0, 2.0 * R, [lambda, R](double r) {
                     double x = r - R, f = std::exp(2.0 * lambda * x * x);
                     return Jet{f, 4.0 * lambda * x * f,
                                (4.0 * lambda + 16.0 * lambda * lambda * x * x) * f};
                   }, "gaussian_collar")},
                  Topology::collar);
  p.name = "beta_quarter";
  p.params["lambda"] = lambda;
  p.params["R"] = R;
  BetaQuarterModel out{WarpedMetric(std::move(p)), {}, lambda};
  out.phi = RadialField::analytic([lambda, R](double r) {
    double x = r - R, v = std::exp(-lambda * x * x);
    return Jet{v, -2.0 * lambda * x * v, (4.0 * lambda * lambda * x * x - 2.0 * lambda) * v};
  }, FieldSign::positive);
  return out;
}

// ---------------------------------------------------------------------------

CounterexampleParams CounterexampleParams::make(double beta, double R,
                                                std::optional<double> p_override) {
  CounterexampleParams c;
  c.beta = beta;
  c.R = R;
  c.p = p_override.value_or(2.0 - 2.0 * beta);
  c.r0 = std::pow(c.c2 * c.p * std::sqrt(1.0 + c.c3 * c.c3), 1.0 / (c.p + 1.0));
  c.A = std::pow(c.c3 * c.p / c.r0, 2);
  c.r1 = c.r0 - (kPi - std::atan(c.c3) - std::acos(c.c2)) / std::sqrt(c.A);
  c.validate();
  return c;
}

void CounterexampleParams::validate() const {
  std::ostringstream os;
  if (!(beta > 0.25 && beta <= 0.5)) os << "beta must lie in (1/4, 1/2]; ";
  if (!(p >= 1.0)) os << "p must be at least 1; ";
  if (!(r1 < r0)) os << "need r1 < r0; ";
  if (!(r0 > 2.0 / std::sqrt(beta * A))) os << "need r0 > 2/sqrt(beta A); ";
  if (!(R >= 10.0 * r0)) os << "need R >= 10 r0; ";
  if (!os.str().empty()) throw InputError("counterexample parameters: " + os.str());
}

double CounterexampleParams::k() const { return 0.5 * std::sqrt(beta * A); }

double CounterexampleParams::tanh_term() const { return std::abs(std::tanh(k() * (r1 - r0))); }

double CounterexampleParams::tanh_lower_bound() const {
  return std::tanh(0.25 * (0.5 * kPi - std::acos(c2)));
}

double CounterexampleParams::rhs_term() const { return 2.0 / (r0 * std::sqrt(beta * A)); }

double power_middle_combination(const CounterexampleParams& c, double r) {
  double p = c.p, q = c.q;
  double f = std::pow(r, -p), f1 = -p * f / r, f2 = p * (p + 1.0) * f / (r * r);
  double ph = std::pow(r, q), ph1 = q * ph / r, ph2 = q * (q - 1.0) * ph / (r * r);
  return f * ph2 + f1 * ph1 + c.beta * f2 * ph;
}

namespace {

struct PieceDef {
  double a, b;  // in the original r coordinate
  std::function<Jet(double)> f, phi;
  bool graded;
  std::string label;
};

// Even reflection of a jet about the mirror point.
Jet reflect(Jet j) { return {j.v, -j.d1, j.d2}; }

}  // namespace

PowerNeck make_power_neck(const CounterexampleParams& c) {
  c.validate();
  const double p = c.p, r0 = c.r0, r1 = c.r1, R = c.R, c1 = c.c1;
  const double sA = std::sqrt(c.A), k = c.k();
  const double r0p = std::pow(r0, -p);

  auto f_sine = [=](double r) {
    double t = sA * (r - r0), cs = std::cos(t), sn = std::sin(t);
    double v = r0p * cs - r0p / r0 * (p / sA) * sn;
    double d1 = -sA * r0p * sn - r0p / r0 * p * cs;
    return Jet{v, d1, -c.A * v};
  };
  auto phi_sine = [=](double r) {
    double t = k * (r - r0), ch = std::cosh(t), sh = std::sinh(t);
    double v = r0 * ch + sh / k;
    double d1 = r0 * k * sh + ch;
    return Jet{v, d1, k * k * v};
  };
  const double f1 = f_sine(r1).v;
  const double phi1 = phi_sine(r1).v;
  const double s0 = r1 - f1;
  const double end = R + c1 * R;

  std::vector<PieceDef> defs;
  defs.push_back({s0, r1, [=](double r) { return Jet{f1 + r - r1, 1.0, 0.0}; },
                  [=](double) { return Jet{phi1, 0.0, 0.0}; }, false, "disk"});
  defs.push_back({r1, r0, f_sine, phi_sine, false, "sine"});
  defs.push_back({r0, R,
                  [=](double r) {
                    double v = std::pow(r, -p);
                    return Jet{v, -p * v / r, p * (p + 1.0) * v / (r * r)};
                  },
                  [q = c.q](double r) {
                    double v = std::pow(r, q);
                    return Jet{v, q * v / r, q * (q - 1.0) * v / (r * r)};
                  },
                  true, "power"});
  defs.push_back({R, end,
                  [=](double r) {
                    double a = p / (2.0 * c1) * std::pow(R, -p - 2.0), d = r - end;
                    return Jet{a * d * d + (1.0 - 0.5 * c1 * p) * std::pow(R, -p), 2.0 * a * d,
                               2.0 * a};
                  },
                  [=](double r) {
                    double d = r - end, a = -1.0 / (2.0 * c1 * R);
                    return Jet{a * d * d + (1.0 + 0.5 * c1) * R, 2.0 * a * d, 2.0 * a};
                  },
                  false, "neck"});

  // x = r - s0 on [0, E], mirrored on [E, 2E].
  const double E = end - s0;
  std::vector<ProfilePiece> pieces;
  std::vector<std::function<Jet(double)>> phis;
  std::vector<std::pair<double, double>> spans;
  for (const auto& d : defs) {
    ProfilePiece pc;
    pc.a = d.a - s0;
    pc.b = d.b - s0;
    pc.warp = [fn = d.f, s0](double x) { return fn(x + s0); };
    if (d.graded) {
      pc.map.to_grid = [s0](double x) { return std::log(x + s0); };
      pc.map.from_grid = [s0](double s) {
        double r = std::exp(s);
        return std::pair<double, double>{r - s0, r};
      };
    } else {
      pc.map = GridMap::identity();
    }
    pc.label = d.label;
    pieces.push_back(pc);
    phis.push_back([fn = d.phi, s0](double x) { return fn(x + s0); });
  }
  for (std::size_t k2 = defs.size(); k2-- > 0;) {
    const ProfilePiece src = pieces[k2];
    ProfilePiece pc;
    pc.a = 2.0 * E - src.b;
    pc.b = 2.0 * E - src.a;
    pc.warp = [fn = src.warp, E](double x) { return reflect(fn(2.0 * E - x)); };
    auto inner = src.map;
    pc.map.to_grid = [inner, E](double x) { return -inner.to_grid(2.0 * E - x); };
    pc.map.from_grid = [inner, E](double s) {
      auto [r, d] = inner.from_grid(-s);
      return std::pair<double, double>{2.0 * E - r, d};
    };
    pc.label = src.label + "'";
    pieces.push_back(pc);
    phis.push_back([fn = phis[k2], E](double x) { return reflect(fn(2.0 * E - x)); });
  }
  // Snap junctions so the pieces are exactly contiguous.
  pieces.front().a = 0.0;
  for (std::size_t i = 1; i < pieces.size(); ++i) pieces[i].a = pieces[i - 1].b;

  std::vector<double> cuts;
  for (const auto& pc : pieces) cuts.push_back(pc.b);

  RadialProfile prof(pieces, Topology::sphere);
  prof.name = "power_neck";
  prof.params = {{"beta", c.beta}, {"p", p}, {"R", R}, {"r0", r0}, {"r1", r1}, {"A", c.A}};
  PowerNeck out{WarpedMetric(std::move(prof)), {}, c, 0.0, 0.0, {}, {}, 0.0, 0.0, 0.0, 0.0};
  out.shift = s0;
  out.mirror = E;
  auto phi_eval = [phis, cuts](double x, Side side) {
    std::size_t i = 0;
    while (i + 1 < cuts.size() && (x > cuts[i] || (side == Side::right && x == cuts[i]))) ++i;
    return phis[i](x);
  };
  out.phi = RadialField::analytic_sided(phi_eval, FieldSign::positive);


  for (std::size_t i = 0; i < defs.size(); ++i) {
    double r = i + 1 < defs.size() ? defs[i].b : end;
    double x = r - s0;
    Jet fl = pieces[i].warp(x), fr = pieces[i + 1].warp(x);
    out.junction_f.push_back(std::abs(fl.v - fr.v) + std::abs(fl.d1 - fr.d1));
    Jet pl = phis[i](x), pr = phis[i + 1](x);
    out.junction_phi.push_back(std::abs(pl.v - pr.v));
  }
  out.phi_slope_left = phis[0](r1 - s0).d1;
  out.phi_slope_right = phis[1](r1 - s0).d1;
  double th = std::atan(c.c3), amp = r0p * std::sqrt(1.0 + c.c3 * c.c3) / c.c3;
  for (int i = 0; i <= 200; ++i) {
    double r = r1 + (r0 - r1) * i / 200.0;
    double alt = amp * std::sin(-sA * (r - r0) + th);
    Jet fs = f_sine(r);
    out.sine_form_error = std::max(out.sine_form_error, std::abs(alt - fs.v));
    out.max_log_slope_sine = std::max(out.max_log_slope_sine, std::abs(fs.d1 / fs.v));
  }
  return out;
}

EndModel make_power_end(double beta, double delta, double R_t,
                             std::optional<double> p_override) {
  double p = p_override.value_or(2.0 - 2.0 * beta);
  if (!(delta > 0.0 && R_t > delta)) throw InputError("need 0 < delta < R_t");
  double q = 1.0;
  ProfilePiece pc;
  pc.a = 0.0;
  pc.b = R_t - delta;
  pc.warp = [p, R_t](double x) {
    double r = R_t - x, v = std::pow(r, -p);
    return Jet{v, p * v / r, p * (p + 1.0) * v / (r * r)};
  };
  pc.map.to_grid = [R_t](double x) { return -std::log(R_t - x); };
  pc.map.from_grid = [R_t](double s) {
    double r = std::exp(-s);
    return std::pair<double, double>{R_t - r, r};
  };
  pc.label = "power_end";
  RadialProfile prof({pc}, Topology::collar);
  prof.name = "power_end";
  prof.params = {{"beta", beta}, {"p", p}, {"delta", delta}, {"R_t", R_t}};
  EndModel out{WarpedMetric(std::move(prof)), {}};
  out.phi = RadialField::analytic([q, R_t](double x) {
    double r = R_t - x, v = std::pow(r, q);
    return Jet{v, -q * v / r, q * (q - 1.0) * v / (r * r)};
  }, FieldSign::positive);
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {"round_sphere", Topology::sphere, "f = c sin(r/c)", {{"radius", 1.0, "radius c"}}},
      {"spheroid", Topology::sphere,
       "conformal factor (1 + eps sin^2 t)^2 on the unit sphere, area 4 pi",
       {{"epsilon", 0.1, "|eps| <= 0.5"}}},
      {"capsule", Topology::sphere, "unit hemispheres joined by a cylinder",
       {{"length", 2.0, "cylinder length"}}},
      {"two_neck", Topology::sphere, "f = sin r (1 - a sin^2 2r)",
       {{"a", 0.8, "0 < a < 1; necks need a > 0.56"}}},
      {"beta_quarter", Topology::collar, "f = exp(2 lambda x^2), phi = exp(-lambda x^2)",
       {{"lambda", 1.0, "lambda > 0"}, {"R", 5.0, "half width"}}},
      {"power_neck", Topology::sphere,
       "doubled power-law surface with disk, sine and neck pieces",
       {{"beta", 0.4, "1/4 < beta <= 1/2"},
        {"R", 100.0, "truncation radius"},
        {"p", 0.0, "power override; 0 means 2 - 2 beta"}}},
      {"power_end", Topology::collar, "truncated f = r^-p end, phi = r",
       {{"beta", 0.4, "1/4 < beta <= 1/2"},
        {"delta", 0.05, "inner truncation"},
        {"R", 20.0, "outer truncation"}}},
      {"cone", Topology::half_open, "f = slope r", {{"slope", 0.5, "0 < slope <= 1"},
                                                    {"length", 1.0, "slant length"}}},
      {"hemisphere", Topology::half_open, "f = sin r on [0, pi/2]", {}},
  };
  return entries;
}

GalleryModel build_gallery(const std::string& name, const std::map<std::string, double>& given) {
  const auto& entries = gallery_entries();
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const GalleryEntry& e) { return e.name == name; });
  if (it == entries.end()) throw InputError("unknown gallery entry '" + name + "'");
  std::map<std::string, double> prm;
  for (const auto& p : it->params) prm[p.name] = p.default_value;
  for (const auto& [k, v] : given) {
    if (!prm.count(k)) throw InputError("gallery entry '" + name + "' has no parameter '" + k + "'");
    prm[k] = v;
  }
  auto get = [&](const char* k) { return prm.at(k); };
  if (name == "round_sphere") return {make_round_sphere(get("radius")), std::nullopt, name, prm};
  if (name == "spheroid") return {make_spheroid(get("epsilon")), std::nullopt, name, prm};
  if (name == "capsule") return {make_capsule(get("length")), std::nullopt, name, prm};
  if (name == "two_neck") return {make_two_neck(get("a")), std::nullopt, name, prm};
  if (name == "beta_quarter") {
    auto m = make_beta_quarter_model(get("lambda"), get("R"));
    return {m.metric, m.phi, name, prm};
  }
  if (name == "power_neck") {
    std::optional<double> p;
    if (get("p") > 0.0) p = get("p");
    auto b = make_power_neck(CounterexampleParams::make(get("beta"), get("R"), p));
    return {b.metric, b.phi, name, prm};
  }
  if (name == "power_end") {
    auto e = make_power_end(get("beta"), get("delta"), get("R"));
    return {e.metric, e.phi, name, prm};
  }
  if (name == "cone") return {make_cone(get("slope"), get("length")), std::nullopt, name, prm};
  return {make_hemisphere(), std::nullopt, name, prm};
}

// ---------------------------------------------------------------------------

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("slope fit needs 2+ points");
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingReport scaling_sweep(double beta, const std::vector<double>& R_list, std::size_t n,
                            std::optional<double> p_override) {
  if (R_list.size() < 4) throw InputError("scaling sweep needs at least 4 radii");
  ScalingReport rep;
  rep.beta = beta;
  std::vector<ScalingRow> rows(R_list.size());
  for_each_index(Exec::parallel, R_list.size(), [&](std::size_t i) {
    ScalingRow& row = rows[i];
    row.R = R_list[i];
    try {
      auto b = make_power_neck(CounterexampleParams::make(beta, row.R, p_override));
      row.residual = supersolution_residual(b.metric, beta, 0.0, b.phi, n, std::nullopt, true);
      if (row.residual > 1e-10) {
        row.excluded = true;
        row.reason = "bundled phi is not a supersolution";
        return;
      }
      row.lambda1 = first_eigenvalue(b.metric, {beta, std::max<std::size_t>(n / 4, 256), 1e-9},
                                     Boundary::closed).lambda1;
      auto scan = isoperimetric_scan(b.metric, n, Exec::serial);
      row.diam = diameter(b.metric, 24, Exec::serial).diam;
      row.area = scan.total_area;
      row.ch_ub = scan.ch_ub;
      row.in_ub = scan.in_ub;
      row.ch_diam = scan.ch_ub * row.diam;
      row.area_over_diam2 = row.area / (row.diam * row.diam);
    } catch (const std::exception& e) {
      row.excluded = true;
      row.reason = e.what();
    }
  });
  rep.rows = rows;
  rep.p = p_override.value_or(2.0 - 2.0 * beta);
  std::vector<double> lr, lc, li, la;
  for (const auto& r : rep.rows) {
    if (r.excluded) continue;
    lr.push_back(std::log(r.R));
    lc.push_back(std::log(r.ch_diam));
    li.push_back(std::log(r.in_ub));
    la.push_back(std::log(r.area_over_diam2));
  }
  if (lr.size() >= 2) {
    rep.slope_ch_diam = fit_slope(lr, lc);
    rep.slope_in = fit_slope(lr, li);
    rep.slope_area_diam2 = fit_slope(lr, la);
    rep.exponent_ratio = rep.slope_in / rep.slope_area_diam2;
  }
  return rep;
}

}  // namespace sclab
