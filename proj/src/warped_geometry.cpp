#include "sclab/warped_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sclab {

WarpedMetric::WarpedMetric(RadialProfile profile, double scale)
    : WarpedMetric(std::make_shared<const RadialProfile>(std::move(profile)), scale) {}

WarpedMetric::WarpedMetric(std::shared_ptr<const RadialProfile> profile, double scale)
    : profile_(std::move(profile)), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw InputError("scale must be positive");
}

Jet WarpedMetric::warp(double r, Side side) const {
  Jet j = profile_->warp(r / scale_, side);
  return {scale_ * j.v, j.d1, j.d2 / scale_};
}

std::vector<double> WarpedMetric::grid(std::size_t n) const {
  return grid(n, 0.0, length());
}

std::vector<double> WarpedMetric::grid(std::size_t n, double lo, double hi) const {
  auto g = profile_->grid(n, lo / scale_, hi / scale_);
  for (double& r : g) r *= scale_;
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> WarpedMetric::breakpoints() const {
  auto b = profile_->breakpoints();
  for (double& r : b) r *= scale_;
  return b;
}

RadialField RadialField::analytic(std::function<Jet(double)> f, FieldSign sign) {
  RadialField out;
  out.eval_ = [f = std::move(f)](double r, Side) { return f(r); };
  out.sign_ = sign;
  return out;
}

RadialField RadialField::analytic_sided(std::function<Jet(double, Side)> f, FieldSign sign) {
  RadialField out;
  out.eval_ = std::move(f);
  out.sign_ = sign;
  return out;
}

namespace {

// Derivative at x[0] of the polynomial through (x[k], y[k]), k < 5.
double one_sided_slope(const double* x, const double* y) {
  double d = 0.0;
  for (int j = 0; j < 5; ++j) {
    // L_j'(x0)
    double w = 0.0;
    if (j == 0) {
      for (int k = 1; k < 5; ++k) w += 1.0 / (x[0] - x[k]);
    } else {
      w = 1.0 / (x[j] - x[0]);
      for (int k = 1; k < 5; ++k)
        if (k != j) w *= (x[0] - x[k]) / (x[j] - x[k]);
    }
    d += w * y[j];
  }
  return d;
}

}  // namespace

RadialField RadialField::sampled(std::vector<double> r, std::vector<double> v,
                                 std::optional<double> slope_lo,
                                 std::optional<double> slope_hi, FieldSign sign,
                                 const std::vector<double>& breaks) {
  RadialField out;
  std::vector<std::size_t> cuts{0};
  for (double b : breaks) {
    auto it = std::find(r.begin(), r.end(), b);
    if (it == r.end() || it == r.begin() || it == r.end() - 1) continue;
    auto k = static_cast<std::size_t>(it - r.begin());
    if (k - cuts.back() >= 4 && r.size() - 1 - k >= 4) cuts.push_back(k);
  }
  cuts.push_back(r.size() - 1);
  if (cuts.size() == 2) {
    CubicSpline s(r, v, slope_lo, slope_hi);
    out.eval_ = [s](double x, Side) { return s(x); };
  } else {
    std::vector<double> slope(cuts.size());
    for (std::size_t c = 1; c + 1 < cuts.size(); ++c) {
      std::size_t k = cuts[c];
      double xr[5], yr[5], xl[5], yl[5];
      for (int j = 0; j < 5; ++j) {
        xr[j] = r[k + j], yr[j] = v[k + j];
        xl[j] = r[k - j], yl[j] = v[k - j];
      }
      slope[c] = 0.5 * (one_sided_slope(xr, yr) + one_sided_slope(xl, yl));
    }
    std::vector<CubicSpline> parts;
    std::vector<double> ends;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      auto a = static_cast<std::ptrdiff_t>(cuts[c]), b = static_cast<std::ptrdiff_t>(cuts[c + 1]) + 1;
      std::optional<double> lo = c == 0 ? slope_lo : std::optional<double>(slope[c]);
      std::optional<double> hi = c + 2 == cuts.size() ? slope_hi : std::optional<double>(slope[c + 1]);
      parts.emplace_back(std::vector<double>(r.begin() + a, r.begin() + b),
                         std::vector<double>(v.begin() + a, v.begin() + b), lo, hi);
      ends.push_back(r[cuts[c + 1]]);
    }
    out.eval_ = [parts, ends](double x, Side side) {
      std::size_t k = 0;
      while (k + 1 < parts.size() && (x > ends[k] || (x == ends[k] && side == Side::right))) ++k;
      return parts[k](x);
    };
  }
  out.sign_ = sign;
  out.nodes_ = std::move(r);
  out.samples_ = std::move(v);
  return out;
}

namespace {

double curvature_interior(const WarpedMetric& m, double r, Side side) {
  Jet j = m.warp(r, side);
  if (!(j.v > 0.0)) {
    std::ostringstream os;
    os << "degenerate profile: f(" << r << ") = " << j.v;
    throw NumericalError(os.str());
  }
  return -j.d2 / j.v;
}

void check_range(const WarpedMetric& m, double r) {
  double L = m.length();
  if (!(r >= -1e-12 * L && r <= L * (1.0 + 1e-12))) {
    std::ostringstream os;
    os << "radius " << r << " outside [0, " << L << "]";
    throw InputError(os.str());
  }
}

}  // namespace

double gauss_curvature(const WarpedMetric& m, double r) {
  check_range(m, r);
  const double L = m.length();
  bool at_start = r <= 0.0, at_end = r >= L;
  if ((at_start && m.profile().pole_at_start()) || (at_end && m.profile().pole_at_end())) {
    // Quadratic extrapolation through the first three interior nodes.
    const auto& pc = m.profile().pieces()[at_start ? 0 : m.profile().pieces().size() - 1];
    double h = m.scale() * (pc.b - pc.a) / 511.0;
    double s = at_start ? 1.0 : -1.0;
    Side side = at_start ? Side::right : Side::left;
    double k1 = curvature_interior(m, r + s * h, side);
    double k2 = curvature_interior(m, r + s * 2.0 * h, side);
    double k3 = curvature_interior(m, r + s * 3.0 * h, side);
    return 3.0 * k1 - 3.0 * k2 + k3;
  }
  return curvature_interior(m, r, at_end ? Side::left : Side::right);
}

namespace {

// Simpson with n and n/2 intervals on [s0, s1] of the grid coordinate.
QuadratureResult simpson_piece(const ProfilePiece& p, double scale,
                               const std::function<double(double, Side)>& g, double a,
                               double b, std::size_t n) {
  if (n % 4 != 0) n += 4 - n % 4;
  double s0 = p.map.to_grid(a / scale), s1 = p.map.to_grid(b / scale);
  double h = (s1 - s0) / static_cast<double>(n);
  std::vector<double> y(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    double s = j == n ? s1 : s0 + h * static_cast<double>(j);
    auto [r, drds] = p.map.from_grid(s);
    double rr = std::clamp(scale * r, a, b);
    if (j == 0) rr = a;
    if (j == n) rr = b;
    y[j] = g(rr, j == n ? Side::left : Side::right) * scale * drds;
  }
  double fine = y[0] + y[n], coarse = y[0] + y[n];
  for (std::size_t j = 1; j < n; ++j) fine += (j % 2 ? 4.0 : 2.0) * y[j];
  for (std::size_t j = 2; j < n; j += 2) coarse += ((j / 2) % 2 ? 4.0 : 2.0) * y[j];
  fine *= h / 3.0;
  coarse *= 2.0 * h / 3.0;
  return {fine, std::abs(fine - coarse) / 15.0};
}

}  // namespace

double integrate_radial(const WarpedMetric& m, const std::function<double(double)>& g,
                        double lo, double hi, std::size_t n) {
  return integrate_radial(m, [&g](double r, Side) { return g(r); }, lo, hi, n);
}

double integrate_radial(const WarpedMetric& m, const std::function<double(double, Side)>& g,
                        double lo, double hi, std::size_t n) {
  double total = 0.0;
  for (const auto& p : m.profile().pieces()) {
    double a = std::max(p.a * m.scale(), lo), b = std::min(p.b * m.scale(), hi);
    if (b > a) total += simpson_piece(p, m.scale(), g, a, b, n).value;
  }
  return total;
}

QuadratureResult area(const WarpedMetric& m, double lo, double hi, std::size_t n) {
  check_range(m, lo);
  check_range(m, hi);
  if (lo > hi) throw InputError("area bounds are reversed");
  QuadratureResult out;
  const auto& pieces = m.profile().pieces();
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& p = pieces[k];
    double a = std::max(p.a * m.scale(), lo), b = std::min(p.b * m.scale(), hi);
    if (!(b > a)) continue;
    auto g = [&](double r, Side) { return m.scale() * p.warp(r / m.scale()).v; };
    auto q = simpson_piece(p, m.scale(), g, a, b, n);
    out.value += q.value;
    out.error += q.error;
  }
  out.value *= 2.0 * kPi;
  out.error *= 2.0 * kPi;
  return out;
}

double level_length(const WarpedMetric& m, double r) {
  check_range(m, r);
  double L = m.length();
  return 2.0 * kPi * m.warp(std::clamp(r, 0.0, L), r >= L ? Side::left : Side::right).v;
}

int euler_characteristic(Topology t) {
  switch (t) {
    case Topology::sphere: return 2;
    case Topology::collar: return 0;
    case Topology::half_open: return 1;
  }
  return 0;
}

AuditRecord gauss_bonnet_check(const WarpedMetric& m) {
  double total = 0.0;
  const auto& pieces = m.profile().pieces();
  for (const auto& p : pieces) {
    double a = p.a * m.scale(), b = p.b * m.scale();
    auto g = [&](double r, Side) { return -p.warp(r / m.scale()).d2 / m.scale(); };
    total += simpson_piece(p, m.scale(), g, a, b, 2048).value;
  }
  total *= 2.0 * kPi;
  double boundary = 0.0;
  if (!m.profile().pole_at_start()) boundary -= 2.0 * kPi * m.warp(0.0).d1;
  if (!m.profile().pole_at_end()) boundary += 2.0 * kPi * m.warp(m.length(), Side::left).d1;
  // A cone point of slope s carries curvature 2π(1 - s).
  double tip = 2.0 * kPi * (1.0 - m.profile().options().tip_slope);
  int poles = int(m.profile().pole_at_start()) + int(m.profile().pole_at_end());
  double cone = poles * tip;
  double target = 2.0 * kPi * euler_characteristic(m.topology());
  double dev = std::abs(total + boundary + cone - target);
  double tol = 1e-5 * std::max({1.0, std::abs(total), std::abs(boundary)});
  auto rec = check_le("gauss_bonnet", "|int K dA + int k_g ds + cone defects - 2 pi chi| <= tol",
                      dev, 0.0, tol);
  rec.note = "int K dA = " + std::to_string(total);
  rec.discretization["simpson_intervals"] = 2048;
  return rec;
}

double radial_laplacian(const WarpedMetric& m, const Jet& phi, double r) {
  double L = m.length();
  bool pole = (r <= 0.0 && m.profile().pole_at_start()) ||
              (r >= L && m.profile().pole_at_end());
  if (pole) return 2.0 * phi.d2;
  Jet f = m.warp(r, r >= L ? Side::left : Side::right);
  return phi.d2 + f.d1 / f.v * phi.d1;
}

WarpedMetric conformal_warp(const WarpedMetric& m, const RadialField& w, std::size_t knots,
                            bool allow_corners) {
  return conformal_image(m, w, knots, allow_corners).metric;
}

double ConformalImage::base_of(double rt) const {
  std::size_t k = metric.profile().piece_index(std::clamp(rt, 0.0, metric.length()), Side::right);
  return to_base[k](rt).v;
}

double ConformalImage::tilde_of(double r, const WarpedMetric& base) const {
  std::size_t k = base.profile().piece_index(std::clamp(r, 0.0, base.length()) / base.scale(),
                                             Side::right);
  return to_tilde[k](r).v;
}

ConformalImage conformal_image(const WarpedMetric& m, const RadialField& w, std::size_t knots,
                               bool allow_corners) {
  const double c = m.scale();
  std::vector<ProfilePiece> pieces;
  std::vector<HermiteTable> to_base, to_tilde;
  double r0 = 0.0;
  for (const auto& p : m.profile().pieces()) {
    ParametricPiece pp;
    pp.t0 = c * p.a;
    pp.t1 = c * p.b;
    auto base = p.warp;
    auto inner = p.map;
    double b = pp.t1;
    // At the piece ends evaluate w from the inside.
    auto wt = [w, b](double t) { return w(t, t >= b ? Side::left : Side::right); };
    pp.warp_t = [base, wt, c](double t) {
      Jet f = base(t / c);
      f = {c * f.v, f.d1, f.d2 / c};
      Jet u = wt(t);
      double e = std::exp(u.v);
      return Jet{e * f.v, e * (u.d1 * f.v + f.d1),
                 e * ((u.d2 + u.d1 * u.d1) * f.v + 2.0 * u.d1 * f.d1 + f.d2)};
    };
    pp.speed_t = [wt](double t) {
      Jet u = wt(t);
      double e = std::exp(u.v);
      return Jet{e, e * u.d1, 0.0};
    };
    pp.map.to_grid = [inner, c](double t) { return inner.to_grid(t / c); };
    pp.map.from_grid = [inner, c](double s) {
      auto [r, d] = inner.from_grid(s);
      return std::pair<double, double>{c * r, c * d};
    };
    pp.label = p.label;
    HermiteTable rt, tr;
    pieces.push_back(reparametrize(r0, pp, knots, &rt, &tr));
    to_base.push_back(rt);
    to_tilde.push_back(tr);
    r0 = pieces.back().b;
  }
  ProfileOptions opt = m.profile().options();
  opt.tol_glue = std::max(opt.tol_glue, 1e-4);
  opt.allow_corners = opt.allow_corners || allow_corners;
  RadialProfile prof(std::move(pieces), m.topology(), opt);
  prof.name = m.name() + "~";
  prof.params = m.profile().params;
  return {WarpedMetric(std::move(prof)), std::move(to_base), std::move(to_tilde)};
}

}  // namespace sclab
