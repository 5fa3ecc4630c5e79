#include "sclab/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace sclab {

std::string to_string(Topology t) {
  switch (t) {
    case Topology::sphere: return "sphere";
    case Topology::collar: return "collar";
    case Topology::half_open: return "half_open";
  }
  return "?";
}

Topology topology_from_string(const std::string& s) {
  if (s == "sphere") return Topology::sphere;
  if (s == "collar") return Topology::collar;
  if (s == "half_open") return Topology::half_open;
  throw InputError("unknown topology '" + s + "'");
}

GridMap GridMap::identity() {
  return {[](double r) { return r; },
          [](double s) { return std::pair<double, double>{s, 1.0}; }};
}

GridMap GridMap::logarithmic() {
  return {[](double r) { return std::log(r); },
          [](double s) {
            double r = std::exp(s);
            return std::pair<double, double>{r, r};
          }};
}

ProfilePiece ProfilePiece::uniform(double a, double b, std::function<Jet(double)> warp,
                                   std::string label) {
  return {a, b, std::move(warp), GridMap::identity(), std::move(label)};
}

ProfilePiece ProfilePiece::graded(double a, double b, std::function<Jet(double)> warp,
                                  std::string label) {
  if (!(a > 0.0)) throw InputError("graded piece must start at positive r");
  return {a, b, std::move(warp), GridMap::logarithmic(), std::move(label)};
}

RadialProfile::RadialProfile(std::vector<ProfilePiece> pieces, Topology topology,
                             ProfileOptions options)
    : pieces_(std::move(pieces)), topology_(topology), options_(options) {
  if (pieces_.empty()) throw InputError("profile has no pieces");
  validate();
}

void RadialProfile::validate() const {
  if (std::abs(pieces_.front().a) > 1e-14) {
    throw InputError("profile must start at r = 0");
  }
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto& p = pieces_[k];
    if (!(p.b > p.a)) throw InputError("profile piece has empty interval");
    if (k > 0 && std::abs(p.a - pieces_[k - 1].b) > 1e-12 * std::max(1.0, p.a)) {
      throw InputError("profile pieces are not contiguous");
    }
  }
  const double tol = options_.tol_glue;
  // Interior positivity, sampled on a moderate grid.
  for (double r : grid(64)) {
    bool end0 = r == 0.0, end1 = r == length();
    if ((end0 && pole_at_start()) || (end1 && pole_at_end())) continue;
    double f = warp(r, end1 ? Side::left : Side::right).v;
    if (!(f > 0.0)) {
      std::ostringstream os;
      os << "warp function is not positive at r = " << r;
      throw InputError(os.str());
    }
  }
  auto check_pole = [&](double r, Side side, double sign) {
    Jet j = warp(r, side);
    if (std::abs(j.v) > tol || std::abs(sign * j.d1 - options_.tip_slope) > tol) {
      std::ostringstream os;
      os << "pole condition violated at r = " << r << " (f = " << j.v
         << ", f' = " << j.d1 << ")";
      throw InputError(os.str());
    }
  };
  if (pole_at_start()) check_pole(0.0, Side::right, 1.0);
  if (pole_at_end()) check_pole(length(), Side::left, -1.0);
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    double r = pieces_[k].a;
    Jet l = pieces_[k - 1].warp(r), rt = pieces_[k].warp(r);
    double df = std::abs(l.v - rt.v);
    double dd = rt.d1 - l.d1;
    bool bad_f = df > tol * std::max(1.0, std::abs(l.v));
    double dscale = tol * std::max(1.0, std::abs(l.d1));
    bool bad_d = options_.allow_corners ? dd > dscale : std::abs(dd) > dscale;
    if (bad_f || bad_d) {
      std::ostringstream os;
      os << "C1 gluing violated at r = " << r << " (jump f = " << df
         << ", jump f' = " << dd << ")";
      throw InputError(os.str());
    }
  }
}

RadialProfile RadialProfile::from_table(const std::vector<double>& r,
                                        const std::vector<double>& f,
                                        Topology topology) {
  if (r.empty() || r.front() != 0.0) throw InputError("table must start at r = 0");
  std::optional<double> lo, hi;
  if (topology != Topology::collar) lo = 1.0;
  if (topology == Topology::sphere) hi = -1.0;
  CubicSpline s(r, f, lo, hi);
  ProfileOptions opt;
  opt.tol_glue = 1e-4;
  RadialProfile p({ProfilePiece::uniform(r.front(), r.back(),
                                         [s](double x) { return s(x); }, "table")},
                  topology, opt);
  p.name = "table";
  return p;
}

std::vector<double> RadialProfile::breakpoints() const {
  std::vector<double> out;
  out.reserve(pieces_.size() + 1);
  for (const auto& p : pieces_) out.push_back(p.a);
  out.push_back(length());
  return out;
}

std::size_t RadialProfile::piece_index(double r, Side side) const {
  double L = length();
  double slack = 1e-12 * std::max(1.0, L);
  if (r < -slack || r > L + slack || std::isnan(r)) {
    std::ostringstream os;
    os << "radius " << r << " outside [0, " << L << "]";
    throw InputError(os.str());
  }
  std::size_t k = 0;
  while (k + 1 < pieces_.size() &&
         (r > pieces_[k].b || (side == Side::right && r == pieces_[k].b))) {
    ++k;
  }
  return k;
}

Jet RadialProfile::warp(double r, Side side) const {
  const auto& p = pieces_[piece_index(r, side)];
  return p.warp(std::clamp(r, p.a, p.b));
}

std::vector<double> RadialProfile::grid(std::size_t n) const {
  return grid(n, 0.0, length());
}

std::vector<double> RadialProfile::grid(std::size_t n, double lo, double hi) const {
  if (n < 2) throw InputError("grid needs at least 2 nodes per piece");
  if (!(lo < hi)) throw InputError("grid range is empty");
  std::vector<double> out;
  for (const auto& p : pieces_) {
    double a = std::max(p.a, lo), b = std::min(p.b, hi);
    if (!(b > a)) continue;
    double s0 = p.map.to_grid(a), s1 = p.map.to_grid(b);
    for (std::size_t j = out.empty() ? 0 : 1; j < n; ++j) {
      double r;
      if (j == 0) {
        r = a;
      } else if (j + 1 == n) {
        r = b;
      } else {
        r = p.map.from_grid(s0 + (s1 - s0) * static_cast<double>(j) /
                                     static_cast<double>(n - 1)).first;
      }
      out.push_back(r);
    }
  }
  return out;
}

std::vector<double> RadialProfile::junction_mismatches() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    double r = pieces_[k].a;
    Jet l = pieces_[k - 1].warp(r), rt = pieces_[k].warp(r);
    out.push_back(std::abs(l.v - rt.v) + std::abs(l.d1 - rt.d1));
  }
  return out;
}

double RadialProfile::glue_mismatch() const {
  auto m = junction_mismatches();
  return m.empty() ? 0.0 : *std::max_element(m.begin(), m.end());
}

namespace {

constexpr std::array<double, 5> kGLx = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                        0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGLw = {0.2369268850561891, 0.4786286704993665,
                                        0.5688888888888889, 0.4786286704993665,
                                        0.2369268850561891};

}  // namespace

ProfilePiece reparametrize(double r_start, const ParametricPiece& p, std::size_t knots,
                           HermiteTable* r_to_t_out, HermiteTable* t_to_r_out) {
  if (knots < 3) throw InputError("reparametrization needs at least 3 knots");
  double s0 = p.map.to_grid(p.t0), s1 = p.map.to_grid(p.t1);
  std::vector<double> t(knots);
  for (std::size_t j = 0; j < knots; ++j) {
    t[j] = j == 0 ? p.t0
           : j + 1 == knots
               ? p.t1
               : p.map.from_grid(s0 + (s1 - s0) * static_cast<double>(j) /
                                         static_cast<double>(knots - 1)).first;
  }
  std::vector<double> S(knots), f(knots), fr(knots), frr(knots);
  std::vector<double> tr(knots), trr(knots), st(knots), stt(knots);
  S[0] = 0.0;  // local arclength, r_start added at the interface
  for (std::size_t j = 0; j < knots; ++j) {
    if (j > 0) {
      double a = t[j - 1], b = t[j], acc = 0.0;
      for (std::size_t q = 0; q < kGLx.size(); ++q) {
        acc += kGLw[q] * p.speed_t(0.5 * (a + b) + 0.5 * (b - a) * kGLx[q]).v;
      }
      S[j] = S[j - 1] + 0.5 * (b - a) * acc;
    }
    Jet w = p.warp_t(t[j]);
    Jet sp = p.speed_t(t[j]);
    if (!(sp.v > 0.0)) throw NumericalError("parametric speed must be positive");
    st[j] = sp.v;
    stt[j] = sp.d1;
    f[j] = w.v;
    fr[j] = w.d1 / sp.v;
    frr[j] = (w.d2 * sp.v - w.d1 * sp.d1) / (sp.v * sp.v * sp.v);
    tr[j] = 1.0 / sp.v;
    trr[j] = -sp.d1 / (sp.v * sp.v * sp.v);
  }
  HermiteTable ftab(S, f, fr, frr, r_start);
  HermiteTable r_to_t(S, t, tr, trr, r_start);
  std::vector<double> Sabs(S);
  for (double& v : Sabs) v += r_start;
  HermiteTable t_to_r(t, Sabs, st, stt);
  if (r_to_t_out) *r_to_t_out = r_to_t;
  if (t_to_r_out) *t_to_r_out = t_to_r;

  ProfilePiece out;
  out.a = r_start;
  out.b = r_start + S.back();
  out.warp = [ftab](double r) { return ftab(r); };
  auto speed = p.speed_t;
  auto inner = p.map;
  out.map.to_grid = [inner, r_to_t](double r) { return inner.to_grid(r_to_t(r).v); };
  out.map.from_grid = [inner, t_to_r, speed](double s) {
    auto [tt, dt] = inner.from_grid(s);
    return std::pair<double, double>{t_to_r(tt).v, speed(tt).v * dt};
  };
  out.label = p.label;
  return out;
}

}  // namespace sclab
