#include "sclab/mu_bubble.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "sclab/spectral.hpp"

namespace sclab {

namespace {

constexpr std::array<double, 5> kGLx = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                        0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGLw = {0.2369268850561891, 0.4786286704993665,
                                        0.5688888888888889, 0.4786286704993665,
                                        0.2369268850561891};

Side side_at(const WarpedMetric& m, double r) {
  return r >= m.length() ? Side::left : Side::right;
}

std::string join(const double* v, std::size_t n) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < n; ++i) os << (i ? " <= " : "") << v[i];
  return os.str();
}

}  // namespace

RadialField weight_from_supersolution(const RadialField& phi, double beta) {
  if (!(beta > 0.0)) throw InputError("beta must be positive");
  const double a = 1.0 / beta;
  return RadialField::analytic_sided([phi, a](double r, Side side) {
    Jet p = phi(r, side);
    if (!(p.v > 0.0)) throw InputError("weight needs a positive supersolution");
    double v = std::pow(p.v, a);
    double l1 = p.d1 / p.v;
    double d1 = a * v * l1;
    double d2 = a * v * (p.d2 / p.v + (a - 1.0) * l1 * l1);
    return Jet{v, d1, d2};
  }, FieldSign::positive);
}

double weight_residual(const WarpedMetric& m, double beta, double lambda, const RadialField& u,
                       std::size_t n) {
  // The weight inequality is the supersolution inequality for u^β.
  RadialField phi = RadialField::analytic_sided([u, beta](double r, Side side) {
    Jet w = u(r, side);
    double v = std::pow(w.v, beta);
    double l1 = w.d1 / w.v;
    return Jet{v, beta * v * l1, beta * v * (w.d2 / w.v + (beta - 1.0) * l1 * l1)};
  }, FieldSign::positive);
  return supersolution_residual(m, beta, lambda, phi, n, {}, true);
}

GeodesicChain weighted_geodesic_chain(const WarpedMetric& m, double beta, double lambda,
                                      const RadialField& u,
                                      std::optional<std::pair<double, double>> segment,
                                      std::size_t n) {
  if (!(beta > 0.25)) throw InputError("the geodesic chain needs beta > 1/4");
  if (!(lambda > 0.0)) throw InputError("the geodesic chain needs lambda > 0");
  auto [a, b] = segment.value_or(std::pair<double, double>{0.0, m.length()});
  if (!(a >= 0.0 && b <= m.length() && a < b)) throw InputError("segment outside the meridian");
  GeodesicChain c;
  c.length = b - a;
  c.bound = 2.0 * kPi * beta / std::sqrt(lambda * (4.0 * beta - 1.0));
  c.weight_residual = weight_residual(m, beta, lambda, u);
  const double L = c.length, k = kPi / L, lb = lambda / beta;

  struct Terms {
    double u, du, psi, dpsi, fl, k;  // fl = f'/f, k = f''/f
  };
  auto terms = [&](double r, Side side) {
    Jet f = m.warp(r, side);
    Jet w = u(r, side);
    double t = r - a;
    Terms s{w.v, w.d1, std::sin(k * t), k * std::cos(k * t), 0.0, 0.0};
    if (f.v > 0.0) {
      s.fl = f.d1 / f.v;
      s.k = f.d2 / f.v;
    }
    return s;
  };
  using Line = double (*)(const Terms&, double, double);
  const std::array<Line, 4> lines = {
      [](const Terms& s, double, double) {
        double phi = s.psi / std::sqrt(s.u);
        double dphi = -0.5 * std::pow(s.u, -1.5) * s.du * s.psi + s.dpsi / std::sqrt(s.u);
        return s.u * dphi * dphi + (s.fl * s.du + s.k * s.u) * phi * phi;
      },
      [](const Terms& s, double bt, double lb) {
        double dphi = -0.5 * std::pow(s.u, -1.5) * s.du * s.psi + s.dpsi / std::sqrt(s.u);
        double q = s.du / s.u;
        return s.u * dphi * dphi + s.du * (-s.du / (s.u * s.u) * s.psi * s.psi +
                                           2.0 / s.u * s.psi * s.dpsi) -
               lb * s.psi * s.psi + (1.0 - bt) * q * q * s.psi * s.psi;
      },
      [](const Terms& s, double bt, double lb) {
        double q = s.du / s.u;
        return (0.25 - bt) * q * q * s.psi * s.psi + s.dpsi * s.dpsi + q * s.psi * s.dpsi -
               lb * s.psi * s.psi;
      },
      [](const Terms& s, double bt, double lb) {
        return (1.0 + 1.0 / (4.0 * bt - 1.0)) * s.dpsi * s.dpsi - lb * s.psi * s.psi;
      }};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    c.lines[i] = integrate_radial(m, [&](double r, Side side) {
      // At a pole end f'/f and f''/f are left at 0; they multiply φ² = 0.
      return lines[i](terms(r, side), beta, lb);
    }, a, b, n);
  }
  double scale = 1.0;
  for (double v : c.lines) scale = std::max(scale, std::abs(v));
  // Line 0 -> 1 uses the weight inequality pointwise, so it inherits its residual.
  double weight_mass = integrate_radial(m, [&](double r, Side side) {
    Terms s = terms(r, side);
    double lap = std::abs(radial_laplacian(m, u(r, side), r));
    double kk = std::abs(s.k) * s.u + lb * s.u + std::abs(1.0 - beta) * s.du * s.du / s.u;
    return (lap + kk) * s.psi * s.psi / s.u;
  }, a, b, n);
  for (std::size_t i = 0; i + 1 < c.lines.size(); ++i) {
    double tol = 1e-8 * scale + (i == 0 ? c.weight_residual * weight_mass : 0.0);
    if (c.lines[i] > c.lines[i + 1] + tol) {
      c.violated_line = static_cast<int>(i);
      break;
    }
  }
  return c;
}

AuditRecord weighted_geodesic_audit(const WarpedMetric& m, double beta, double lambda,
                                    const RadialField& u,
                                    std::optional<std::pair<double, double>> segment,
                                    std::size_t n) {
  const std::string stmt = "L_seg <= 2 pi b / sqrt(lam (4b - 1))";
  if (!(beta > 0.25)) throw InputError("weighted geodesic bound is unavailable for beta <= 1/4");
  if (!(lambda > 0.0)) {
    auto r = skipped("weighted_geodesic", stmt, "needs lambda > 0");
    r.beta = beta;
    r.lambda = lambda;
    return r;
  }
  GeodesicChain c = weighted_geodesic_chain(m, beta, lambda, u, segment, n);
  AuditRecord r = check_le("weighted_geodesic", stmt, c.length, c.bound, 1e-9 * c.bound);
  r.beta = beta;
  r.lambda = lambda;
  std::ostringstream os;
  os << "chain " << join(c.lines.data(), c.lines.size());
  if (c.violated_line >= 0) {
    os << "; line " << c.violated_line << " exceeds line " << c.violated_line + 1;
    r.verdict = Verdict::fail;
  }
  if (c.weight_residual > 1e-6) os << "; weight residual " << c.weight_residual;
  r.note = os.str();
  r.discretization["n"] = static_cast<double>(n);
  return r;
}

BubbleProblem::BubbleProblem(WarpedMetric m, RadialField h_, RadialField u_, double op,
                             double om, double oz)
    : metric(std::move(m)), h(std::move(h_)), u(std::move(u_)), omega_plus(op),
      omega_minus(om), omega_zero(oz) {
  const double L = metric.length();
  if (!(0.0 <= omega_plus && omega_plus < omega_minus && omega_minus <= L)) {
    throw InputError("obstacles must satisfy 0 <= omega_plus < omega_minus <= L");
  }
  if (!(omega_plus <= omega_zero && omega_zero <= omega_minus)) {
    throw InputError("the reference set must contain omega_plus and avoid omega_minus");
  }
}

BubbleEnergy::BubbleEnergy(const BubbleProblem& p) : p_(&p) {
  x_ = p.metric.grid(p.n, p.omega_plus, p.omega_minus);
  cum_.assign(x_.size(), 0.0);
  for (std::size_t i = 1; i < x_.size(); ++i) cum_[i] = cum_[i - 1] + partial(i - 1, x_[i]);
  std::size_t i = std::upper_bound(x_.begin(), x_.end(), p.omega_zero) - x_.begin();
  i = std::clamp<std::size_t>(i, 1, x_.size()) - 1;
  g0_ = cum_[i] + partial(i, p.omega_zero);
}

int BubbleEnergy::buffer_side(double r) const {
  const auto& p = *p_;
  const std::size_t N = x_.size();
  if (p.omega_plus > 0.0 && r <= x_[std::min<std::size_t>(2, N - 1)]) return 1;
  if (p.omega_minus < p.metric.length() && r >= x_[N - 1 - std::min<std::size_t>(2, N - 1)]) {
    return -1;
  }
  return 0;
}

double BubbleEnergy::clamped_h(double r) const {
  const auto& p = *p_;
  if (int b = buffer_side(r)) return b * p.h_max;
  double h = p.h(r).v;
  if (std::isnan(h)) return 0.0;
  return std::clamp(h, -p.h_max, p.h_max);
}

double BubbleEnergy::partial(std::size_t i, double t) const {
  const auto& m = p_->metric;
  double a = x_[i], b = t;
  if (b == a) return 0.0;
  double acc = 0.0;
  for (std::size_t q = 0; q < kGLx.size(); ++q) {
    double r = 0.5 * (a + b) + 0.5 * (b - a) * kGLx[q];
    acc += kGLw[q] * clamped_h(r) * p_->u(r).v * m.warp(r).v;
  }
  return 2.0 * kPi * 0.5 * (b - a) * acc;
}

double BubbleEnergy::operator()(double t) const {
  const auto& p = *p_;
  if (t < p.omega_plus || t > p.omega_minus) {
    throw InputError("candidate boundary lies inside an obstacle");
  }
  std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin();
  i = std::clamp<std::size_t>(i, 1, x_.size()) - 1;
  double g = cum_[i] + partial(i, t);
  Side side = side_at(p.metric, t);
  return 2.0 * kPi * p.u(t, side).v * p.metric.warp(t, side).v - (g - g0_);
}

double bubble_energy(const BubbleProblem& p, double t) { return BubbleEnergy(p)(t); }

BubbleSolution solve_bubble(const BubbleProblem& p) {
  BubbleEnergy E(p);
  const auto& x = E.nodes();
  const std::size_t N = x.size();
  std::vector<double> e(N);
  double scale = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    e[i] = E(x[i]);
    Side side = side_at(p.metric, x[i]);
    scale = std::max(scale, 2.0 * kPi * p.u(x[i], side).v * p.metric.warp(x[i], side).v);
  }
  double emin = *std::min_element(e.begin(), e.end());
  double tie = 1e-10 * std::max(scale, std::abs(emin));
  BubbleSolution s;
  std::size_t k = N;
  for (std::size_t i = 0; i < N; ++i) {
    if (e[i] <= emin + tie) {
      if (k == N) k = i;
      ++s.near_ties;
    }
  }
  double lo = x[k == 0 ? 0 : k - 1], hi = x[std::min(k + 1, N - 1)];
  const double L = p.metric.length();
  // Brent's tolerance is relative to |t|; ask for 1e-8 L.
  int bits = 2 + static_cast<int>(std::ceil(std::log2(std::max(hi, 1e-8 * L) / (1e-8 * L))));
  bits = std::clamp(bits, 10, 52);
  auto [t, et] = boost::math::tools::brent_find_minima([&](double r) { return E(r); }, lo, hi,
                                                       bits);
  if (e[k] < et) {
    t = x[k];
    et = e[k];
  }
  s.t = t;
  s.energy = et;
  s.at_boundary = t - p.omega_plus <= 1e-8 * L || p.omega_minus - t <= 1e-8 * L ||
                  E.in_buffer(t);
  Side side = side_at(p.metric, t);
  Jet f = p.metric.warp(t, side);
  Jet w = p.u(t, side);
  s.residual = f.v > 0.0 ? std::abs(f.d1 / f.v - p.h(t, side).v + w.d1 / w.v) : kInf;
  return s;
}

double CotProfile::reach() const { return kPi / c2; }

CotProfile cot_profile(double c1, double c2, double offset) {
  if (!(c2 > 0.0)) throw InputError("cot profile needs c2 > 0");
  CotProfile p{c1, c2, offset, {}};
  p.h = RadialField::analytic([c1, c2, offset](double r) {
    double x = c2 * (r - offset);
    double s = std::sin(x), c = std::cos(x);
    double ct = c / s, csc2 = 1.0 / (s * s);
    return Jet{c1 * ct, -c1 * c2 * csc2, 2.0 * c1 * c2 * c2 * csc2 * ct};
  });
  return p;
}

CotProfile prescribed_h(double beta, double lambda, double epsilon, double offset) {
  if (!(beta > 0.25)) throw InputError("prescribed h needs beta > 1/4");
  if (!(lambda > 0.0)) throw InputError("prescribed h needs lambda > 0");
  double slack = 1.0 - 1.0 / (4.0 * beta) - epsilon;
  if (!(epsilon > 0.0 && slack > 0.0)) {
    throw InputError("epsilon must lie in (0, 1 - 1/(4 beta))");
  }
  return cot_profile(std::sqrt(lambda / (beta * slack)), std::sqrt(lambda / beta * slack),
                     offset);
}

AuditRecord audit_h_inequality(double beta, double lambda, const RadialField& h, double lo,
                               double hi, std::size_t n) {
  if (!(lo < hi)) throw InputError("empty range for the h inequality");
  const double q = 1.0 - 1.0 / (4.0 * beta), lb = lambda / beta;
  double worst = -kInf;
  std::size_t equal = 0;
  for (std::size_t i = 1; i < n; ++i) {
    double r = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    Jet j = h(r);
    double rhs = q * j.v * j.v + lb;
    double rel = (std::abs(j.d1) - rhs) / rhs;
    if (rel >= -1e-12) ++equal;
    worst = std::max(worst, rel);
  }
  AuditRecord r = check_le("h_inequality", "|h'| <= (1 - 1/(4b)) h^2 + lam/b", worst, 0.0, 1e-12);
  r.beta = beta;
  r.lambda = lambda;
  r.note = equal == 0 ? "strict at all nodes"
                      : std::to_string(equal) + " node(s) at equality within 1e-12";
  r.discretization["n"] = static_cast<double>(n);
  return r;
}

StabilityChain stability_chain(const BubbleProblem& p, double t, double beta, double lambda) {
  Side side = side_at(p.metric, t);
  Jet f = p.metric.warp(t, side), w = p.u(t, side), h = p.h(t, side);
  if (!(f.v > 0.0)) throw InputError("stability needs a circle of positive length");
  const double len = 2.0 * kPi * f.v, lb = lambda / beta;
  double K = -f.d2 / f.v;
  double lap = w.d2 + f.d1 / f.v * w.d1;
  double u = w.v, un = w.d1;
  StabilityChain c;
  c.lines[0] = len * (-K * u - h.v * h.v * u + h.v * un - un * un / u + lap - h.d1 * u) / (u * u);
  c.lines[1] = len * ((-h.v * h.v - lb + std::abs(h.d1)) / u + h.v * un / (u * u) -
                      beta * un * un / (u * u * u));
  c.lines[2] = len * ((0.25 / beta - 1.0) * h.v * h.v - lb + std::abs(h.d1)) / u;
  double scale = std::max({1.0, std::abs(c.lines[0]), std::abs(c.lines[1]), std::abs(c.lines[2])});
  for (std::size_t i = 0; i + 1 < c.lines.size(); ++i) {
    if (c.lines[i] > c.lines[i + 1] + 1e-9 * scale) {
      c.violated_line = static_cast<int>(i);
      break;
    }
  }
  return c;
}

AuditRecord stability_audit(const BubbleProblem& p, double t, double beta, double lambda) {
  StabilityChain c = stability_chain(p, t, beta, lambda);
  AuditRecord r;
  r.audit = "bubble_stability";
  r.statement = "int [(1/(4b) - 1) h^2 - lam/b + |grad h|] / u dl < 0";
  r.beta = beta;
  r.lambda = lambda;
  r.lhs = c.lines[2];
  r.rhs = 0.0;
  r.margin = -c.lines[2];
  r.verdict = c.lines[2] < 0.0 && c.violated_line < 0 ? Verdict::pass : Verdict::fail;
  std::ostringstream os;
  os << "t = " << t << "; chain " << join(c.lines.data(), c.lines.size());
  if (c.violated_line >= 0) os << "; line " << c.violated_line << " exceeds the next";
  if (c.lines[2] >= 0.0) os << "; nonnegative: h may violate the strict inequality";
  r.note = os.str();
  return r;
}

AuditRecord audit_bubble_diameter(const WarpedMetric& m, double beta, double lambda,
                                  double epsilon, const RadialField& u) {
  if (m.topology() != Topology::sphere) throw InputError("bubble diameter needs a closed sphere");
  const double L = m.length();
  const double cap = 1e-6 * L;
  CotProfile h = prescribed_h(beta, lambda, epsilon, cap);
  const double bm = 2.0 * kPi * beta / std::sqrt(lambda * (4.0 * beta - 1.0));
  AuditRecord r = check_le("bubble_diameter", "diam <= pi / C2", L, h.reach() + cap,
                           1e-9 * h.reach());
  r.beta = beta;
  r.lambda = lambda;
  r.epsilon = epsilon;
  std::ostringstream os;
  os << "pi/C2 over the geodesic bound = " << h.reach() / bm;
  if (L > h.reach() + cap) {
    // The band exists: a minimizer there must contradict stability.
    BubbleProblem p(m, h.h, u, cap, cap + h.reach(), cap);
    auto s = solve_bubble(p);
    if (!s.at_boundary) {
      auto st = stability_chain(p, s.t, beta, lambda);
      os << "; bubble at t = " << s.t << " with stability line " << st.lines[2];
    }
  }
  r.note = os.str();
  return r;
}

}  // namespace sclab
