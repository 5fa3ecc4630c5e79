#include "sclab/mt_audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "sclab/distances.hpp"
#include "sclab/kernels.hpp"

namespace sclab {

namespace {

// ∫_lo^hi g with extra cuts at the breaks; each segment sees one-sided values.
double integrate_split(const WarpedMetric& m, const std::function<double(double, Side)>& g,
                       double lo, double hi, const std::vector<double>& breaks, std::size_t n) {
  std::vector<double> cuts = {lo, hi};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] > cuts[k]) total += integrate_radial(m, g, cuts[k], cuts[k + 1], n);
  }
  return total;
}

struct Moments {
  double area = 0.0, energy = 0.0, ratio = 0.0, ratio_exp = 0.0;
};

Moments moments(const WarpedMetric& m, const MTTestFunction& tf, double lo, double hi,
                double shift, double xi, double p, std::size_t n) {
  Moments s;
  auto w = [&](double r, Side side) { return 2.0 * kPi * m.warp(r, side).v; };
  s.area = integrate_split(m, w, lo, hi, tf.breaks, n);
  s.energy = integrate_split(m, [&](double r, Side side) {
    double d = tf.u(r, side).d1;
    return d * d * w(r, side);
  }, lo, hi, tf.breaks, n);
  if (s.energy <= 0.0) return s;
  s.ratio = integrate_split(m, [&](double r, Side side) {
    double v = tf.u(r, side).v - shift;
    return std::exp(xi * v * v / s.energy) * w(r, side);
  }, lo, hi, tf.breaks, n) / s.area;
  s.ratio_exp = integrate_split(m, [&](double r, Side side) {
    return std::exp(p * (tf.u(r, side).v - shift)) * w(r, side);
  }, lo, hi, tf.breaks, n) / (s.area * std::exp(p * p * s.energy / (4.0 * xi)));
  return s;
}

}  // namespace

MTTestFunction mt_tent(double a, double b, double height) {
  if (!(0.0 <= a && a < b)) throw InputError("tent needs 0 <= a < b");
  MTTestFunction t;
  t.family = "tent";
  t.breaks = {a, b};
  t.u = RadialField::analytic_sided([a, b, height](double r, Side side) {
    bool left = side == Side::left;
    if (r < a || (r == a && left)) return Jet{height, 0.0, 0.0};
    if (r > b || (r == b && !left)) return Jet{0.0, 0.0, 0.0};
    return Jet{height * (b - r) / (b - a), -height / (b - a), 0.0};
  });
  return t;
}

MTTestFunction mt_bump(double c, double w, double height) {
  if (!(c >= 0.0 && w > 0.0)) throw InputError("bump needs c >= 0 and w > 0");
  if (c > 0.0 && c < w) throw InputError("an off-centre bump must stay clear of the pole");
  MTTestFunction t;
  t.family = c == 0.0 ? "bump_pole" : "bump";
  t.breaks = {std::max(0.0, c - w), c + w};
  t.u = RadialField::analytic([c, w, height](double r) {
    double s = (r - c) / w;
    if (std::abs(s) >= 1.0) return Jet{0.0, 0.0, 0.0};
    double q = 1.0 - s * s;
    double v = height * std::exp(1.0 - 1.0 / q);
    double g1 = -2.0 * s / (q * q);  // d/ds of -1/q
    double g2 = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
    return Jet{v, v * g1 / w, v * (g1 * g1 + g2) / (w * w)};
  });
  return t;
}

std::vector<MTTestFunction> mt_sample(double R, std::size_t count, std::uint64_t seed) {
  if (!(R > 0.0)) throw InputError("sample support must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<MTTestFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double height = 0.2 + 1.8 * U(rng);
    double kind = U(rng);
    if (kind < 0.5) {
      double b = R * (0.05 + 0.95 * U(rng));
      out.push_back(mt_tent(b * 0.95 * U(rng), b, height));
    } else if (kind < 0.75) {
      out.push_back(mt_bump(0.0, R * (0.05 + 0.95 * U(rng)), height));
    } else {
      double c = R * (0.1 + 0.8 * U(rng));
      double w = (0.02 + 0.98 * U(rng)) * std::min(c, R - c);
      out.push_back(mt_bump(c, w, height));
    }
  }
  return out;
}

double dirichlet_ratio_ub(const WarpedMetric& m, double R, std::size_t n) {
  if (!(R > 0.0 && R <= m.length())) throw InputError("domain radius outside the meridian");
  auto x = m.grid(n, 0.0, R);
  auto cum = prefix_sum(cell_areas(Exec::serial, m, x));
  double best = kInf;
  for (std::size_t i = 1; i < x.size(); ++i) {
    double per = 2.0 * kPi * m.warp(x[i], x[i] >= m.length() ? Side::left : Side::right).v;
    if (cum[i] > 0.0) best = std::min(best, per * per / cum[i]);
  }
  return best;
}

MTResult mt_dirichlet_audit(const WarpedMetric& m, double R, const MTTestFunction& u, double xi,
                            double p, std::size_t n) {
  if (!(xi > 0.0)) throw InputError("xi must be positive");
  MTResult res;
  res.family = u.family;
  res.xi = xi;
  res.p = p;
  res.iso_ub = dirichlet_ratio_ub(m, R, n);
  if (xi > res.iso_ub * (1.0 + 1e-9)) throw InputError("xi exceeds the Dirichlet ratio bound");
  res.advisory = xi >= 0.9 * res.iso_ub;
  double top = std::abs(u.u(R, Side::left).v);
  double scale = std::max(std::abs(u.u(0.0).v), 1.0);
  if (top > 1e-12 * scale) throw InputError("test function must vanish on the domain boundary");
  Moments s = moments(m, u, 0.0, R, 0.0, xi, p, n);
  if (!(s.energy > 0.0)) throw InputError("test function has zero Dirichlet energy");
  res.energy = s.energy;
  res.ratio = s.ratio;
  res.ratio_exp = s.ratio_exp;
  return res;
}

MTResult mt_closed_audit(const WarpedMetric& m, const MTTestFunction& u, double p, double xi,
                         std::size_t n) {
  if (m.topology() != Topology::sphere) throw InputError("closed audit needs a closed surface");
  const double L = m.length();
  MTResult res;
  res.family = u.family;
  res.p = p;
  res.iso_ub = isoperimetric_scan(m, n, Exec::serial).in_ub;
  res.xi = xi > 0.0 ? xi : res.iso_ub;
  auto w = [&](double r, Side side) { return 2.0 * kPi * m.warp(r, side).v; };
  double area = integrate_split(m, w, 0.0, L, u.breaks, n);
  double mean = integrate_split(m, [&](double r, Side side) {
    return u.u(r, side).v * w(r, side);
  }, 0.0, L, u.breaks, n) / area;
  Moments s = moments(m, u, 0.0, L, mean, res.xi, p, n);
  res.energy = s.energy;
  res.advisory = res.xi >= 0.9 * res.iso_ub;
  if (s.energy <= 0.0) {
    res.ratio = 1.0;
    res.ratio_exp = 1.0;
  } else {
    res.ratio = s.ratio;
    res.ratio_exp = s.ratio_exp;
  }
  return res;
}

MTSuite mt_suite(const WarpedMetric& m, double R, double xi, std::size_t count,
                 std::uint64_t seed, std::size_t n) {
  const bool closed = R <= 0.0;
  auto samples = mt_sample(closed ? m.length() : R, count, seed);
  MTSuite suite;
  suite.results.resize(samples.size());
  for_each_index(Exec::parallel, samples.size(), [&](std::size_t i) {
    suite.results[i] = closed ? mt_closed_audit(m, samples[i], 2.0, xi, n)
                              : mt_dirichlet_audit(m, R, samples[i], xi, 2.0, n);
  });
  for (const auto& r : suite.results) {
    suite.max_ratio = std::max(suite.max_ratio, r.ratio);
    suite.max_ratio_exp = std::max(suite.max_ratio_exp, r.ratio_exp);
    if (r.ratio_exp > r.ratio * (1.0 + 1e-9)) suite.young_dominated = false;
  }
  return suite;
}

AuditRecord mt_envelope_audit(const WarpedMetric& m, double R, double xi, std::size_t count,
                              std::uint64_t seed, std::size_t n) {
  double base = mt_suite(m, R, xi, count, seed, n).max_ratio;
  double grid = mt_suite(m, R, xi, count, seed, 2 * n).max_ratio;
  double more = mt_suite(m, R, xi, 2 * count, seed, n).max_ratio;
  double growth = std::max(grid, more) / base - 1.0;
  AuditRecord r = check_le("mt_envelope", "max ratio growth under doubling <= 10%", growth, 0.1,
                           0.0);
  r.epsilon = xi;
  std::ostringstream os;
  os << "envelope " << base << ", grid x2 " << grid << ", samples x2 " << more;
  r.note = os.str();
  r.discretization["n"] = static_cast<double>(n);
  r.discretization["count"] = static_cast<double>(count);
  return r;
}

}  // namespace sclab
