#include "sclab/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sclab/kernels.hpp"

namespace sclab {

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::closed: return "closed";
    case Boundary::dirichlet: return "dirichlet";
    case Boundary::neumann: return "neumann";
  }
  return "?";
}

namespace {

constexpr std::array<double, 4> kX = {-0.8611363115940526, -0.3399810435848563,
                                      0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kW = {0.3478548451374538, 0.6521451548625461,
                                      0.6521451548625461, 0.3478548451374538};

template <class G>
double gauss4(G&& g, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
  for (std::size_t q = 0; q < kX.size(); ++q) s += kW[q] * g(c + h * kX[q]);
  return h * s;
}

std::pair<double, double> resolve_domain(const WarpedMetric& m, Boundary bc,
                                         std::optional<std::pair<double, double>> domain) {
  double L = m.length();
  auto [lo, hi] = domain.value_or(std::pair<double, double>{0.0, L});
  if (!(lo >= 0.0 && hi <= L * (1.0 + 1e-14) && lo < hi)) {
    throw InputError("spectral domain must lie inside [0, L]");
  }
  hi = std::min(hi, L);
  if (bc == Boundary::closed &&
      (lo != 0.0 || hi != L || m.topology() != Topology::sphere)) {
    throw InputError("closed problems need the full sphere");
  }
  return {lo, hi};
}

bool is_pole(const WarpedMetric& m, double r) {
  return (r == 0.0 && m.profile().pole_at_start()) ||
         (r == m.length() && m.profile().pole_at_end());
}

}  // namespace

Pencil assemble_pencil(const WarpedMetric& m, double beta, const std::vector<double>& x,
                       Boundary bc) {
  const std::size_t N = x.size();
  if (N < 3) throw InputError("pencil needs at least 3 nodes");
  Pencil p;
  p.nodes = x;
  bool pole_lo = is_pole(m, x.front()), pole_hi = is_pole(m, x.back());
  p.first = (bc == Boundary::dirichlet && !pole_lo) ? 1 : 0;
  p.last = (bc == Boundary::dirichlet && !pole_hi) ? N - 2 : N - 1;

  std::vector<double> c(N - 1), w(N - 1);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    c[i] = 0.5 * (x[i] + x[i + 1]);
    w[i] = m.warp(c[i]).v / (x[i + 1] - x[i]);
  }
  auto fval = [&](double r) { return m.warp(r).v; };
  std::vector<double> diag(N), mass(N);
  for (std::size_t i = 0; i < N; ++i) {
    double left = i == 0 ? x[0] : c[i - 1];
    double right = i + 1 == N ? x[N - 1] : c[i];
    double mi = 0.0;
    if (x[i] > left) mi += gauss4(fval, left, x[i]);
    if (right > x[i]) mi += gauss4(fval, x[i], right);
    mass[i] = mi;
    double dl = m.warp(left, Side::right).d1;
    double dr = m.warp(right, Side::left).d1;
    diag[i] = beta * (dl - dr) + (i > 0 ? w[i - 1] : 0.0) + (i + 1 < N ? w[i] : 0.0);
  }
  for (std::size_t i = p.first; i <= p.last; ++i) {
    p.diag.push_back(diag[i]);
    p.mass.push_back(mass[i]);
    if (i < p.last) p.off.push_back(-w[i]);
  }
  return p;
}

namespace {

std::size_t sturm_count(const std::vector<double>& b, const std::vector<double>& e2,
                        double sigma) {
  std::size_t count = 0;
  double d = b[0] - sigma;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (d == 0.0) d = 1e-300;
    d = (b[i] - sigma) - e2[i - 1] / d;
    if (d < 0.0) ++count;
  }
  return count;
}

// Solves (T - sigma I) y = rhs for symmetric tridiagonal T.
std::vector<double> shifted_solve(const std::vector<double>& b, const std::vector<double>& e,
                                  double sigma, std::vector<double> rhs) {
  const std::size_t n = b.size();
  std::vector<double> d(n), u(n);
  d[0] = b[0] - sigma;
  for (std::size_t i = 1; i < n; ++i) {
    if (d[i - 1] == 0.0) d[i - 1] = 1e-300;
    double l = e[i - 1] / d[i - 1];
    d[i] = b[i] - sigma - l * e[i - 1];
    rhs[i] -= l * rhs[i - 1];
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  u[n - 1] = rhs[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) u[i] = (rhs[i] - e[i] * u[i + 1]) / d[i];
  return u;
}

}  // namespace

std::pair<double, std::vector<double>> lowest_eigenpair(const Pencil& p, double* residual) {
  const std::size_t n = p.diag.size();
  if (n < 2) throw InputError("pencil has fewer than 2 unknowns");
  std::vector<double> b(n), e(n - 1), e2(n - 1), sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p.mass[i] > 0.0)) throw NumericalError("non-positive lumped mass");
    sq[i] = std::sqrt(p.mass[i]);
    b[i] = p.diag[i] / p.mass[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    e[i] = p.off[i] / (sq[i] * sq[i + 1]);
    e2[i] = e[i] * e[i];
  }
  double lo = b[0], hi = b[0];
  for (std::size_t i = 0; i < n; ++i) {
    double rad = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, b[i] - rad);
    hi = std::max(hi, b[i] + rad);
  }
  double width = hi - lo;
  lo -= 1e-12 * std::max(1.0, width);
  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= 4e-16 * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
    double mid = 0.5 * (lo + hi);
    if (sturm_count(b, e2, mid) >= 1) hi = mid; else lo = mid;
  }
  std::vector<double> x(n, 1.0);
  for (int it = 0; it < 3; ++it) {
    x = shifted_solve(b, e, lo, x);
    double nrm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    for (double& v : x) v /= nrm;
  }
  auto apply = [&](const std::vector<double>& v) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = b[i] * v[i] + (i > 0 ? e[i - 1] * v[i - 1] : 0.0) +
             (i + 1 < n ? e[i] * v[i + 1] : 0.0);
    }
    return y;
  };
  auto Bx = apply(x);
  double lambda = std::inner_product(x.begin(), x.end(), Bx.begin(), 0.0);
  if (residual) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += (Bx[i] - lambda * x[i]) * (Bx[i] - lambda * x[i]);
    *residual = std::sqrt(r2);
  }
  std::vector<double> v(n);
  double norm = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = x[i] / sq[i];
    norm += p.mass[i] * v[i] * v[i];
    sum += v[i];
  }
  double s = (sum < 0.0 ? -1.0 : 1.0) / std::sqrt(2.0 * kPi * norm);
  for (double& t : v) t *= s;
  return {lambda, v};
}

namespace {

// One-sided second-order slope at the first node of (x0,v0),(x1,v1),(x2,v2).
double end_slope(double x0, double x1, double x2, double v0, double v1, double v2) {
  double h1 = x1 - x0, h2 = x2 - x0;
  return (v1 * h2 * h2 - v2 * h1 * h1 - v0 * (h2 * h2 - h1 * h1)) / (h1 * h2 * (h2 - h1));
}

}  // namespace

SpectralResult first_eigenvalue(const WarpedMetric& m, const SpectralParams& params,
                                Boundary bc, std::optional<std::pair<double, double>> domain) {
  if (!(params.beta > 0.0)) throw InputError("beta must be positive");
  if (params.n < 16) throw InputError("grid too coarse: need n >= 16");
  auto [lo, hi] = resolve_domain(m, bc, domain);
  auto x = m.grid(params.n, lo, hi);
  Pencil p = assemble_pencil(m, params.beta, x, bc);
  SpectralResult out;
  out.bc = bc;
  out.lo = lo;
  out.hi = hi;
  auto [lambda, v] = lowest_eigenpair(p, &out.residual);
  out.lambda1 = lambda;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!(v[k] > 0.0)) {
      std::ostringstream os;
      os << "first eigenfunction is not positive at r = " << x[p.first + k]
         << "; discretization fault";
      throw NumericalError(os.str());
    }
  }
  std::vector<double> values(x.size(), 0.0);
  std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(p.first));
  const std::size_t N = x.size();
  auto slope_at = [&](bool start) -> double {
    double r = start ? x.front() : x.back();
    bool dirichlet_end = bc == Boundary::dirichlet && !is_pole(m, r);
    if (!dirichlet_end) return 0.0;
    if (start) return end_slope(x[0], x[1], x[2], values[0], values[1], values[2]);
    return end_slope(x[N - 1], x[N - 2], x[N - 3], values[N - 1], values[N - 2], values[N - 3]);
  };
  out.eigenfunction = RadialField::sampled(x, values, slope_at(true), slope_at(false),
                                           FieldSign::positive, m.breakpoints());
  out.nodes = std::move(x);
  out.values = std::move(values);
  return out;
}

double certified_lambda1(const WarpedMetric& m, const SpectralParams& params, Boundary bc,
                         std::optional<std::pair<double, double>> domain) {
  double a = first_eigenvalue(m, params, bc, domain).lambda1;
  SpectralParams fine = params;
  fine.n = 2 * params.n;
  double b = first_eigenvalue(m, fine, bc, domain).lambda1;
  return std::min(a, b) - std::abs(b - a);
}

double rayleigh_quotient(const WarpedMetric& m, double beta, const RadialField& field,
                         Boundary bc, std::optional<std::pair<double, double>> domain) {
  auto [lo, hi] = resolve_domain(m, bc, domain);
  if (field.is_sampled()) {
    const auto& x = field.nodes();
    const auto& v = field.samples();
    Pencil p = assemble_pencil(m, beta, x, bc);
    double scale = 0.0;
    for (double t : v) scale = std::max(scale, std::abs(t));
    if (p.first > 0 && std::abs(v.front()) > 1e-12 * scale) {
      throw InputError("dirichlet field must vanish at the domain ends");
    }
    if (p.last + 1 < x.size() && std::abs(v.back()) > 1e-12 * scale) {
      throw InputError("dirichlet field must vanish at the domain ends");
    }
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < p.diag.size(); ++k) {
      double vk = v[p.first + k];
      num += p.diag[k] * vk * vk;
      if (k + 1 < p.diag.size()) num += 2.0 * p.off[k] * vk * v[p.first + k + 1];
      den += p.mass[k] * vk * vk;
    }
    if (!(den > 0.0)) throw InputError("field has zero norm");
    return num / den;
  }
  if (bc == Boundary::dirichlet) {
    double s = std::max({std::abs(field(lo).v), std::abs(field(hi, Side::left).v)});
    double ref = std::abs(field(0.5 * (lo + hi)).v);
    bool ok_lo = is_pole(m, lo) || std::abs(field(lo).v) <= 1e-10 * std::max(ref, 1e-300);
    bool ok_hi = is_pole(m, hi) ||
                 std::abs(field(hi, Side::left).v) <= 1e-10 * std::max(ref, 1e-300);
    if (!(ok_lo && ok_hi) && s > 0.0) {
      throw InputError("dirichlet field must vanish at the domain ends");
    }
  }
  auto x = m.grid(2048, lo, hi);
  auto num = cell_integrals(Exec::serial, x, [&](double r) {
    Jet f = m.warp(r), p = field(r);
    return p.d1 * p.d1 * f.v - beta * f.d2 * p.v * p.v;
  });
  auto den = cell_integrals(Exec::serial, x, [&](double r) {
    double p = field(r).v;
    return p * p * m.warp(r).v;
  });
  double N = std::accumulate(num.begin(), num.end(), 0.0);
  double D = std::accumulate(den.begin(), den.end(), 0.0);
  if (!(D > 0.0)) throw InputError("field has zero norm");
  return N / D;
}

PerturbationResult eigenvalue_perturbation(const WarpedMetric& m, double beta,
                                           const RadialField& h, double t_step, std::size_t n) {
  if (!(t_step > 0.0)) throw InputError("t_step must be positive");
  if (m.topology() != Topology::sphere) throw InputError("perturbation needs a closed sphere");
  auto scaled = [&](double t) {
    return RadialField::analytic_sided([h, t](double r, Side s) {
      Jet j = h(r, s);
      return Jet{t * j.v, t * j.d1, t * j.d2};
    });
  };
  SpectralParams sp{beta, n, 1e-9};
  WarpedMetric g0 = conformal_warp(m, scaled(0.0));
  SpectralResult base = first_eigenvalue(g0, sp, Boundary::closed);
  double lp = first_eigenvalue(conformal_warp(m, scaled(t_step)), sp, Boundary::closed).lambda1;
  double lm = first_eigenvalue(conformal_warp(m, scaled(-t_step)), sp, Boundary::closed).lambda1;

  Pencil p = assemble_pencil(g0, beta, base.nodes, Boundary::closed);
  double lap = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    double r = base.nodes[i];
    Side side = i + 1 == base.nodes.size() ? Side::left : Side::right;
    Jet hj = h(r, side);
    double phi2 = base.values[i] * base.values[i];
    lap += p.mass[i] * radial_laplacian(m, hj, r) * phi2;
    mean += p.mass[i] * hj.v * phi2;
  }
  lap *= 2.0 * kPi;
  mean *= 2.0 * kPi;
  PerturbationResult out;
  out.lambda1 = base.lambda1;
  out.analytic = -beta * lap;
  out.analytic_full = out.analytic - 2.0 * base.lambda1 * mean;
  out.finite_diff = (lp - base.lambda1) / t_step;
  out.central_diff = (lp - lm) / (2.0 * t_step);
  return out;
}

double supersolution_residual(const WarpedMetric& m, double beta, double lambda,
                              const RadialField& phi, std::size_t n,
                              std::optional<std::pair<double, double>> domain, bool relative) {
  double L = m.length();
  auto [lo, hi] = domain.value_or(std::pair<double, double>{0.0, L});
  auto x = m.grid(n, lo, hi);
  auto bps = m.breakpoints();
  double worst = -std::numeric_limits<double>::infinity();
  auto pointwise = [&](double r, Side side) {
    Jet f = m.warp(r, side), p = phi(r, side);
    if (!(f.v > 0.0)) throw NumericalError("degenerate profile in residual");
    double a = p.d2, b = f.d1 / f.v * p.d1, c = beta * f.d2 / f.v * p.v, d = lambda * p.v;
    double res = a + b + c + d;
    // The floor φ/f² keeps flat stretches with constant φ from reading as noise.
    if (relative) res /= (std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d) + p.v / (f.v * f.v));
    return res;
  };
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    double r = x[i];
    bool bp = std::find(bps.begin(), bps.end(), r) != bps.end();
    worst = std::max(worst, pointwise(r, Side::right));
    if (bp) {
      worst = std::max(worst, pointwise(r, Side::left));
      // [φ'] + β[f']φ/f <= 0: a downward kink of f carries positive curvature.
      double jl = phi(r, Side::left).d1, jr = phi(r, Side::right).d1;
      Jet fl = m.warp(r, Side::left), fr = m.warp(r, Side::right);
      double pv = phi(r, Side::right).v;
      double kink = beta * (fr.d1 - fl.d1) * pv / fr.v;
      double jump = jr - jl + kink;
      if (relative) jump /= (std::abs(jl) + std::abs(jr) + std::abs(kink) + pv / fr.v);
      if (jump > 0.0) worst = std::max(worst, jump);
    }
  }
  return worst;
}

}  // namespace sclab
