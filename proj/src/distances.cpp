#include "sclab/distances.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace sclab {

namespace {


struct Integrals {
  double theta = 0.0;
  double length = 0.0;
  bool valid = true;
};

// ∫_a^b c/(f√(f²-c²)) and ∫_a^b f/√(f²-c²), with square-root substitutions at
// both ends so a turning point at either end is integrable.
Integrals clairaut_integrals(const WarpedMetric& m, double a, double b, double c,
                             bool want_length) {
  Integrals out;
  if (!(b > a)) return out;
  bool bad = false;
  const Jet ja = m.warp(a, Side::right), jb = m.warp(b, Side::left);
  // Within a tiny offset of an end, r itself rounds to the end; expand instead.
  const double near = std::min(1e-5 * (b - a), 1e-6);
  auto eval = [&](double r, double off, const Jet& je, double sgn, bool length) {
    double f, d;
    if (off < near) {
      double df = sgn * je.d1 * off + 0.5 * je.d2 * off * off;
      f = je.v + df;
      d = (je.v - c) + df;
    } else {
      f = m.warp(r).v;
      d = f - c;
    }
    if (!(d > 0.0)) {
      bad = true;
      return 0.0;
    }
    double root = std::sqrt(d * (f + c));
    return length ? f / root : c / (f * root);
  };
  double mid = 0.5 * (a + b);
  double wl = std::sqrt(mid - a), wr = std::sqrt(b - mid);
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto run = [&](bool length) {
    auto left = [&](double w) { return 2.0 * w * eval(a + w * w, w * w, ja, 1.0, length); };
    auto right = [&](double w) { return 2.0 * w * eval(b - w * w, w * w, jb, -1.0, length); };
    return GK::integrate(left, 0.0, wl, 10, 1e-10) + GK::integrate(right, 0.0, wr, 10, 1e-10);
  };
  out.theta = c == 0.0 ? 0.0 : run(false);
  if (want_length) out.length = c == 0.0 ? b - a : run(true);
  out.valid = !bad;
  return out;
}

// Minimum of f on [a, b], sampled then refined by golden section.
double min_warp(const WarpedMetric& m, double a, double b) {
  const int N = 128;
  double best = kInf;
  int ib = 0;
  for (int i = 0; i <= N; ++i) {
    double r = a + (b - a) * i / N;
    double v = m.warp(r, i == N ? Side::left : Side::right).v;
    if (v < best) {
      best = v;
      ib = i;
    }
  }
  if (ib > 0 && ib < N) {
    double lo = a + (b - a) * (ib - 1) / N, hi = a + (b - a) * (ib + 1) / N;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      if (m.warp(x1).v < m.warp(x2).v) hi = x2; else lo = x1;
    }
    best = std::min(best, m.warp(0.5 * (lo + hi)).v);
  }
  return best;
}

template <class F>
std::optional<double> solve_root(F&& g, double lo, double hi) {
  double glo = g(lo), ghi = g(hi);
  if (!std::isfinite(glo) || !std::isfinite(ghi) || glo * ghi > 0.0) return std::nullopt;
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  boost::uintmax_t iters = 100;
  auto res = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(48), iters);
  return 0.5 * (res.first + res.second);
}

struct Candidate {
  double length = kInf;
  std::string route;
};

void consider(Candidate& best, double len, const char* route) {
  if (std::isfinite(len) && len < best.length) {
    best.length = len;
    best.route = route;
  }
}

// Geodesics that turn once at r*, below both endpoints or above both. The
// family joins the monotone one at r* = rp (rq) and the pole path at a pole.
void turning_family(const WarpedMetric& m, double rp, double rq, double dtheta, bool below,
                    Candidate& best, bool& flagged) {
  const double L = m.length();
  double lo = below ? 0.0 : rq;
  double hi = below ? rp : L;
  if (!(hi - lo > 1e-14 * L)) return;
  const bool pole = below ? m.profile().pole_at_start() : m.profile().pole_at_end();
  const double pole_r = below ? 0.0 : L;
  const double join_r = below ? rp : rq;
  const int N = 40;
  std::vector<double> rs(N + 1);
  for (int i = 0; i <= N; ++i) {
    double u = static_cast<double>(i) / N;
    double w = 0.5 * (1.0 - std::cos(kPi * u));
    w = 0.5 * (1.0 - std::cos(kPi * w));  // cluster harder at both ends
    rs[i] = i == 0 ? lo : i == N ? hi : lo + (hi - lo) * w;
  }
  double path_min = rq > rp ? min_warp(m, rp, rq) : m.warp(rp).v;
  auto theta_of = [&](double rstar, bool* valid) -> std::pair<double, double> {
    if (valid) *valid = true;
    if (pole && rstar == pole_r) {
      return {kPi, below ? rp + rq : 2.0 * L - rp - rq};
    }
    double c = m.warp(rstar, rstar == L ? Side::left : Side::right).v;
    Integrals i1, i2;
    if (below) {
      i1 = clairaut_integrals(m, rstar, rp, c, true);
      i2 = clairaut_integrals(m, rstar, rq, c, true);
    } else {
      i1 = clairaut_integrals(m, rp, rstar, c, true);
      i2 = clairaut_integrals(m, rq, rstar, c, true);
    }
    if (valid) *valid = i1.valid && i2.valid;
    return {i1.theta + i2.theta, i1.length + i2.length};
  };
  // Admissible when f(r*) stays at or below f along the rest of the path.
  std::vector<char> ok(N + 1, 0);
  double run = path_min;
  for (int k = 0; k <= N; ++k) {
    int i = below ? N - k : k;
    double r = rs[i];
    double f = m.warp(r, r == L ? Side::left : Side::right).v;
    bool at_join = r == join_r;
    ok[i] = (f <= run && (f > 0.0 || (pole && r == pole_r))) || (at_join && f <= path_min);
    run = std::min(run, f);
  }
  std::vector<double> th(N + 1, kInf);
  for (int i = 0; i <= N; ++i) {
    if (!ok[i]) continue;
    bool valid = true;
    double t = theta_of(rs[i], &valid).first;
    if (valid) th[i] = t;
  }
  for (int i = 0; i < N; ++i) {
    if (!std::isfinite(th[i]) || !std::isfinite(th[i + 1])) continue;
    double g0 = th[i] - dtheta, g1 = th[i + 1] - dtheta;
    if (g0 * g1 > 0.0) continue;
    auto root = solve_root([&](double r) { return theta_of(r, nullptr).first - dtheta; },
                           rs[i], rs[i + 1]);
    if (!root) {
      flagged = true;
      continue;
    }
    bool valid = true;
    auto tl = theta_of(*root, &valid);
    if (valid) consider(best, tl.second, below ? "turn_below" : "turn_above");
  }
}

}  // namespace

DistanceResult geodesic_distance_detail(const WarpedMetric& m, SurfacePoint p, SurfacePoint q) {
  const double L = m.length();
  for (auto* s : {&p, &q}) {
    if (!(s->r >= 0.0 && s->r <= L)) throw InputError("point outside the surface");
  }
  if (p.r > q.r) std::swap(p, q);
  double dtheta = std::fmod(std::abs(q.theta - p.theta), 2.0 * kPi);
  if (dtheta > kPi) dtheta = 2.0 * kPi - dtheta;
  const bool pole0 = m.profile().pole_at_start(), pole1 = m.profile().pole_at_end();
  const double rp = p.r, rq = q.r;

  DistanceResult out;
  if ((pole0 && rp == 0.0) || (pole1 && rq == L)) {
    out.length = rq - rp;
    out.route = "meridian";
    if (pole0 && rp == 0.0 && pole1 && rq == L) out.length = L;
    return out;
  }
  Candidate best;
  // Upper bounds that are always realizable.
  double fp = m.warp(rp).v, fq = m.warp(rq, rq == L ? Side::left : Side::right).v;
  consider(best, std::min(fp, fq) * dtheta + (rq - rp), "parallel_meridian");
  if (pole0) consider(best, rp + rq, "via_pole_0");
  if (pole1) consider(best, 2.0 * L - rp - rq, "via_pole_L");
  if (dtheta == 0.0) {
    consider(best, rq - rp, "meridian");
    out.length = best.length;
    out.route = best.route;
    return out;
  }
  bool flagged = false;
  if (rq > rp) {
    double cmax = min_warp(m, rp, rq);
    auto g = [&](double c) {
      auto i = clairaut_integrals(m, rp, rq, c, false);
      return i.valid ? i.theta - dtheta : kInf;
    };
    double chi = cmax * (1.0 - 1e-13);
    double ghi = g(chi);
    if (std::isfinite(ghi) && ghi >= 0.0) {
      auto c = solve_root(g, 0.0, chi);
      if (c) {
        auto i = clairaut_integrals(m, rp, rq, *c, true);
        if (i.valid) consider(best, i.length, "monotone");
      } else {
        flagged = true;
      }
    }
  }
  turning_family(m, rp, rq, dtheta, true, best, flagged);
  turning_family(m, rp, rq, dtheta, false, best, flagged);
  if (fp == 0.0 || fq == 0.0) flagged = flagged || !std::isfinite(best.length);
  out.length = best.length;
  out.route = best.route;
  out.flagged = flagged;
  if (flagged) {
    double dj = dijkstra_distance(m, p, q);
    if (dj < out.length) {
      out.length = dj;
      out.route = "dijkstra_fallback";
    }
  }
  return out;
}

double geodesic_distance(const WarpedMetric& m, SurfacePoint p, SurfacePoint q) {
  return geodesic_distance_detail(m, p, q).length;
}

std::vector<double> geodesic_distances(
    Exec ex, const WarpedMetric& m, const std::vector<std::pair<SurfacePoint, SurfacePoint>>& pairs) {
  return map_indices(ex, pairs.size(), [&](std::size_t i) {
    return geodesic_distance(m, pairs[i].first, pairs[i].second);
  });
}

// ---------------------------------------------------------------------------

GridDijkstra::GridDijkstra(const WarpedMetric& m, std::size_t n_r_per_piece, std::size_t n_theta,
                           int stencil)
    : m_(m), nt_(n_theta) {
  if (n_theta < 8 || stencil < 1) throw InputError("dijkstra grid too small");
  if (n_r_per_piece == 0) {
    n_r_per_piece = std::max<std::size_t>(16, 512 / m.profile().pieces().size() + 1);
  }
  r_ = m.grid(n_r_per_piece);
  pole_lo_ = m.profile().pole_at_start();
  pole_hi_ = m.profile().pole_at_end();
  for (int di = -stencil; di <= stencil; ++di) {
    for (int dj = -stencil; dj <= stencil; ++dj) {
      if ((di == 0 && dj == 0) || std::gcd(std::abs(di), std::abs(dj)) != 1) continue;
      offsets_.emplace_back(di, dj);
    }
  }
  const double dth = 2.0 * kPi / static_cast<double>(nt_);
  const std::size_t no = offsets_.size(), nr = r_.size();
  edge_.assign(nr * no, kInf);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t o = 0; o < no; ++o) {
      auto [di, dj] = offsets_[o];
      long t = static_cast<long>(i) + di;
      if (t < 0 || t >= static_cast<long>(nr)) continue;
      double a = r_[i], b = r_[static_cast<std::size_t>(t)], dr = b - a;
      double dt = dj * dth, s = 0.0;
      const int K = 8;
      for (int k = 0; k <= K; ++k) {
        double r = a + dr * k / K;
        Side side = (dr > 0.0) == (k == K) ? Side::left : Side::right;
        double f = m_.warp(r, side).v;
        double w = (k == 0 || k == K) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        s += w * std::sqrt(dr * dr + f * f * dt * dt);
      }
      edge_[i * no + o] = s / (3.0 * K);
    }
  }
}

std::size_t GridDijkstra::nearest_r(double r) const {
  auto it = std::lower_bound(r_.begin(), r_.end(), r);
  if (it == r_.end()) return r_.size() - 1;
  std::size_t i = static_cast<std::size_t>(it - r_.begin());
  if (i > 0 && r - r_[i - 1] < r_[i] - r) --i;
  return i;
}

std::size_t GridDijkstra::nearest_theta(double t) const {
  double u = std::fmod(t, 2.0 * kPi);
  if (u < 0) u += 2.0 * kPi;
  auto j = static_cast<std::size_t>(std::llround(u / (2.0 * kPi) * static_cast<double>(nt_)));
  return j % nt_;
}

void GridDijkstra::solve(SurfacePoint p) {
  const std::size_t nr = r_.size(), no = offsets_.size();
  dist_.assign(nr * nt_, kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const double dth = 2.0 * kPi / static_cast<double>(nt_);
  // Seed the nodes around the source with the local flat distance.
  std::size_t ic = nearest_r(p.r), jc = nearest_theta(p.theta);
  for (long di = -1; di <= 1; ++di) {
    long ii = static_cast<long>(ic) + di;
    if (ii < 0 || ii >= static_cast<long>(nr)) continue;
    for (long dj = -1; dj <= 1; ++dj) {
      std::size_t jj = (jc + nt_ + static_cast<std::size_t>(dj + static_cast<long>(nt_))) % nt_;
      double r = r_[static_cast<std::size_t>(ii)];
      double ang = std::remainder(static_cast<double>(jj) * dth - p.theta, 2.0 * kPi);
      double fm = m_.warp(0.5 * (r + p.r)).v;
      double d = std::sqrt((r - p.r) * (r - p.r) + fm * fm * ang * ang);
      std::size_t id = index(static_cast<std::size_t>(ii), jj);
      if (d < dist_[id]) {
        dist_[id] = d;
        pq.push({d, id});
      }
    }
  }
  while (!pq.empty()) {
    auto [d, id] = pq.top();
    pq.pop();
    if (d > dist_[id]) continue;
    std::size_t i = id / nt_, j = id % nt_;
    bool pole_row = (i == 0 && pole_lo_) || (i + 1 == nr && pole_hi_);
    if (pole_row) {
      for (std::size_t jj = 0; jj < nt_; ++jj) {
        std::size_t t = index(i, jj);
        if (d < dist_[t]) {
          dist_[t] = d;
          pq.push({d, t});
        }
      }
    }
    for (std::size_t o = 0; o < no; ++o) {
      double e = edge_[i * no + o];
      if (!std::isfinite(e)) continue;
      auto [di, dj] = offsets_[o];
      std::size_t ti = static_cast<std::size_t>(static_cast<long>(i) + di);
      std::size_t tj = (j + nt_ + static_cast<std::size_t>(dj + static_cast<int>(nt_))) % nt_;
      std::size_t t = index(ti, tj);
      if (d + e < dist_[t]) {
        dist_[t] = d + e;
        pq.push({d + e, t});
      }
    }
  }
}

double GridDijkstra::distance_to(SurfacePoint q) const {
  if (dist_.empty()) throw InputError("dijkstra: solve() first");
  const std::size_t nr = r_.size();
  const double dth = 2.0 * kPi / static_cast<double>(nt_);
  std::size_t ic = nearest_r(q.r), jc = nearest_theta(q.theta);
  double best = kInf;
  for (long di = -1; di <= 1; ++di) {
    long ii = static_cast<long>(ic) + di;
    if (ii < 0 || ii >= static_cast<long>(nr)) continue;
    for (long dj = -1; dj <= 1; ++dj) {
      std::size_t jj = (jc + nt_ + static_cast<std::size_t>(dj + static_cast<long>(nt_))) % nt_;
      double r = r_[static_cast<std::size_t>(ii)];
      double ang = std::remainder(static_cast<double>(jj) * dth - q.theta, 2.0 * kPi);
      double fm = m_.warp(0.5 * (r + q.r)).v;
      double d = std::sqrt((r - q.r) * (r - q.r) + fm * fm * ang * ang);
      best = std::min(best, dist_[index(static_cast<std::size_t>(ii), jj)] + d);
    }
  }
  return best;
}

double dijkstra_distance(const WarpedMetric& m, SurfacePoint p, SurfacePoint q,
                         std::size_t n_r_per_piece, std::size_t n_theta, int stencil) {
  GridDijkstra g(m, n_r_per_piece, n_theta, stencil);
  g.solve(p);
  return g.distance_to(q);
}

// ---------------------------------------------------------------------------

DiameterResult diameter(const WarpedMetric& m, std::size_t samples, Exec ex) {
  const double L = m.length();
  DiameterResult best;
  best.p = {0.0, 0.0};
  best.q = {L, 0.0};
  best.diam = m.topology() == Topology::sphere ? L : 0.0;
  std::vector<double> rs;
  for (std::size_t i = 0; i <= samples; ++i) rs.push_back(L * static_cast<double>(i) / samples);
  for (double b : m.breakpoints()) rs.push_back(b);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  // Opposite meridians; on a sphere pairs on one meridian never beat the poles.
  std::vector<double> offsets = {kPi};
  if (m.topology() != Topology::sphere) offsets.push_back(0.0);
  // Cheap realizable upper bounds prune pairs that cannot beat the current best;
  // with two poles every pair is bounded by L through the nearer pole.
  auto upper = [&](double a, double b, double off) {
    double ub = std::abs(b - a) + off * std::min(m.warp(a).v, m.warp(b, b == L ? Side::left
                                                                              : Side::right).v);
    if (m.profile().pole_at_start()) ub = std::min(ub, a + b);
    if (m.profile().pole_at_end()) ub = std::min(ub, 2.0 * L - a - b);
    return ub;
  };
  std::vector<std::pair<SurfacePoint, SurfacePoint>> pairs;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = i; j < rs.size(); ++j) {
      for (double off : offsets) {
        if (upper(rs[i], rs[j], off) <= best.diam) continue;
        pairs.push_back({{rs[i], 0.0}, {rs[j], off}});
      }
    }
  }
  auto d = geodesic_distances(ex, m, pairs);
  std::size_t arg = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] > d[arg]) arg = k;
  }
  if (!d.empty() && d[arg] > best.diam) {
    best.diam = d[arg];
    best.p = pairs[arg].first;
    best.q = pairs[arg].second;
  }
  if (pairs.empty()) return best;
  // Coordinate-wise golden refinement around the best pair.
  double h = L / static_cast<double>(samples);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int pass = 0; pass < 2; ++pass) {
    for (int which = 0; which < 2; ++which) {
      SurfacePoint& moving = which == 0 ? best.p : best.q;
      SurfacePoint other = which == 0 ? best.q : best.p;
      double lo = std::max(0.0, moving.r - h), hi = std::min(L, moving.r + h);
      auto val = [&](double r) {
        return geodesic_distance(m, {r, moving.theta}, other);
      };
      for (int it = 0; it < 30; ++it) {
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        if (val(x1) > val(x2)) hi = x2; else lo = x1;
      }
      double r = 0.5 * (lo + hi), v = val(r);
      if (v > best.diam) {
        best.diam = v;
        moving.r = r;
      }
    }
    h *= 0.25;
  }
  return best;
}

// ---------------------------------------------------------------------------

IsoScan isoperimetric_scan(const WarpedMetric& m, std::size_t n, Exec ex) {
  auto x = m.grid(n);
  auto cells = cell_areas(ex, m, x);
  auto pre = prefix_sum(cells);
  IsoScan scan;
  scan.total_area = pre.back();
  const std::size_t N = x.size();
  scan.rows.resize(N - 2);
  for_each_index(ex, N - 2, [&](std::size_t k) {
    std::size_t i = k + 1;
    IsoRow& row = scan.rows[k];
    row.r = x[i];
    row.perimeter = 2.0 * kPi * m.warp(x[i]).v;
    row.area_in = pre[i];
    row.area_out = scan.total_area - pre[i];
    double a = std::min(row.area_in, row.area_out);
    row.in_cand = row.perimeter * row.perimeter / a;
    row.ch_cand = row.perimeter / a;
  });
  if (scan.rows.empty()) throw NumericalError("isoperimetric scan is empty");
  auto refine = [&](bool use_in) {
    std::size_t arg = 0;
    for (std::size_t k = 0; k < scan.rows.size(); ++k) {
      double v = use_in ? scan.rows[k].in_cand : scan.rows[k].ch_cand;
      double b = use_in ? scan.rows[arg].in_cand : scan.rows[arg].ch_cand;
      if (v < b) arg = k;
    }
    std::size_t i = arg + 1;
    double lo = x[i - 1], hi = x[i + 1], base = pre[i - 1];
    auto cand = [&](double r) {
      double in = base;
      if (r > lo) {
        in += 2.0 * kPi * cell_integrals(Exec::serial, {lo, r}, [&](double s) {
          return m.warp(s).v;
        })[0];
      }
      double a = std::min(in, scan.total_area - in);
      double per = 2.0 * kPi * m.warp(r).v;
      return use_in ? per * per / a : per / a;
    };
    // The two cells can straddle a breakpoint; refine on each side.
    double best_v = use_in ? scan.rows[arg].in_cand : scan.rows[arg].ch_cand, best_r = x[i];
    for (auto [a, b] : {std::pair{lo, x[i]}, std::pair{x[i], hi}}) {
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double l = a, h = b;
      for (int it = 0; it < 60; ++it) {
        double x1 = h - g * (h - l), x2 = l + g * (h - l);
        if (cand(x1) < cand(x2)) h = x2; else l = x1;
      }
      double r = 0.5 * (l + h), v = cand(r);
      if (v < best_v) {
        best_v = v;
        best_r = r;
      }
    }
    return std::pair{best_v, best_r};
  };
  std::tie(scan.in_ub, scan.r_in) = refine(true);
  std::tie(scan.ch_ub, scan.r_ch) = refine(false);
  return scan;
}

std::string iso_scan_csv(const IsoScan& scan) {
  std::ostringstream os;
  os.precision(12);
  os << "r,perimeter,area_in,area_out,IN_cand,Ch_cand\n";
  for (const auto& r : scan.rows) {
    os << r.r << ',' << r.perimeter << ',' << r.area_in << ',' << r.area_out << ','
       << r.in_cand << ',' << r.ch_cand << '\n';
  }
  return os.str();
}

double min_curvature(const WarpedMetric& m, std::size_t n) {
  double k = kInf;
  for (double r : m.grid(n)) k = std::min(k, gauss_curvature(m, r));
  for (double b : m.breakpoints()) {
    if (b > 0.0 && b < m.length()) {
      Jet l = m.warp(b, Side::left);
      k = std::min(k, -l.d2 / l.v);
    }
  }
  return k;
}

AuditRecord burago_zalgaller_audit(const WarpedMetric& m) {
  if (min_curvature(m) < -1e-9) {
    return skipped("burago_zalgaller", "Ch*diam >= 1 and IN*diam^2 >= |S|",
                   "curvature is negative somewhere");
  }
  return burago_zalgaller_audit(m, isoperimetric_scan(m), diameter(m).diam);
}

AuditRecord burago_zalgaller_audit(const WarpedMetric& m, const IsoScan& scan, double diam) {
  const std::string stmt = "Ch*diam >= 1 and IN*diam^2 >= |S|";
  if (min_curvature(m) < -1e-9) {
    return skipped("burago_zalgaller", stmt, "curvature is negative somewhere");
  }
  double a = scan.ch_ub * diam;
  double b = scan.in_ub * diam * diam / scan.total_area;
  auto rec = check_le("burago_zalgaller", stmt, 1.0, std::min(a, b), 1e-9);
  std::ostringstream os;
  os.precision(8);
  os << "Ch_ub*diam=" << a << " IN_ub*diam^2/|S|=" << b;
  rec.note = os.str();
  rec.discretization["scan_rows"] = static_cast<double>(scan.rows.size());
  return rec;
}

}  // namespace sclab
