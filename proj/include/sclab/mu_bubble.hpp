#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sclab/audit.hpp"
#include "sclab/warped_geometry.hpp"

namespace sclab {

// u = φ^{1/β}, which turns Δφ <= (βK - λ)φ into
// Δu <= (K - λ/β)u + (1 - β)|∇u|²/u.
RadialField weight_from_supersolution(const RadialField& phi, double beta);

// Relative residual of the weight inequality above, max over interior nodes.
double weight_residual(const WarpedMetric& m, double beta, double lambda, const RadialField& u,
                       std::size_t n = 2048);

// Second variation of ∫u dl along the meridian segment, tested with
// φ = u^{-1/2} ψ, ψ = sin(πt/L). Lines are expected nondecreasing.
struct GeodesicChain {
  double length = 0.0;
  double bound = 0.0;  // 2πβ/√(λ(4β - 1))
  std::array<double, 4> lines{};
  int violated_line = -1;  // first k with lines[k] > lines[k+1] beyond tolerance
  double weight_residual = 0.0;
};

GeodesicChain weighted_geodesic_chain(const WarpedMetric& m, double beta, double lambda,
                                      const RadialField& u,
                                      std::optional<std::pair<double, double>> segment = {},
                                      std::size_t n = 4096);

// Refuses β <= 1/4 and λ <= 0. Passes when the chain holds and L <= bound.
AuditRecord weighted_geodesic_audit(const WarpedMetric& m, double beta, double lambda,
                                    const RadialField& u,
                                    std::optional<std::pair<double, double>> segment = {},
                                    std::size_t n = 4096);

// Candidate sets are {r < t}. Ω+ = {r < omega_plus}, Ω- = {r > omega_minus},
// Ω0 = {r < omega_zero}; an empty obstacle is omega_plus = 0 or omega_minus = L.
struct BubbleProblem {
  WarpedMetric metric;
  RadialField h;
  RadialField u;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double omega_zero = 0.0;
  std::size_t n = 4096;
  double h_max = 1e6;  // clamp, and the value used within 2 cells of a nonempty obstacle

  BubbleProblem(WarpedMetric m, RadialField h, RadialField u, double omega_plus,
                double omega_minus, double omega_zero);
};

// Tabulated energy E(t) = 2π u(t) f(t) - ∫_{t0}^{t} h u 2πf dr on the band.
class BubbleEnergy {
 public:
  explicit BubbleEnergy(const BubbleProblem& p);

  double operator()(double t) const;
  double clamped_h(double r) const;
  // Within 2 cells of a nonempty obstacle, where h is pinned at ±h_max.
  bool in_buffer(double r) const { return buffer_side(r) != 0; }
  const std::vector<double>& nodes() const { return x_; }

 private:
  int buffer_side(double r) const;  // +1 near Ω+, -1 near Ω-, else 0
  double partial(std::size_t i, double t) const;  // ∫_{x_i}^{t}

  const BubbleProblem* p_;
  std::vector<double> x_;
  std::vector<double> cum_;  // ∫_{x_0}^{x_i}
  double g0_ = 0.0;          // ∫_{x_0}^{t0}
};

// Throws InputError for t outside [omega_plus, omega_minus].
double bubble_energy(const BubbleProblem& p, double t);

struct BubbleSolution {
  double t = 0.0;
  double energy = 0.0;
  double residual = 0.0;  // |f'/f - h + u'/u| at t
  bool at_boundary = false;  // at a band end or inside an obstacle buffer
  std::size_t near_ties = 0;  // grid nodes within the tie tolerance of the minimum
};

// Grid scan then Brent refinement to |Δt| <= 1e-8 L. Ties (relative 1e-10) go
// to the smaller t.
BubbleSolution solve_bubble(const BubbleProblem& p);

// h = c1 cot(c2 (r - offset)) on (offset, offset + π/c2).
struct CotProfile {
  double c1 = 0.0;
  double c2 = 0.0;
  double offset = 0.0;
  RadialField h;

  double reach() const;
};

CotProfile cot_profile(double c1, double c2, double offset);

// c1 = √(λ/(β(1 - 1/(4β) - ε))), c2 = √(λ(1 - 1/(4β) - ε)/β).
CotProfile prescribed_h(double beta, double lambda, double epsilon, double offset);

// |h'| <= (1 - 1/(4β))h² + λ/β on the nodes of [lo, hi]; strictness is
// reported in the note (it fails only where h = 0 for the prescribed profile).
AuditRecord audit_h_inequality(double beta, double lambda, const RadialField& h, double lo,
                               double hi, std::size_t n = 2048);

// Stability integrand along {r = t} tested with u^{-1}:
// line 0 is the second variation, line 2 = ((1/(4β) - 1)h² - λ/β + |h'|)u^{-1}·2πf.
struct StabilityChain {
  std::array<double, 3> lines{};
  int violated_line = -1;
};

StabilityChain stability_chain(const BubbleProblem& p, double t, double beta, double lambda);

// Passes when the chain holds and its last line is negative.
AuditRecord stability_audit(const BubbleProblem& p, double t, double beta, double lambda);

// diam <= π/c2 from polar-cap obstacles. The note carries the ratio of π/c2
// to the geodesic bound 2πβ/√(λ(4β-1)).
AuditRecord audit_bubble_diameter(const WarpedMetric& m, double beta, double lambda,
                                  double epsilon, const RadialField& u);

}  // namespace sclab
