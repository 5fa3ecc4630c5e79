#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sclab/audit.hpp"
#include "sclab/warped_geometry.hpp"

namespace sclab {

// Radial test function with the points where its derivative may jump.
struct MTTestFunction {
  std::string family;
  RadialField u;
  std::vector<double> breaks;
};

// 1 on [0, a], linear down to 0 at b, 0 beyond.
MTTestFunction mt_tent(double a, double b, double height = 1.0);
// exp(1 - 1/(1 - s²)) with s = (r - c)/w, zero for |s| >= 1. Pole-centred when c = 0.
MTTestFunction mt_bump(double c, double w, double height = 1.0);

// Tents and bumps supported in [0, R], drawn from a seeded engine.
std::vector<MTTestFunction> mt_sample(double R, std::size_t count, std::uint64_t seed);

// min over t in (0, R] of (2π f(t))² / |{r < t}|, the coordinate-disk upper
// bound for the Dirichlet isoperimetric ratio of {r < R}.
double dirichlet_ratio_ub(const WarpedMetric& m, double R, std::size_t n = 2048);

struct MTResult {
  std::string family;
  double xi = 0.0;
  double iso_ub = 0.0;     // ID_ub or IN_ub
  double p = 2.0;
  double energy = 0.0;     // ∫|∇u|² dA
  double ratio = 0.0;      // ∫exp(ξu²/E) / |Ω|
  double ratio_exp = 0.0;  // ∫e^{pu} / (|Ω| exp(p²E/(4ξ)))
  bool advisory = false;   // ξ within 10% of the upper bound
};

// Domain {r < R} with u(R) = 0. Throws InputError when E = 0 or ξ exceeds ID_ub.
MTResult mt_dirichlet_audit(const WarpedMetric& m, double R, const MTTestFunction& u, double xi,
                            double p = 2.0, std::size_t n = 2048);

// Closed surface, u with its mean removed; ξ defaults to IN_ub. E = 0 gives
// ratio = ratio_exp = 1.
MTResult mt_closed_audit(const WarpedMetric& m, const MTTestFunction& u, double p = 2.0,
                         double xi = 0.0, std::size_t n = 2048);

struct MTSuite {
  std::vector<MTResult> results;
  double max_ratio = 0.0;
  double max_ratio_exp = 0.0;
  bool young_dominated = true;  // ratio_exp <= ratio on every member
};

// R <= 0 means the closed audit on the whole surface.
MTSuite mt_suite(const WarpedMetric& m, double R, double xi, std::size_t count = 100,
                 std::uint64_t seed = 1, std::size_t n = 2048);

// Envelope growth under grid doubling and sample doubling stays within 10%.
AuditRecord mt_envelope_audit(const WarpedMetric& m, double R, double xi,
                              std::size_t count = 100, std::uint64_t seed = 1,
                              std::size_t n = 2048);

}  // namespace sclab
