#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sclab/warped_geometry.hpp"

namespace sclab {

enum class Boundary { closed, dirichlet, neumann };

std::string to_string(Boundary b);

struct SpectralParams {
  double beta = 1.0;
  std::size_t n = 2048;  // nodes per piece
  double tol_eig = 1e-9;
};

struct SpectralResult {
  double lambda1 = 0.0;
  RadialField eigenfunction;  // positive, 2π ∫ φ² f dr = 1
  Boundary bc = Boundary::closed;
  double residual = 0.0;      // ||B x - λ x|| for the unit algebraic eigenvector
  double lo = 0.0, hi = 0.0;
  std::vector<double> nodes;
  std::vector<double> values;
};

// Symmetric tridiagonal pencil (A, M) of -(1/f)(f v')' + βK on a node set.
// Unknowns are nodes [first, last]; Dirichlet ends are dropped.
struct Pencil {
  std::vector<double> nodes;
  std::size_t first = 0, last = 0;
  std::vector<double> diag;  // A_ii for unknowns
  std::vector<double> off;   // A_{i,i+1} for unknowns
  std::vector<double> mass;  // lumped M_ii
};

Pencil assemble_pencil(const WarpedMetric& m, double beta, const std::vector<double>& nodes,
                       Boundary bc);

// Smallest eigenvalue and eigenvector of the pencil; eigenvector in nodal values
// for the unknowns, normalized 2π Σ M v² = 1 and positive on average.
std::pair<double, std::vector<double>> lowest_eigenpair(const Pencil& p, double* residual);

SpectralResult first_eigenvalue(const WarpedMetric& m, const SpectralParams& params,
                                Boundary bc,
                                std::optional<std::pair<double, double>> domain = {});

// Certified lower estimate min(λ_n, λ_2n) - |λ_2n - λ_n|.
double certified_lambda1(const WarpedMetric& m, const SpectralParams& params, Boundary bc,
                         std::optional<std::pair<double, double>> domain = {});

// Quadratic form over L2 norm. A sampled field is evaluated with the discrete
// form on its own nodes; an analytic field by Gauss quadrature.
double rayleigh_quotient(const WarpedMetric& m, double beta, const RadialField& field,
                         Boundary bc, std::optional<std::pair<double, double>> domain = {});

struct PerturbationResult {
  double analytic = 0.0;       // -β ∫ Δh φ² dA
  double analytic_full = 0.0;  // analytic - 2 λ1 ∫ h φ² dA
  double finite_diff = 0.0;    // forward difference at t_step
  double central_diff = 0.0;   // central difference at t_step
  double lambda1 = 0.0;
};

// First variation of λ1 along e^{2th} g on a closed sphere.
PerturbationResult eigenvalue_perturbation(const WarpedMetric& m, double beta,
                                           const RadialField& h, double t_step,
                                           std::size_t n = 2048);

// max over interior nodes of Δφ - (βK - λ)φ; both sides are evaluated at
// breakpoints, where [φ'] + β[f']φ/f > 0 counts as a defect. The relative
// form divides each term by the sum of magnitudes plus φ/f² (φ/f for jumps).
double supersolution_residual(const WarpedMetric& m, double beta, double lambda,
                              const RadialField& phi, std::size_t n = 2048,
                              std::optional<std::pair<double, double>> domain = {},
                              bool relative = false);

}  // namespace sclab
