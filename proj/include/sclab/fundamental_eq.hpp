#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sclab/audit.hpp"
#include "sclab/distances.hpp"
#include "sclab/warped_geometry.hpp"

namespace sclab {

// Coordinate circle {r = r0} on a closed rotational sphere. s is the signed
// distance, positive towards r = L.
struct CurveData {
  double r0 = 0.0;
  double rho_minus = 0.0;  // r0
  double rho_plus = 0.0;   // L - r0
  double length = 0.0;     // 2π f(r0)
  double chi_plus = 1.0;
  double chi_minus = 1.0;
  double total_curvature = 0.0;  // ∫ κ = 2π f'(r0)

  double level(const WarpedMetric& m, double s) const;        // L(s)
  double big_gamma(const WarpedMetric& m, double s) const;    // 2π f'(r0 + s)
  double big_g(const WarpedMetric& m, double s) const;        // ∫_0^s ∫_γ(t) K
};

CurveData coordinate_curve(const WarpedMetric& m, double r0);

enum class TestFamily { linear, polynomial, volume_cutoff, constant, power_mix };

std::string to_string(TestFamily f);

// Radial test function φ(s) on [-ρ-, ρ+], smooth on each side of s = 0.
struct TestFunction {
  TestFamily family = TestFamily::constant;
  double sigma = 0.0;
  double p = 1.0;
  double support = 0.0;  // cutoff radius for volume_cutoff (φ = 0 for s >= 2·support)
  double rho_minus = 0.0, rho_plus = 0.0;
  std::function<Jet(double)> left, right;  // s <= 0 and s >= 0
  double slope_left = 0.0;   // φ'(0-)
  double slope_right = 0.0;  // φ'(0+)
  std::vector<double> breaks;  // interior s where φ'' is not smooth (besides 0)

  Jet operator()(double s, Side side = Side::right) const;

  static TestFunction linear(double rho_minus, double rho_plus);
  static TestFunction polynomial(double rho_minus, double rho_plus, double sigma, double p);
  static TestFunction volume_cutoff(double rho_minus, double rho_plus, double radius, double p);
  static TestFunction constant(double rho_minus, double rho_plus, double value = 1.0);
  // a + (1 - a) ((ρ∓ ± s)/ρ∓)^{p∓}; exponents ≥ 1 keep φ'' integrable.
  static TestFunction power_mix(double rho_minus, double rho_plus, double a, double p_minus,
                                double p_plus);
};

// Throws InputError naming the violated condition.
void check_admissible(const TestFunction& tf, std::size_t samples = 256);

// Mixed families with random parameters; deterministic for a given engine state.
TestFunction random_test_function(std::mt19937_64& rng, double rho_minus, double rho_plus);

struct FundamentalTerms {
  double dirichlet = 0.0;  // ∫ L φ'²
  double hessian = 0.0;    // ∫ L φ φ''
  double mass = 0.0;       // ∫ L φ²
  double boundary = 0.0;   // χ+ φ(ρ+)² + χ- φ(-ρ-)²
  double kink = 0.0;       // |γ| φ(0) (φ'(0-) - φ'(0+))
};

FundamentalTerms fundamental_terms(const WarpedMetric& m, const CurveData& c,
                                   const TestFunction& tf, std::size_t n = 2048);

// (2β-1)∫Lφ'² + 2β∫Lφφ'' + λ∫Lφ² <= 2πβ[χ+φ(ρ+)² + χ-φ(-ρ-)²] + 2β|γ|φ(0)[φ'(0-) - φ'(0+)]
AuditRecord evaluate_fundamental(const WarpedMetric& m, double beta, double lambda,
                                 const CurveData& c, const TestFunction& tf,
                                 std::size_t n = 2048);

struct Geometry {
  IsoScan scan;
  double diam = 0.0;
  double area = 0.0;
  double lambda1 = 0.0;  // certified lower estimate at the given β
};

Geometry measure_geometry(const WarpedMetric& m, double beta, std::size_t n = 2048);

// IN >= (2β-1)²/(16β²) |Σ|/diam², checked against the scanned upper bound.
AuditRecord audit_isoperimetric_1(const WarpedMetric& m, double beta);
AuditRecord audit_isoperimetric_1(const WarpedMetric& m, double beta, const Geometry& g);

// |N_ρ| <= 4β/(2β-1) ρ |γ| for the band [r0 - ρ, r0 + ρ], provided the
// Dirichlet λ1 on the band is nonnegative.
AuditRecord audit_collar(const WarpedMetric& m, double beta, double r0, double rho,
                         std::size_t n = 2048);

struct Iso2Constants {
  double p = 0.0;
  double c1 = 0.0;        // (4β-1)p² - 2βp
  double c_chain = 0.0;   // C(β, ε) assembled from the chain
  double exponent = 0.0;  // 2p - 1 = (1 + 2ε)/(4β - 1)
};

Iso2Constants iso2_constants(double beta, double epsilon);

// σ chosen from Z for one curve; exposed for tests.
double iso2_sigma(double beta, double epsilon, double z);

// |γ|²/|Ω-| >= C min(1, Z^{2p-1}) on every coordinate circle, and
// IN_ub >= C min(1, (|Σ|/diam²)^{2p-1}).
std::vector<AuditRecord> audit_isoperimetric_2(const WarpedMetric& m, double beta,
                                               double epsilon);
std::vector<AuditRecord> audit_isoperimetric_2(const WarpedMetric& m, double beta,
                                               double epsilon, const Geometry& g);

struct VolumeConstants {
  double p = 0.0;
  double c1 = 0.0;
  double upper = 0.0;  // |B(r)| <= upper · r²
};

VolumeConstants volume_constants(double beta, double epsilon = 0.1);

// Isoperimetric lower constant c with |∂Ω|² >= c |Ω| for |Ω| <= |Σ|/2.
double isoperimetric_lower_constant(double beta, double ratio, double epsilon = 0.1);

// Balls around r = 0 (a pole on spheres; the boundary band on collars).
// Returns {upper, lower}; the lower check is skipped off spheres.
std::vector<AuditRecord> audit_volume_comparison(const WarpedMetric& m, double beta,
                                                 const std::vector<double>& radii,
                                                 double epsilon = 0.1);

// diam <= 2πβ/√(λ1 (4β - 1)), written scale-free as diam √λ1.
AuditRecord audit_bonnet_myers(const WarpedMetric& m, double beta,
                               std::optional<double> lambda1 = std::nullopt);

}  // namespace sclab
