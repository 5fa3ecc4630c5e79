#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sclab/audit.hpp"
#include "sclab/warped_geometry.hpp"

namespace sclab {

// g~ = e^{2u} g with u = β⁻¹ log φ + const, the constant fixing |Σ|~.
struct ConformalBundle {
  WarpedMetric base;
  double beta = 1.0;
  double lambda = 0.0;  // φ is a supersolution of Δφ <= (βK - λ)φ
  RadialField phi;
  RadialField u;        // includes the normalizing shift
  double shift = 0.0;
  double target_area = 1.0;
  ConformalImage image;
  double area_tilde = 0.0;
  double energy_base = 0.0;   // ∫|∇u|² dA on g
  double energy_tilde = 0.0;  // ∫|∇~u|² dA~ on g~
  double min_gap = 0.0;         // min K~ - β|∇~u|²
  double min_gap_lambda = 0.0;  // min K~ - (λ/β) e^{-2u} - β|∇~u|²
  double curvature_mismatch = 0.0;  // max |e^{-2u}(K - Δu) + f~''/f~| / max(|K~|, f~⁻²)
  double max_slope = 0.0;           // max |f~'|
  double max_slope_at = 0.0;        // r~ where it is attained
  double residual = 0.0;            // relative supersolution residual of φ

  const WarpedMetric& tilde() const { return image.metric; }
};

struct ConformalOptions {
  std::size_t n = 2048;       // nodes per piece for checks and quadrature
  std::size_t knots = 4097;   // reparametrization tables
  double residual_tol = 1e-6; // relative supersolution tolerance
  bool allow_corners = false;
};

// Throws InputError when φ is not a supersolution within tolerance.
ConformalBundle build_conformal(const WarpedMetric& m, double beta, double lambda,
                                const RadialField& phi, double target_area,
                                const ConformalOptions& opt = {});

// K~ - β|∇~u|² >= -1e-6, energy <= 4π/β + 1e-6, energy invariance to 1e-8, and
// for λ > 0 the sharper K~ - (λ/β)e^{-2u} - β|∇~u|² >= -1e-6 (scaled by 4π/|Σ|~
// when the target area is smaller). With |Σ|~ = 4π and λ = β also the energy
// against (4π - |Σ|)/β.
std::vector<AuditRecord> conformal_audits(const ConformalBundle& b);

// Meridian profile (ρ, z) of the convex surface of revolution realizing g~,
// shifted so that the origin is the axis point maximizing the inradius d1.
struct EmbeddingProfile {
  std::vector<double> s;    // arclength of g~
  std::vector<double> rho;  // distance to the axis (= f~)
  std::vector<double> z;    // height relative to the centre
  std::vector<double> drho, dz;  // unit tangent
  double center = 0.0;      // centre height in the unshifted frame
  double d1 = 0.0;          // min |x|
  double d2 = 0.0;          // max |x|
};

// Needs K~ f~² >= -tol (f~ f~'' <= tol) and |f~'| <= 1 + tol.
EmbeddingProfile embed(const WarpedMetric& tilde, std::size_t n = 4096, double tol = 1e-6);
EmbeddingProfile embed(const ConformalBundle& b, std::size_t n = 4096);

struct Distortion {
  double lip = 0.0;       // max stretch of x -> x/|x|
  double lip_inv = 0.0;   // max stretch of the inverse
  double bound_lip = 0.0;      // 1/d1
  double bound_lip_inv = 0.0;  // d2²/d1
};

Distortion projection_distortion(const EmbeddingProfile& e);

// Polar angle of the projected point for arclength s of g~.
double projected_angle(const EmbeddingProfile& e, double s);

// diam(g~) below an envelope; the default envelope is twice the diameter of
// the unit-area round sphere.
AuditRecord audit_tilde_diameter(const ConformalBundle& b, double base_ratio,
                                 double envelope = 0.0);

// max φ / min φ >= (diam · Ch_ub)^{-β/2}.
AuditRecord anti_harnack_audit(const WarpedMetric& m, double beta, const RadialField& phi,
                               std::size_t n = 2048);

struct DualPair {
  WarpedMetric metric;
  RadialField phi;
  ConformalImage image;
  double residual = 0.0;  // relative residual of the new pair at λ = 0
};

// g' = φ^{4/β} g, φ' = 1/φ.
DualPair duality_transform(const WarpedMetric& m, double beta, const RadialField& phi,
                           const ConformalOptions& opt = {});

struct RigidityRow {
  double epsilon = 0.0;
  double delta = 0.0;  // 4π - |Σ|
  double lambda1 = 0.0;
  double u_bar = 0.0;
  double energy = 0.0;
  double d1 = 0.0, d2 = 0.0;
  double lip = 0.0, lip_inv = 0.0;
  double d_inf = 0.0;
  bool excluded = false;
  std::string reason;
};

struct RigidityReport {
  double beta = 1.0;
  std::vector<RigidityRow> rows;
  bool monotone = false;     // deviations nonincreasing within 10% as δ decreases
  bool small_at_end = false; // all deviations < 0.05 at the smallest δ
  bool energy_ok = false;    // energy <= δ/β + 1e-6 on every row
};

// Each member is rescaled so that λ1(-Δ + βK) = β; rows keep the input order.
RigidityReport rigidity_experiment(const std::vector<std::pair<double, WarpedMetric>>& family,
                                   double beta, std::size_t pairs = 24, unsigned seed = 7);

std::string rigidity_csv(const RigidityReport& r);

}  // namespace sclab
