#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sclab/warped_geometry.hpp"

namespace sclab {

WarpedMetric make_round_sphere(double radius = 1.0);

// Conformal family (1 + ε sin²t)² (dt² + sin²t dθ²) in arclength, scaled to area 4π.
WarpedMetric make_spheroid(double epsilon, std::size_t knots = 4097);

// Hemispherical caps of radius 1 joined by a cylinder of the given length.
WarpedMetric make_capsule(double cylinder_length);

// f = sin r (1 - a sin²2r). For large enough a, f has two equal necks placed
// symmetrically about the equator (r ≈ 0.751 and π - 0.751 at a = 0.8).
WarpedMetric make_two_neck(double a = 0.8);

// Flat cone f = slope·r on [0, length]; the tip is a cone point.
WarpedMetric make_cone(double slope, double length = 1.0);

// Upper hemisphere of the unit sphere, boundary at r = π/2.
WarpedMetric make_hemisphere();

struct BetaQuarterModel {
  WarpedMetric metric;
  RadialField phi;
  double lambda = 0.0;
};

// f = e^{2λx²}, φ = e^{-λx²} on x ∈ [-R, R], stored as r = x + R.
BetaQuarterModel make_beta_quarter_model(double lambda, double R);

struct CounterexampleParams {
  double beta = 0.4;
  double p = 1.2;
  double q = 1.0;
  double c1 = 1.0 / 6.0;
  double c2 = 3.0 / 5.0;
  double c3 = 40.0;
  double r0 = 0.0;
  double A = 0.0;
  double r1 = 0.0;
  double R = 100.0;

  // Fills the derived constants; p defaults to 2 - 2β.
  static CounterexampleParams make(double beta, double R,
                                   std::optional<double> p_override = std::nullopt);
  void validate() const;

  double k() const;               // √(βA)/2
  double tanh_term() const;       // |tanh(k (r1 - r0))|
  double tanh_lower_bound() const;  // tanh((π/2 - acos c2)/4)
  double rhs_term() const;        // 2/(c3 p √β) = 2/(r0 √(βA))
};

struct PowerNeck {
  WarpedMetric metric;
  RadialField phi;
  CounterexampleParams params;
  double shift = 0.0;        // x = r - shift
  double mirror = 0.0;       // reflection point in x
  std::vector<double> junction_f;   // |jump f| + |jump f'| at r1, r0, R, mirror
  std::vector<double> junction_phi; // |jump φ| at the same points
  double phi_slope_left = 0.0;      // φ'(r1-)
  double phi_slope_right = 0.0;     // φ'(r1+)
  double sine_form_error = 0.0;     // max |cos-sin form - sine form| on [r1, r0]
  double max_log_slope_sine = 0.0;  // max |f'/f| on [r1, r0]
};

// Closed double of the truncated construction, reflected where f' = 0.
PowerNeck make_power_neck(const CounterexampleParams& params);

// Middle-piece combination f φ'' + f' φ' + β f'' φ for f = r^{-p}, φ = r^q.
double power_middle_combination(const CounterexampleParams& params, double r);

struct EndModel {
  WarpedMetric metric;
  RadialField phi;
};

// Truncated f = r^{-p}, φ = r^q on r ∈ [delta, R_t] as a collar, oriented so
// that x = 0 is the large-r end.
EndModel make_power_end(double beta, double delta, double R_t,
                             std::optional<double> p_override = std::nullopt);

struct GalleryParam {
  std::string name;
  double default_value;
  std::string doc;
};

struct GalleryEntry {
  std::string name;
  Topology topology;
  std::string doc;
  std::vector<GalleryParam> params;
};

const std::vector<GalleryEntry>& gallery_entries();

struct GalleryModel {
  WarpedMetric metric;
  std::optional<RadialField> phi;  // bundled supersolution if the model has one
  std::string name;
  std::map<std::string, double> params;
};

// Builds a named entry; unknown names or parameters throw InputError.
GalleryModel build_gallery(const std::string& name, const std::map<std::string, double>& params);

struct ScalingRow {
  double R = 0.0;
  double diam = 0.0;
  double area = 0.0;
  double ch_ub = 0.0;
  double in_ub = 0.0;
  double ch_diam = 0.0;
  double area_over_diam2 = 0.0;
  double residual = 0.0;  // supersolution residual of the bundled φ (λ = 0)
  double lambda1 = 0.0;   // discrete λ1 cross-check
  bool excluded = false;
  std::string reason;
};

struct ScalingReport {
  double beta = 0.0;
  double p = 0.0;
  std::vector<ScalingRow> rows;
  double slope_ch_diam = 0.0;
  double slope_in = 0.0;
  double slope_area_diam2 = 0.0;
  double exponent_ratio = 0.0;
};

ScalingReport scaling_sweep(double beta, const std::vector<double>& R_list, std::size_t n = 4096,
                            std::optional<double> p_override = std::nullopt);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sclab
