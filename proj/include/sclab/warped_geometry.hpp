#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "sclab/audit.hpp"
#include "sclab/core.hpp"
#include "sclab/profile.hpp"
#include "sclab/spline.hpp"

namespace sclab {

// g = c^2 (dr^2 + f(r)^2 dθ^2), expressed in the scaled arclength r_c = c r.
class WarpedMetric {
 public:
  explicit WarpedMetric(RadialProfile profile, double scale = 1.0);
  WarpedMetric(std::shared_ptr<const RadialProfile> profile, double scale = 1.0);

  double length() const { return scale_ * profile_->length(); }
  double scale() const { return scale_; }
  const RadialProfile& profile() const { return *profile_; }
  std::shared_ptr<const RadialProfile> profile_ptr() const { return profile_; }
  Topology topology() const { return profile_->topology(); }
  const std::string& name() const { return profile_->name; }

  Jet warp(double r, Side side = Side::right) const;
  std::vector<double> grid(std::size_t n) const;
  std::vector<double> grid(std::size_t n, double lo, double hi) const;
  std::vector<double> breakpoints() const;

  WarpedMetric rescaled(double c) const { return WarpedMetric(profile_, scale_ * c); }

 private:
  std::shared_ptr<const RadialProfile> profile_;
  double scale_;
};

enum class FieldSign { positive, any };

// Scalar function of arclength with two derivatives.
class RadialField {
 public:
  RadialField() = default;
  static RadialField analytic(std::function<Jet(double)> f, FieldSign sign = FieldSign::any);
  // Piecewise definitions that need the side at breakpoints.
  static RadialField analytic_sided(std::function<Jet(double, Side)> f,
                                    FieldSign sign = FieldSign::any);
  // Cubic spline through samples; slopes optional at each end. Interior
  // breaks (which must be nodes) split the spline, joined with a common slope
  // from one-sided fourth-order differences, so φ'' may jump there.
  static RadialField sampled(std::vector<double> r, std::vector<double> v,
                             std::optional<double> slope_lo,
                             std::optional<double> slope_hi,
                             FieldSign sign = FieldSign::any,
                             const std::vector<double>& breaks = {});

  Jet operator()(double r, Side side = Side::right) const { return eval_(r, side); }
  FieldSign sign() const { return sign_; }
  bool is_sampled() const { return !nodes_.empty(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::function<Jet(double, Side)> eval_;
  FieldSign sign_ = FieldSign::any;
  std::vector<double> nodes_, samples_;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// K = -f''/f. At a pole the value is extrapolated from three interior nodes.
double gauss_curvature(const WarpedMetric& m, double r);

// 2π ∫ f dr by composite Simpson per piece (n even intervals) with a
// Richardson error estimate.
QuadratureResult area(const WarpedMetric& m, double lo, double hi, std::size_t n = 2048);

double level_length(const WarpedMetric& m, double r);

// ∫K dA plus boundary geodesic curvature against 2πχ.
AuditRecord gauss_bonnet_check(const WarpedMetric& m);

// Δφ = φ'' + (f'/f) φ' for radial φ; at a pole 2φ''.
double radial_laplacian(const WarpedMetric& m, const Jet& phi, double r);

// ∫_lo^hi g(r) dr by Simpson per piece in the grid coordinate.
double integrate_radial(const WarpedMetric& m, const std::function<double(double)>& g,
                        double lo, double hi, std::size_t n = 2048);
// Same, with the side of evaluation: Side::left at each piece's right end.
double integrate_radial(const WarpedMetric& m, const std::function<double(double, Side)>& g,
                        double lo, double hi, std::size_t n = 2048);

int euler_characteristic(Topology t);

// Rotational metric e^{2w} g written in its own arclength: f~ = e^w f and
// dr~ = e^w dr. Each piece is tabulated with the given number of knots.
WarpedMetric conformal_warp(const WarpedMetric& m, const RadialField& w,
                            std::size_t knots = 4097, bool allow_corners = false);

// conformal_warp together with the arclength maps between the two metrics.
struct ConformalImage {
  WarpedMetric metric;
  std::vector<HermiteTable> to_base;   // per piece: r~ -> r
  std::vector<HermiteTable> to_tilde;  // per piece: r -> r~

  double base_of(double rt) const;
  double tilde_of(double r, const WarpedMetric& base) const;
};

ConformalImage conformal_image(const WarpedMetric& m, const RadialField& w,
                               std::size_t knots = 4097, bool allow_corners = false);

}  // namespace sclab
