#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sclab/core.hpp"

namespace sclab {

// C2 cubic spline through (x_i, y_i). Each end is clamped to a given slope or
// left natural.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y,
              std::optional<double> slope_lo = std::nullopt,
              std::optional<double> slope_hi = std::nullopt);

  Jet operator()(double x) const;
  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_, y_, m_;  // m_ = second derivative at knots
};

// Quintic Hermite interpolant from values and first two derivatives at knots.
// Arguments outside the knot range are clamped. Knots may be given relative
// to an origin, which keeps short tables far from zero well conditioned.
class HermiteTable {
 public:
  HermiteTable() = default;
  HermiteTable(std::vector<double> x, std::vector<double> y,
               std::vector<double> dy, std::vector<double> d2y, double origin = 0.0);

  Jet operator()(double x) const;
  double lo() const { return origin_ + lo_; }
  double hi() const { return origin_ + hi_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double lo_ = 0.0, hi_ = 0.0;
  double origin_ = 0.0;
};

}  // namespace sclab
