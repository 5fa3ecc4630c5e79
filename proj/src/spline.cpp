#include "sclab/spline.hpp"

#include <algorithm>
#include <boost/math/interpolators/quintic_hermite.hpp>
#include <cmath>

namespace sclab {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y,
                         std::optional<double> slope_lo,
                         std::optional<double> slope_hi)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) {
    throw InputError("spline needs at least 3 matching samples");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw InputError("spline knots must increase");
  }
  // Tridiagonal system for second derivatives.
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    a[i] = h0 / 6.0;
    b[i] = (h0 + h1) / 3.0;
    c[i] = h1 / 6.0;
    d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
  }
  double h0 = x_[1] - x_[0];
  if (slope_lo) {
    b[0] = h0 / 3.0;
    c[0] = h0 / 6.0;
    d[0] = (y_[1] - y_[0]) / h0 - *slope_lo;
  } else {
    b[0] = 1.0;
  }
  double hn = x_[n - 1] - x_[n - 2];
  if (slope_hi) {
    a[n - 1] = hn / 6.0;
    b[n - 1] = hn / 3.0;
    d[n - 1] = *slope_hi - (y_[n - 1] - y_[n - 2]) / hn;
  } else {
    b[n - 1] = 1.0;
  }
  for (std::size_t i = 1; i < n; ++i) {
    double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  m_.assign(n, 0.0);
  m_[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
  }
}

Jet CubicSpline::operator()(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
      it - x_.begin() - 1, 0, static_cast<std::ptrdiff_t>(x_.size()) - 2));
  double h = x_[i + 1] - x_[i];
  double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
  Jet j;
  j.v = A * y_[i] + B * y_[i + 1] +
        ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
  j.d1 = (y_[i + 1] - y_[i]) / h +
         ((1.0 - 3.0 * A * A) * m_[i] + (3.0 * B * B - 1.0) * m_[i + 1]) * h / 6.0;
  j.d2 = A * m_[i] + B * m_[i + 1];
  return j;
}

struct HermiteTable::Impl {
  boost::math::interpolators::quintic_hermite<std::vector<double>> q;
};

HermiteTable::HermiteTable(std::vector<double> x, std::vector<double> y,
                           std::vector<double> dy, std::vector<double> d2y, double origin) {
  if (x.size() < 2) throw InputError("hermite table needs two knots");
  lo_ = x.front();
  hi_ = x.back();
  origin_ = origin;
  impl_ = std::make_shared<const Impl>(Impl{
      boost::math::interpolators::quintic_hermite<std::vector<double>>(
          std::move(x), std::move(y), std::move(dy), std::move(d2y))});
}

Jet HermiteTable::operator()(double x) const {
  x = std::clamp(x - origin_, lo_, hi_);
  return {impl_->q(x), impl_->q.prime(x), impl_->q.double_prime(x)};
}

}  // namespace sclab
