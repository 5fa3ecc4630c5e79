#include "sclab/kernels.hpp"

#include <array>

namespace sclab {

namespace {
constexpr std::array<double, 4> kX = {-0.8611363115940526, -0.3399810435848563,
                                      0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kW = {0.3478548451374538, 0.6521451548625461,
                                      0.6521451548625461, 0.3478548451374538};
}  // namespace

std::vector<double> cell_integrals(Exec ex, const std::vector<double>& x,
                                   const std::function<double(double)>& g) {
  if (x.size() < 2) return {};
  return map_indices(ex, x.size() - 1, [&](std::size_t i) {
    double a = x[i], b = x[i + 1], c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
    for (std::size_t q = 0; q < kX.size(); ++q) s += kW[q] * g(c + h * kX[q]);
    return h * s;
  });
}

std::vector<double> cell_areas(Exec ex, const WarpedMetric& m, const std::vector<double>& x) {
  auto v = cell_integrals(ex, x, [&](double r) { return m.warp(r).v; });
  for (double& a : v) a *= 2.0 * kPi;
  return v;
}

std::vector<double> prefix_sum(const std::vector<double>& v) {
  std::vector<double> out(v.size() + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i + 1] = out[i] + v[i];
  return out;
}

}  // namespace sclab
