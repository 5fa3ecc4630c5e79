#pragma once

#include <string>
#include <vector>

#include "sclab/audit.hpp"
#include "sclab/kernels.hpp"
#include "sclab/warped_geometry.hpp"

namespace sclab {

struct SurfacePoint {
  double r = 0.0;
  double theta = 0.0;
};

struct DistanceResult {
  double length = 0.0;
  std::string route;     // which candidate family realized the minimum
  bool flagged = false;  // a root search failed and a fallback was used
};

// Minimum over Clairaut geodesic families, pole paths and parallel arcs.
DistanceResult geodesic_distance_detail(const WarpedMetric& m, SurfacePoint p, SurfacePoint q);
double geodesic_distance(const WarpedMetric& m, SurfacePoint p, SurfacePoint q);

// Batched distances for point pairs.
std::vector<double> geodesic_distances(Exec ex, const WarpedMetric& m,
                                       const std::vector<std::pair<SurfacePoint, SurfacePoint>>& pairs);

// Single-source shortest paths on an (r, θ) grid with a stencil of primitive
// offsets |di|, |dj| <= k. Each edge length is Simpson quadrature of the metric
// along the coordinate segment.
class GridDijkstra {
 public:
  GridDijkstra(const WarpedMetric& m, std::size_t n_r_per_piece, std::size_t n_theta,
               int stencil = 3);

  // Distances from p to every node; the source and radii are snapped to nodes.
  void solve(SurfacePoint p);
  double distance_to(SurfacePoint q) const;
  std::size_t radial_nodes() const { return r_.size(); }

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return i * nt_ + j; }
  std::size_t nearest_r(double r) const;
  std::size_t nearest_theta(double t) const;

  WarpedMetric m_;
  std::vector<double> r_;
  std::size_t nt_;
  std::vector<std::pair<int, int>> offsets_;
  std::vector<double> edge_;  // [(i * offsets + o)]
  std::vector<double> dist_;
  bool pole_lo_, pole_hi_;
};

double dijkstra_distance(const WarpedMetric& m, SurfacePoint p, SurfacePoint q,
                         std::size_t n_r_per_piece = 0, std::size_t n_theta = 512,
                         int stencil = 3);

struct DiameterResult {
  double diam = 0.0;
  SurfacePoint p, q;
};

// Meridian samples × angular offsets {0, π}, refined near the maximizer; the
// pole-to-pole distance is always included.
DiameterResult diameter(const WarpedMetric& m, std::size_t samples = 24,
                        Exec ex = Exec::parallel);

struct IsoRow {
  double r = 0.0;
  double perimeter = 0.0;
  double area_in = 0.0;
  double area_out = 0.0;
  double in_cand = 0.0;
  double ch_cand = 0.0;
};

struct IsoScan {
  std::vector<IsoRow> rows;
  double total_area = 0.0;
  double in_ub = 0.0;  // min perimeter² / min(areas) over coordinate disks
  double ch_ub = 0.0;  // min perimeter / min(areas)
  double r_in = 0.0, r_ch = 0.0;
};

IsoScan isoperimetric_scan(const WarpedMetric& m, std::size_t n = 2048,
                           Exec ex = Exec::parallel);

std::string iso_scan_csv(const IsoScan& scan);

// Ch·diam >= 1 and IN·diam² >= |Σ| using scanned upper bounds; skipped when
// K < 0 somewhere.
AuditRecord burago_zalgaller_audit(const WarpedMetric& m);
AuditRecord burago_zalgaller_audit(const WarpedMetric& m, const IsoScan& scan, double diam);

// Minimum of K over a grid (used for gating).
double min_curvature(const WarpedMetric& m, std::size_t n = 512);

}  // namespace sclab
