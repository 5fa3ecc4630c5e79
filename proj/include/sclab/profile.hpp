#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sclab/core.hpp"
#include "sclab/spline.hpp"

namespace sclab {

enum class Topology { sphere, collar, half_open };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

// Monotone change of variable between arclength r and a grid coordinate s.
// Grids are uniform in s.
struct GridMap {
  std::function<double(double)> to_grid;
  // s -> (r, dr/ds)
  std::function<std::pair<double, double>(double)> from_grid;

  static GridMap identity();
  static GridMap logarithmic();  // s = log r, for pieces bounded away from 0
};

struct ProfilePiece {
  double a = 0.0, b = 0.0;
  std::function<Jet(double)> warp;  // f, f', f'' in arclength
  GridMap map;
  std::string label;

  static ProfilePiece uniform(double a, double b, std::function<Jet(double)> warp,
                              std::string label = {});
  static ProfilePiece graded(double a, double b, std::function<Jet(double)> warp,
                             std::string label = {});
};

struct ProfileOptions {
  double tol_glue = 1e-8;
  double tip_slope = 1.0;     // |f'| at a pole; 1 for a smooth cap, < 1 for a cone
  bool allow_corners = false; // f' may jump downward at junctions
};

class RadialProfile {
 public:
  RadialProfile(std::vector<ProfilePiece> pieces, Topology topology,
                ProfileOptions options = {});

  // Single-piece profile from a sampled table (r, f); cubic spline with the
  // cap slope imposed at poles.
  static RadialProfile from_table(const std::vector<double>& r,
                                  const std::vector<double>& f, Topology topology);

  double length() const { return pieces_.back().b; }
  Topology topology() const { return topology_; }
  bool pole_at_start() const { return topology_ != Topology::collar; }
  bool pole_at_end() const { return topology_ == Topology::sphere; }
  const std::vector<ProfilePiece>& pieces() const { return pieces_; }
  const ProfileOptions& options() const { return options_; }
  std::vector<double> breakpoints() const;

  std::size_t piece_index(double r, Side side = Side::right) const;
  Jet warp(double r, Side side = Side::right) const;

  // Per-piece grids with n nodes on each piece, breakpoints shared.
  std::vector<double> grid(std::size_t n) const;
  // Same restricted to [lo, hi]; every piece meeting the range gets n nodes.
  std::vector<double> grid(std::size_t n, double lo, double hi) const;

  // Largest |jump f| + |jump f'| over junctions.
  double glue_mismatch() const;
  std::vector<double> junction_mismatches() const;

  std::string name;
  std::map<std::string, double> params;

 private:
  void validate() const;

  std::vector<ProfilePiece> pieces_;
  Topology topology_;
  ProfileOptions options_;
};

// A curve t -> (f(t), arclength speed s'(t)) converted to an arclength piece.
struct ParametricPiece {
  double t0 = 0.0, t1 = 0.0;
  std::function<Jet(double)> warp_t;   // f and its t-derivatives
  std::function<Jet(double)> speed_t;  // v = ds/dt, d1 = d2s/dt2 (d2 unused)
  GridMap map;                          // grid coordinate on the t interval
  std::string label;
};

// Tabulates arclength with Gauss-Legendre and builds quintic Hermite tables
// r -> f and r <-> t with exact jets at the knots. The resulting piece starts
// at arclength r_start. Optionally returns the r -> t table.
ProfilePiece reparametrize(double r_start, const ParametricPiece& p,
                           std::size_t knots, HermiteTable* r_to_t = nullptr,
                           HermiteTable* t_to_r = nullptr);

}  // namespace sclab
