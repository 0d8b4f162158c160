#pragma once

#include <string>
#include <vector>

#include "h2r1/surface.hpp"

namespace h2r1 {

/// Where a rotational profile starts.
struct RotStart {
  enum class Kind { Axis, Annulus };
  Kind kind = Kind::Annulus;
  double r0 = 1.0;  // annulus: start radius
  double h0 = 0.0;  // annulus: start height
  double v0 = 0.0;  // annulus: start slope h'

  /// Series start at the axis, h ~ a r^2/2 with a = sqrt(-(K+1)); admissible
  /// only for K <= -1 (at a smooth axis, det A = a^2 must equal -(K+1)).
  static RotStart axis();
  static RotStart annulus(double r0, double h0, double v0);
};

struct ShootOptions {
  double r_min = 1e-6;  // inner radius bound (annulus down-leg)
  double r_max = 5.0;   // outer radius bound
  double max_step = 1e-2;
  double min_step = 1e-9;
  double atol = 1e-10;    // local error tolerance on (h, h')
  double h2_limit = 1e8;  // |h''| beyond this counts as breakdown
};

/// A meridian profile t = h(r) of constant prescribed curvature, with
/// diagnostics of how far it could be continued.
struct RotProfile {
  double K_target = 0.0;
  bool axis_start = false;
  std::vector<double> r, h, dh;  // ascending in r, strictly spacelike
  double breakdown_lo = 0.0;     // radius where the inward leg stopped early
  double breakdown_hi = 0.0;     // likewise outward; NaN = reached the span end
  double radial_length = 0.0;    // integral of sqrt(1 - h'^2) dr
  double K_error_max = 0.0;      // max |K - K_target| through the induced patch
};

/// Curvature of the rotational graph t = h(r) from pointwise data
/// (h, h', h''), evaluated through the generic surface machinery by
/// building local jets; single source of truth for the shooting ODE.
double curvature_given_h2(double r, double h, double h1, double h2);

/// The h'' matching K_target at (r, h, h'): curvature is affine in h'', so
/// a two-point solve plus a bisection safeguard; |K - K_target| <= 1e-10 or
/// NoRootError.
double solve_h2(double r, double h, double h1, double K_target);

/// Adaptive embedded 5(4) integration of h'' = solve_h2 from the start in
/// both radial directions until the span ends or continuation breaks down.
RotProfile shoot(const RotStart& start, double K_target,
                 const ShootOptions& opts = {});

/// Hermite interpolation of the profile exposed as a polar-chart patch on
/// [r_front, r_back] x [0, 1]; needs at least 4 samples.  When every node
/// admits a curvature-consistent h'' (solve_h2 at K_target succeeds), the
/// interpolant is quintic on (h, h', h'') data; otherwise cubic on (h, h').
SurfacePatch profile_to_patch(const RotProfile& profile);

/// CSV columns r, h, dh, K_check (K_check through the induced patch).
void write_profile_csv(const RotProfile& profile, const std::string& path);

/// JSON diagnostics sidecar: breakdown_radius, radial_length, K_error_max.
void write_profile_sidecar(const RotProfile& profile, const std::string& path);
std::string profile_sidecar_json(const RotProfile& profile);

}  // namespace h2r1
