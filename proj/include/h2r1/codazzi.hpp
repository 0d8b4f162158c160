#pragma once

#include <functional>

#include "h2r1/grid.hpp"
#include "h2r1/surface.hpp"

namespace h2r1 {

/// A pair of quadratic-form fields on a parameter rectangle: a Riemannian
/// metric A and a symmetric form B, the raw material of the Codazzi-pair
/// formalism.
struct CodazziPairField {
  MetricField metric;  // A: SPD germs
  MetricField second;  // B: symmetric germs
  Domain domain;
};

/// The pair (g, alpha) induced by a spacelike patch.  Its pair residual
/// equals the norm of the height-coupling term of the surface Codazzi
/// equation, so it vanishes only where grad h does.
CodazziPairField induced_pair(const SurfacePatch& patch);

/// det B / det A at p.
double pair_extrinsic_curvature(const CodazziPairField& pair, const Vec2d& p);

/// S = A^{-1} B in the chart basis; checks that B(X, Y) = A(SX, Y) is
/// symmetric (A-self-adjointness of S) within 1e-10 relative.
Mat2d shape_endomorphism(const CodazziPairField& pair, const Vec2d& p);

/// A-norm of (grad^A_u S)(e_v) - (grad^A_v S)(e_u), the space-form Codazzi
/// defect of the pair, with grad^A built from A's Christoffel symbols.
double pair_codazzi_residual(const CodazziPairField& pair, const Vec2d& p);

/// Same defect evaluated on already-assembled form germs (p only labels
/// error messages).
double pair_codazzi_residual_forms(const Mat2j& a, const Mat2j& b,
                                   const Vec2d& p);

/// Gaussian curvature of an abstract metric field at p.
double metric_gauss_curvature(const MetricField& metric, const Vec2d& p);

/// Grid extremes of a scalar field (used for curvature scans).
struct ScanResult {
  double inf_abs = 0.0;  // min |value| over the grid
  Vec2d arg_inf_abs{};   // first grid point attaining it (row-major order)
  double min_value = 0.0, max_value = 0.0;
  Vec2d arg_min{}, arg_max{};
  int count = 0;
};

/// Plain enumeration over the grid; refining the grid to a superset can
/// only lower inf_abs.  Ties resolve to the lowest row-major index.
ScanResult scan_field(const std::function<double(const Vec2d&)>& field,
                      const GridSpec& grid, int threads = 0);

/// scan_field over K_A of a metric field; the inf_abs channel of the result
/// is then the grid minimum of |K_A|.
ScanResult inf_abs_curvature_scan(const MetricField& metric,
                                  const GridSpec& grid, int threads = 0);

}  // namespace h2r1
