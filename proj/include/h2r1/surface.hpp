#pragma once

#include <functional>
#include <string>

#include "h2r1/ambient.hpp"
#include "h2r1/expr.hpp"

namespace h2r1 {

/// Closed parameter rectangle [u0, u1] x [v0, v1].
struct Domain {
  double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;
  bool contains(double u, double v) const;
};

/// A coordinate function of the immersion: parameters -> order-3 jet.
using CoordFn = std::function<Jet3(const Vec2d&)>;

/// A field of metric germs on the parameter rectangle.
using MetricField = std::function<Mat2j(const Vec2d&)>;

/// Parametrized surface patch in H^2 x R_1: a chart for the hyperbolic
/// factor, a parameter rectangle, and three coordinate functions (two chart
/// coordinates plus the height t).
struct SurfacePatch {
  ChartKind chart = ChartKind::PoincareDisk;
  Domain domain;
  std::array<CoordFn, 3> coord;
  std::string source;  // originating description text, for reports

  static SurfacePatch from_expressions(ChartKind chart, Domain domain,
                                       const Expression& c0, const Expression& c1,
                                       const Expression& c2,
                                       std::string source = {});

  /// Height graph over the chart: (u, v) -> (u, v, height(u, v)).
  static SurfacePatch graph(ChartKind chart, Domain domain,
                            const Expression& height, std::string source = {});

  /// Immersion jets at a parameter point (domain-checked).
  Vec3j coords_at(const Vec2d& p) const;
};

/// Everything the identity checks need at one parameter point.
struct PointFrame {
  Vec2d p{};
  AmbientFrame amb;              // pos, fu, fv, G, ambient Christoffels
  Mat2j g, ginv;                 // induced metric and inverse
  std::array<Mat2j, 2> gamma;    // induced Christoffels
  Vec3j normal;                  // future-pointing unit timelike normal
  Jet3 theta;                    // G(normal, dt); always <= -1
  Mat2j alpha;                   // second fundamental form, symmetrized
  Mat2j shape;                   // shape operator A = g^{-1} alpha
  Vec2j dh;                      // height differential (h_u, h_v)
  Vec2j gradh;                   // contravariant height gradient
  Jet3 gradh2;                   // |grad h|^2
  Mat2j hess;                    // covariant Hessian of the height
  double k_ext = 0.0;            // -theta^2 - det A
  double k_int = 0.0;            // curvature-tensor path on g
};

/// Assemble the frame; throws NotSpacelikeError / NotImmersedError /
/// DomainError when the patch fails to be a spacelike immersion at p.
PointFrame frame_at(const SurfacePatch& patch, const Vec2d& p);

/// Metric germ field induced by the patch.
MetricField induced_metric_field(const SurfacePatch& patch);

// --- identity residuals (absolute; callers normalize) ------------------

/// Tangential/normal split of the ambient acceleration:
/// covd_i f_j - gamma^k_ij f_k + alpha_ij N, as an ambient vector.
Vec3d gauss_formula_residual(const PointFrame& f, int i, int j);

/// covd_i N + A^k_i f_k, as an ambient vector.
Vec3d weingarten_residual(const PointFrame& f, int i);

/// g-norm of (grad_u A)e_v - (grad_v A)e_u + theta*(g(e_u, T)e_v -
/// g(e_v, T)e_u) with T = -grad h, for an arbitrary endomorphism field
/// given by jets (the patch shape operator in the default overload).
double codazzi_residual(const PointFrame& f, const Mat2j& endo);
double codazzi_residual(const PointFrame& f);

struct HeightResiduals {
  double gradient;  // | |grad h|^2 - (theta^2 - 1) |
  double hessian;   // max_ij |Hess_ij - theta * alpha_ij|
};
HeightResiduals height_identity_residuals(const PointFrame& f);

/// Eigenvalues (ascending) of (pullback of g_H along the horizontal part)
/// minus g; the difference equals dh (x) dh, so both should be >= 0 and the
/// smallest should vanish to rounding.
Vec2d projection_defect_eigenvalues(const PointFrame& f);

/// Ambient-norm of the pairing defects G(N, N) + 1, G(N, f_u), G(N, f_v).
double normalization_residual(const PointFrame& f);

}  // namespace h2r1
