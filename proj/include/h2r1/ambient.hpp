#pragma once

#include <array>

#include "h2r1/jet.hpp"
#include "h2r1/linalg.hpp"

namespace h2r1 {

/// Coordinate charts for the hyperbolic factor.
enum class ChartKind {
  PoincareDisk,   // (x, y), x^2 + y^2 < 1, metric (2/(1-x^2-y^2))^2 (dx^2+dy^2)
  GeodesicPolar,  // (r, theta), r > 0, metric dr^2 + sinh(r)^2 dtheta^2
};

const char* chart_name(ChartKind kind);

bool chart_contains(ChartKind kind, double a, double b);
void require_in_chart(ChartKind kind, double a, double b);

/// Hyperbolic metric components evaluated on jet-valued chart coordinates.
Mat2j hyperbolic_metric(ChartKind kind, const Vec2j& base);
Mat2d hyperbolic_metric_value(ChartKind kind, double a, double b);

/// Christoffel symbols of a 2D metric germ, generic in the metric jets:
/// Gamma[k](i, j) = 1/2 sum_l g^{kl} (D_i g_jl + D_j g_il - D_l g_ij).
std::array<Mat2j, 2> metric_christoffels(const Mat2j& g);

/// Gaussian curvature of a 2D metric germ through the curvature tensor of
/// the generic Christoffel kernel.  Sign convention throughout the library:
/// R(X, Y)Z = grad_{[X,Y]} Z - [grad_X, grad_Y] Z, and
/// K = g(R(e_u, e_v) e_u, e_v) / (g_uu g_vv - g_uv^2),
/// which yields -1 for the hyperbolic plane and +1 for the round sphere.
double gauss_curvature(const Mat2j& g);

/// Product geometry H^2 x R_1 (metric g_H - dt^2) composed along a chart
/// map: all components become jets in the surface parameters (u, v).
struct AmbientFrame {
  ChartKind chart;
  Vec3j pos;     // (x, y, t) resp. (r, theta, t) jets
  Vec3j fu, fv;  // coordinate derivatives of pos
  Mat3j G;       // diag(g_H, -1) along the map

  /// Christoffel jets Gamma[a](b, c); every slot touching the t index is
  /// identically zero (the factor metric is a product and dt is parallel).
  std::array<Mat3j, 3> Gamma;

  static AmbientFrame along(ChartKind kind, const Vec3j& pos);

  /// Covariant derivative of an ambient-vector field along the pushforward
  /// of the chart direction dir.
  Vec3j covariant_derivative(Axis dir, const Vec3j& field) const;

  /// Pairing G(X, Y) of two jet fields.
  Jet3 pairing(const Vec3j& X, const Vec3j& Y) const;
};

/// Pointwise product-metric pairing g_H(Xh, Yh) - Xt * Yt.
double ambient_metric_product(ChartKind kind, const Vec2d& base,
                              const Vec3d& X, const Vec3d& Y);

/// Curvature operator R(X, Y)Z of the ambient product at a point, applied to
/// constant coordinate vectors; same sign convention as gauss_curvature.
Vec3d ambient_curvature(ChartKind kind, const Vec2d& base, const Vec3d& X,
                        const Vec3d& Y, const Vec3d& Z);

}  // namespace h2r1
