#pragma once

#include "h2r1/codazzi.hpp"
#include "h2r1/surface.hpp"

namespace h2r1 {

enum class DeformMode { FreeC, ConstantK };

/// Immutable setup for the height deformation g~ = g + c dh^2 of a patch.
///
/// FreeC: any c > 0; every pointwise formula below is valid without further
/// hypotheses.  ConstantK: c = 1/(K+1) derived from an asserted constant
/// curvature K in (-1, 0]; the assertion is checked against the patch on a
/// coarse sample grid, and pair-level claims are refused when it fails.
class DeformationContext {
 public:
  static DeformationContext free_c(SurfacePatch patch, double c);
  static DeformationContext constant_K(SurfacePatch patch, double K,
                                       double tol = 1e-5);

  const SurfacePatch& patch() const { return patch_; }
  DeformMode mode() const { return mode_; }
  double c() const { return c_; }
  double asserted_K() const { return K_; }            // NaN in FreeC mode
  bool consistent() const { return consistent_; }     // true in FreeC mode
  double max_K_deviation() const { return max_dev_; }  // from the sweep

 private:
  DeformationContext() = default;
  SurfacePatch patch_;
  DeformMode mode_ = DeformMode::FreeC;
  double c_ = 1.0;
  double K_ = 0.0;
  bool consistent_ = true;
  double max_dev_ = 0.0;
};

/// g~ jets at an assembled frame; g~ - g is the PSD rank-one form c dh (x) dh.
Mat2j deformed_metric(const DeformationContext& ctx, const PointFrame& f);

/// grad~ h = grad h / (1 + c |grad h|^2).
Vec2d deformed_gradient(const DeformationContext& ctx, const PointFrame& f);

/// A~ X = A X - (c/(1 + c|grad h|^2)) g(AX, grad h) grad h.
Mat2d deformed_shape_operator(const DeformationContext& ctx, const PointFrame& f);

/// Components of grad~_{e_i} e_j = grad_{e_i} e_j +
/// (c/(1 + c|grad h|^2)) Hess h(e_i, e_j) grad h.
Vec2d deformed_connection(const DeformationContext& ctx, const PointFrame& f,
                          int i, int j);

/// Residual of det(Hess h as endomorphism) = Theta^2 det A
/// = -(1 + |grad h|^2)(K + 1 + |grad h|^2), normalized by 1 + |grad h|^4.
double hessian_det_identity(const DeformationContext& ctx, const PointFrame& f);

/// Curvature of g~ by the deformation lemma:
/// K~ = (K (1 + c s) + c det Hess) / (1 + c s)^2, s = |grad h|^2,
/// with K and det Hess taken pointwise from the frame.
double ktilde_lemma(const DeformationContext& ctx, const PointFrame& f);

/// Curvature of g~ computed directly from its jets (independent path).
double ktilde_direct(const DeformationContext& ctx, const Vec2d& p);
double ktilde_direct(const DeformationContext& ctx, const PointFrame& f);

/// K~ = ((1 - c) K - c (1 + s)^2) / (1 + c s)^2, the constant-curvature
/// elimination of det Hess; pointwise-valid for any c.
double ktilde_closed_form(const DeformationContext& ctx, const PointFrame& f);

/// The same closed form as a bare function of (K, c, s), for sweeps.
double ktilde_closed_form_value(double K, double c, double s);

/// The deformed metric as an abstract field, and the pair (g~, alpha).
MetricField deformed_metric_field(const DeformationContext& ctx);
CodazziPairField deformed_pair(const DeformationContext& ctx);

struct PairCurvatureRecord {
  double k_pair;                 // det alpha / det g~
  double lambda_residual;        // |lambda1 lambda2 c/(1 + c s) + 1|
  double ktilde_bound_residual;  // max(0, K~ - (K - 1))
};

/// ConstantK-mode record behind the pair-level claims; throws on FreeC mode
/// or an inconsistent context.
PairCurvatureRecord pair_curvature_and_bound(const DeformationContext& ctx,
                                             const PointFrame& f);

}  // namespace h2r1
