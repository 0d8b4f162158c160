#include "h2r1/deform.hpp"

#include <cmath>
#include <limits>

#include "h2r1/errors.hpp"

namespace h2r1 {
namespace {

constexpr double kConditionLimit = 1e12;

/// The 1/(1 + c s) factors lose all precision when c s explodes.
double checked_kappa(double c, double s) {
  if (c * s > kConditionLimit)
    throw ConditioningError("deformation factor c*|grad h|^2 = " +
                            std::to_string(c * s) + " exceeds 1e12");
  return c / (1.0 + c * s);
}

/// det of the Hessian endomorphism g^{-1} Hess.
double hessian_endo_det(const PointFrame& f) {
  return det(value_of(f.hess)) / det(value_of(f.g));
}

}  // namespace

DeformationContext DeformationContext::free_c(SurfacePatch patch, double c) {
  if (!(c > 0.0)) throw DomainError("deformation constant c must be positive");
  DeformationContext ctx;
  ctx.patch_ = std::move(patch);
  ctx.mode_ = DeformMode::FreeC;
  ctx.c_ = c;
  ctx.K_ = std::numeric_limits<double>::quiet_NaN();
  return ctx;
}

DeformationContext DeformationContext::constant_K(SurfacePatch patch, double K,
                                                  double tol) {
  if (!(K > -1.0) || !(K <= 0.0))
    throw DomainError("constant-curvature mode needs K in (-1, 0], got " +
                      std::to_string(K));
  DeformationContext ctx;
  ctx.patch_ = std::move(patch);
  ctx.mode_ = DeformMode::ConstantK;
  ctx.K_ = K;
  ctx.c_ = 1.0 / (K + 1.0);

  // Coarse consistency sweep of the curvature assertion.
  double dev = 0.0;
  const Domain& d = ctx.patch_.domain;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double u = d.u0 + (d.u1 - d.u0) * i / 4.0;
      const double v = d.v0 + (d.v1 - d.v0) * j / 4.0;
      PointFrame f = frame_at(ctx.patch_, Vec2d{u, v});
      dev = std::max(dev, std::abs(f.k_ext - K));
    }
  ctx.max_dev_ = dev;
  ctx.consistent_ = dev <= tol;
  return ctx;
}

Mat2j deformed_metric(const DeformationContext& ctx, const PointFrame& f) {
  checked_kappa(ctx.c(), f.gradh2.value());
  Mat2j gt = f.g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) gt(i, j) += ctx.c() * f.dh[i] * f.dh[j];
  return gt;
}

Vec2d deformed_gradient(const DeformationContext& ctx, const PointFrame& f) {
  const double s = f.gradh2.value();
  const double factor = checked_kappa(ctx.c(), s) / ctx.c();  // 1/(1+cs)
  return Vec2d{factor * f.gradh[0].value(), factor * f.gradh[1].value()};
}

Mat2d deformed_shape_operator(const DeformationContext& ctx,
                              const PointFrame& f) {
  const double kappa = checked_kappa(ctx.c(), f.gradh2.value());
  // g(A e_i, grad h) = sum_k A^k_i dh_k
  Vec2d coef{};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      coef[i] += f.shape(k, i).value() * f.dh[k].value();
  Mat2d at;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      at(k, i) = f.shape(k, i).value() - kappa * coef[i] * f.gradh[k].value();
  return at;
}

Vec2d deformed_connection(const DeformationContext& ctx, const PointFrame& f,
                          int i, int j) {
  const double kappa = checked_kappa(ctx.c(), f.gradh2.value());
  const double hij = f.hess(i, j).value();
  Vec2d out;
  for (int k = 0; k < 2; ++k)
    out[k] = f.gamma[k](i, j).value() + kappa * hij * f.gradh[k].value();
  return out;
}

double hessian_det_identity(const DeformationContext& ctx, const PointFrame& f) {
  checked_kappa(ctx.c(), f.gradh2.value());
  const double dh2 = hessian_endo_det(f);
  const double s = f.gradh2.value();
  const double th2 = f.theta.value() * f.theta.value();
  const double r1 = std::abs(dh2 - th2 * det(value_of(f.shape)));
  const double r2 = std::abs(dh2 + (1.0 + s) * (f.k_ext + 1.0 + s));
  return std::max(r1, r2) / (1.0 + s * s);
}

double ktilde_lemma(const DeformationContext& ctx, const PointFrame& f) {
  const double s = f.gradh2.value();
  checked_kappa(ctx.c(), s);
  const double w = 1.0 + ctx.c() * s;
  return (f.k_ext * w + ctx.c() * hessian_endo_det(f)) / (w * w);
}

double ktilde_direct(const DeformationContext& ctx, const Vec2d& p) {
  PointFrame f = frame_at(ctx.patch(), p);
  return ktilde_direct(ctx, f);
}

double ktilde_direct(const DeformationContext& ctx, const PointFrame& f) {
  return gauss_curvature(deformed_metric(ctx, f));
}

double ktilde_closed_form_value(double K, double c, double s) {
  const double w = 1.0 + c * s;
  return ((1.0 - c) * K - c * (1.0 + s) * (1.0 + s)) / (w * w);
}

double ktilde_closed_form(const DeformationContext& ctx, const PointFrame& f) {
  const double s = f.gradh2.value();
  checked_kappa(ctx.c(), s);
  return ktilde_closed_form_value(f.k_ext, ctx.c(), s);
}

MetricField deformed_metric_field(const DeformationContext& ctx) {
  DeformationContext copy = ctx;
  return [copy](const Vec2d& p) {
    PointFrame f = frame_at(copy.patch(), p);
    return deformed_metric(copy, f);
  };
}

CodazziPairField deformed_pair(const DeformationContext& ctx) {
  CodazziPairField pair;
  pair.domain = ctx.patch().domain;
  pair.metric = deformed_metric_field(ctx);
  const SurfacePatch patch = ctx.patch();
  pair.second = [patch](const Vec2d& p) { return frame_at(patch, p).alpha; };
  return pair;
}

PairCurvatureRecord pair_curvature_and_bound(const DeformationContext& ctx,
                                             const PointFrame& f) {
  if (ctx.mode() != DeformMode::ConstantK)
    throw DomainError("pair-level claims require constant-curvature mode");
  if (!ctx.consistent())
    throw DomainError(
        "constant-curvature context is inconsistent with the patch "
        "(max curvature deviation " +
        std::to_string(ctx.max_K_deviation()) + ")");

  const double s = f.gradh2.value();
  const double kappa = checked_kappa(ctx.c(), s);

  PairCurvatureRecord rec{};
  rec.k_pair = det(value_of(f.alpha)) / det(value_of(deformed_metric(ctx, f)));

  // Product of the shape-operator eigenvalues via its characteristic roots.
  const double tr = trace(value_of(f.shape));
  const double dt = det(value_of(f.shape));
  const double disc = std::max(0.0, tr * tr - 4.0 * dt);
  const double l1 = 0.5 * (tr - std::sqrt(disc));
  const double l2 = 0.5 * (tr + std::sqrt(disc));
  rec.lambda_residual = std::abs(l1 * l2 * kappa + 1.0);

  const double kt = ktilde_closed_form(ctx, f);
  rec.ktilde_bound_residual = std::max(0.0, kt - (ctx.asserted_K() - 1.0));
  return rec;
}

}  // namespace h2r1
