#include "h2r1/surface.hpp"

#include <cmath>

#include "h2r1/errors.hpp"

namespace h2r1 {
namespace {

constexpr double kEdgeSlack = 1e-12;

std::string point_str(const Vec2d& p) {
  return "(" + std::to_string(p[0]) + ", " + std::to_string(p[1]) + ")";
}

}  // namespace

bool Domain::contains(double u, double v) const {
  const double su = kEdgeSlack * (1.0 + std::abs(u0) + std::abs(u1));
  const double sv = kEdgeSlack * (1.0 + std::abs(v0) + std::abs(v1));
  return u >= u0 - su && u <= u1 + su && v >= v0 - sv && v <= v1 + sv;
}

SurfacePatch SurfacePatch::from_expressions(ChartKind chart, Domain domain,
                                            const Expression& c0,
                                            const Expression& c1,
                                            const Expression& c2,
                                            std::string source) {
  SurfacePatch patch;
  patch.chart = chart;
  patch.domain = domain;
  patch.coord[0] = [c0](const Vec2d& p) { return c0.eval(p); };
  patch.coord[1] = [c1](const Vec2d& p) { return c1.eval(p); };
  patch.coord[2] = [c2](const Vec2d& p) { return c2.eval(p); };
  patch.source = std::move(source);
  return patch;
}

SurfacePatch SurfacePatch::graph(ChartKind chart, Domain domain,
                                 const Expression& height, std::string source) {
  SurfacePatch patch;
  patch.chart = chart;
  patch.domain = domain;
  patch.coord[0] = [](const Vec2d& p) { return Jet3::variable(Axis::U, p[0]); };
  patch.coord[1] = [](const Vec2d& p) { return Jet3::variable(Axis::V, p[1]); };
  patch.coord[2] = [height](const Vec2d& p) { return height.eval(p); };
  patch.source = std::move(source);
  return patch;
}

Vec3j SurfacePatch::coords_at(const Vec2d& p) const {
  if (!domain.contains(p[0], p[1]))
    throw DomainError("parameter point " + point_str(p) +
                      " lies outside the patch domain");
  Vec3j pos;
  for (int a = 0; a < 3; ++a) pos[a] = coord[a](p);
  return pos;
}

PointFrame frame_at(const SurfacePatch& patch, const Vec2d& p) {
  PointFrame f;
  f.p = p;
  Vec3j pos = patch.coords_at(p);
  f.amb = AmbientFrame::along(patch.chart, pos);

  // Immersion check on the raw Jacobian before metric quantities exist.
  {
    Mat2d gram{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        const Vec3j& ci = (i == 0) ? f.amb.fu : f.amb.fv;
        const Vec3j& cj = (j == 0) ? f.amb.fu : f.amb.fv;
        for (int a = 0; a < 3; ++a) s += ci[a].value() * cj[a].value();
        gram(i, j) = s;
      }
    double tr = trace(gram);
    if (!(det(gram) > 1e-12 * tr * tr))
      throw NotImmersedError("coordinate derivatives are linearly dependent",
                             p[0], p[1]);
  }

  // Induced metric.
  Mat2j g;
  g(0, 0) = f.amb.pairing(f.amb.fu, f.amb.fu);
  g(0, 1) = f.amb.pairing(f.amb.fu, f.amb.fv);
  g(1, 0) = g(0, 1);
  g(1, 1) = f.amb.pairing(f.amb.fv, f.amb.fv);
  {
    Mat2d g0 = value_of(g);
    double tr = trace(g0);
    if (!(tr > 0.0) || !(det(g0) > 1e-12 * tr * tr))
      throw NotSpacelikeError("induced metric is not positive definite", p[0],
                              p[1]);
  }
  f.g = g;
  f.ginv = inverse(g);
  f.gamma = metric_christoffels(g);

  // Normal: the coordinate cross product of f_u, f_v gives a covector
  // annihilating both tangents; raise it with G^{-1} and normalize.
  {
    const Vec3j& a = f.amb.fu;
    const Vec3j& b = f.amb.fv;
    Vec3j cov{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
              a[0] * b[1] - a[1] * b[0]};
    Mat2j gH;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) gH(i, j) = f.amb.G(i, j);
    Mat2j gHinv = inverse(gH);
    Vec3j n;
    n[0] = gHinv(0, 0) * cov[0] + gHinv(0, 1) * cov[1];
    n[1] = gHinv(1, 0) * cov[0] + gHinv(1, 1) * cov[1];
    n[2] = -cov[2];  // G^{tt} = -1
    Jet3 norm2 = f.amb.pairing(n, n);
    if (!(norm2.value() < 0.0))
      throw NotSpacelikeError("normal direction fails to be timelike", p[0],
                              p[1]);
    Jet3 inv_len = reciprocal(sqrt(-norm2));
    for (int a3 = 0; a3 < 3; ++a3) n[a3] = n[a3] * inv_len;
    // theta = G(N, dt) = -N^t; orient the normal future-pointing (theta < 0).
    if (-n[2].value() > 0.0)
      for (int a3 = 0; a3 < 3; ++a3) n[a3] = -n[a3];
    f.normal = n;
    f.theta = -n[2];
  }

  // Shape operator from the Weingarten relation A e_i = -covd_i N: pair the
  // derivative of the normal against the tangent basis, then raise an index.
  // b(i, j) = g(A e_i, e_j); alpha is its symmetrization, and asymmetry
  // beyond truncation noise is a diagnostic failure.
  {
    Vec3j wu = f.amb.covariant_derivative(Axis::U, f.normal);
    Vec3j wv = f.amb.covariant_derivative(Axis::V, f.normal);
    Mat2j b;
    b(0, 0) = -f.amb.pairing(wu, f.amb.fu);
    b(0, 1) = -f.amb.pairing(wu, f.amb.fv);
    b(1, 0) = -f.amb.pairing(wv, f.amb.fu);
    b(1, 1) = -f.amb.pairing(wv, f.amb.fv);
    double scale = 1.0 + std::abs(b(0, 0).value()) + std::abs(b(0, 1).value()) +
                   std::abs(b(1, 1).value());
    if (std::abs(b(0, 1).value() - b(1, 0).value()) > 1e-9 * scale)
      throw Error("second fundamental form lost symmetry at " + point_str(p));
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        f.shape(k, i) = f.ginv(k, 0) * b(i, 0) + f.ginv(k, 1) * b(i, 1);
    Jet3 bmix = (b(0, 1) + b(1, 0)) * 0.5;
    f.alpha(0, 0) = b(0, 0);
    f.alpha(0, 1) = bmix;
    f.alpha(1, 0) = bmix;
    f.alpha(1, 1) = b(1, 1);
  }

  // Height quantities.
  f.dh[0] = f.amb.pos[2].deriv(Axis::U);
  f.dh[1] = f.amb.pos[2].deriv(Axis::V);
  f.gradh[0] = f.ginv(0, 0) * f.dh[0] + f.ginv(0, 1) * f.dh[1];
  f.gradh[1] = f.ginv(1, 0) * f.dh[0] + f.ginv(1, 1) * f.dh[1];
  f.gradh2 = f.dh[0] * f.gradh[0] + f.dh[1] * f.gradh[1];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Jet3 acc = f.dh[i].deriv(static_cast<Axis>(j));
      for (int k = 0; k < 2; ++k) acc -= f.gamma[k](i, j) * f.dh[k];
      f.hess(i, j) = acc;
    }

  f.k_ext = -f.theta.value() * f.theta.value() - det(value_of(f.shape));
  f.k_int = gauss_curvature(f.g);
  return f;
}

MetricField induced_metric_field(const SurfacePatch& patch) {
  return [patch](const Vec2d& p) { return frame_at(patch, p).g; };
}

Vec3d gauss_formula_residual(const PointFrame& f, int i, int j) {
  const Vec3j& fj = (j == 0) ? f.amb.fu : f.amb.fv;
  Vec3j acc = f.amb.covariant_derivative(static_cast<Axis>(i), fj);
  for (int k = 0; k < 2; ++k) {
    const Vec3j& fk = (k == 0) ? f.amb.fu : f.amb.fv;
    for (int a = 0; a < 3; ++a) acc[a] -= f.gamma[k](i, j) * fk[a];
  }
  for (int a = 0; a < 3; ++a) acc[a] += f.alpha(i, j) * f.normal[a];
  Vec3d out;
  for (int a = 0; a < 3; ++a) out[a] = acc[a].value();
  return out;
}

Vec3d weingarten_residual(const PointFrame& f, int i) {
  Vec3j acc = f.amb.covariant_derivative(static_cast<Axis>(i), f.normal);
  for (int k = 0; k < 2; ++k) {
    const Vec3j& fk = (k == 0) ? f.amb.fu : f.amb.fv;
    for (int a = 0; a < 3; ++a) acc[a] += f.shape(k, i) * fk[a];
  }
  Vec3d out;
  for (int a = 0; a < 3; ++a) out[a] = acc[a].value();
  return out;
}

double codazzi_residual(const PointFrame& f, const Mat2j& endo) {
  // Coordinate components of (grad_u endo)(e_v) - (grad_v endo)(e_u).
  Vec2d lhs{};
  for (int k = 0; k < 2; ++k) {
    double du = endo(k, 1).deriv(Axis::U).value();
    double dv = endo(k, 0).deriv(Axis::V).value();
    for (int l = 0; l < 2; ++l) {
      du += f.gamma[k](0, l).value() * endo(l, 1).value() -
            f.gamma[l](0, 1).value() * endo(k, l).value();
      dv += f.gamma[k](1, l).value() * endo(l, 0).value() -
            f.gamma[l](1, 0).value() * endo(k, l).value();
    }
    lhs[k] = du - dv;
  }
  // Inhomogeneity theta*(g(e_u, T)e_v - g(e_v, T)e_u) with T = -grad h,
  // so g(e_i, T) = -dh_i.
  double th = f.theta.value();
  Vec2d res{lhs[0] + th * f.dh[1].value(), lhs[1] - th * f.dh[0].value()};
  Mat2d g0 = value_of(f.g);
  double q = g0(0, 0) * res[0] * res[0] + 2.0 * g0(0, 1) * res[0] * res[1] +
             g0(1, 1) * res[1] * res[1];
  return std::sqrt(std::max(q, 0.0));
}

double codazzi_residual(const PointFrame& f) {
  return codazzi_residual(f, f.shape);
}

HeightResiduals height_identity_residuals(const PointFrame& f) {
  HeightResiduals out{};
  double th = f.theta.value();
  out.gradient = std::abs(f.gradh2.value() - (th * th - 1.0));
  out.hessian = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.hessian = std::max(
          out.hessian, std::abs(f.hess(i, j).value() - th * f.alpha(i, j).value()));
  return out;
}

Vec2d projection_defect_eigenvalues(const PointFrame& f) {
  // Pullback of g_H along the horizontal part of the immersion.
  Mat2d pull{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Vec3j& ci = (i == 0) ? f.amb.fu : f.amb.fv;
      const Vec3j& cj = (j == 0) ? f.amb.fu : f.amb.fv;
      double s = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          s += f.amb.G(a, b).value() * ci[a].value() * cj[b].value();
      pull(i, j) = s;
    }
  Mat2d diff = pull - value_of(f.g);
  return sym_eigenvalues(diff);
}

double normalization_residual(const PointFrame& f) {
  double r = std::abs(f.amb.pairing(f.normal, f.normal).value() + 1.0);
  r = std::max(r, std::abs(f.amb.pairing(f.normal, f.amb.fu).value()));
  r = std::max(r, std::abs(f.amb.pairing(f.normal, f.amb.fv).value()));
  return r;
}

}  // namespace h2r1
