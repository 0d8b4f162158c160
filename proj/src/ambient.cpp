#include "h2r1/ambient.hpp"

#include <cmath>

#include "h2r1/errors.hpp"

namespace h2r1 {

const char* chart_name(ChartKind kind) {
  return kind == ChartKind::PoincareDisk ? "disk" : "polar";
}

bool chart_contains(ChartKind kind, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  if (kind == ChartKind::PoincareDisk) return a * a + b * b < 1.0;
  return a > 0.0;
}

void require_in_chart(ChartKind kind, double a, double b) {
  if (chart_contains(kind, a, b)) return;
  if (kind == ChartKind::PoincareDisk)
    throw DomainError("point (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") lies outside the unit disk");
  throw DomainError("polar radius " + std::to_string(a) + " is not positive");
}

Mat2j hyperbolic_metric(ChartKind kind, const Vec2j& base) {
  Mat2j g;
  if (kind == ChartKind::PoincareDisk) {
    Jet3 w = 1.0 - base[0] * base[0] - base[1] * base[1];
    if (w.value() <= 0.0)
      throw DomainError("point outside the unit disk while evaluating the metric");
    Jet3 lam = 2.0 * reciprocal(w);  // conformal factor 2/(1-x^2-y^2)
    Jet3 lam2 = lam * lam;
    g(0, 0) = lam2;
    g(1, 1) = lam2;
  } else {
    if (base[0].value() <= 0.0)
      throw DomainError("polar radius must be positive while evaluating the metric");
    g(0, 0) = Jet3::constant(1.0);
    Jet3 sh = sinh(base[0]);
    g(1, 1) = sh * sh;
  }
  return g;
}

Mat2d hyperbolic_metric_value(ChartKind kind, double a, double b) {
  Vec2j base{Jet3::constant(a), Jet3::constant(b)};
  return value_of(hyperbolic_metric(kind, base));
}

std::array<Mat2j, 2> metric_christoffels(const Mat2j& g) {
  Mat2j ginv = inverse(g);
  // dg[a](i, j) = derivative of g_ij along coordinate a
  std::array<Mat2j, 2> dg;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dg[a](i, j) = g(i, j).deriv(static_cast<Axis>(a));

  std::array<Mat2j, 2> gamma;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Jet3 acc;
        for (int l = 0; l < 2; ++l)
          acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = acc * 0.5;
      }
  return gamma;
}

double gauss_curvature(const Mat2j& g) {
  std::array<Mat2j, 2> gamma = metric_christoffels(g);
  // Components of R(e_u, e_v) e_u in the chosen convention.
  double R[2];
  for (int l = 0; l < 2; ++l) {
    double t = gamma[l](1, 0).deriv(Axis::U).value() -
               gamma[l](0, 0).deriv(Axis::V).value();
    for (int e = 0; e < 2; ++e)
      t += gamma[l](0, e).value() * gamma[e](1, 0).value() -
           gamma[l](1, e).value() * gamma[e](0, 0).value();
    R[l] = -t;
  }
  Mat2d g0 = value_of(g);
  double q = det(g0);
  if (q == 0.0) throw DomainError("degenerate metric in curvature evaluation");
  return (g0(0, 1) * R[0] + g0(1, 1) * R[1]) / q;
}

AmbientFrame AmbientFrame::along(ChartKind kind, const Vec3j& pos) {
  AmbientFrame af;
  af.chart = kind;
  af.pos = pos;
  for (int a = 0; a < 3; ++a) {
    af.fu[a] = pos[a].deriv(Axis::U);
    af.fv[a] = pos[a].deriv(Axis::V);
  }

  double x0 = pos[0].value();
  double y0 = pos[1].value();
  require_in_chart(kind, x0, y0);

  Vec2j base{pos[0], pos[1]};
  Mat2j gH = hyperbolic_metric(kind, base);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) af.G(i, j) = gH(i, j);
  af.G(2, 2) = Jet3::constant(-1.0);

  // Christoffel germs in the chart coordinates themselves, composed with the
  // map increments so that parameter derivatives see the chain rule.
  Vec2j ident{Jet3::variable(Axis::U, x0), Jet3::variable(Axis::V, y0)};
  std::array<Mat2j, 2> gammaH = metric_christoffels(hyperbolic_metric(kind, ident));
  Jet3 dx = pos[0] - x0;
  Jet3 dy = pos[1] - y0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        af.Gamma[a](b, c) = substitute(gammaH[a](b, c), dx, dy);
  return af;
}

Vec3j AmbientFrame::covariant_derivative(Axis dir, const Vec3j& field) const {
  const Vec3j& f = (dir == Axis::U) ? fu : fv;
  Vec3j out;
  // The t-row and t-columns of Gamma vanish, so only horizontal slots mix.
  for (int a = 0; a < 2; ++a) {
    Jet3 acc = field[a].deriv(dir);
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) acc += Gamma[a](b, c) * f[b] * field[c];
    out[a] = acc;
  }
  out[2] = field[2].deriv(dir);
  return out;
}

Jet3 AmbientFrame::pairing(const Vec3j& X, const Vec3j& Y) const {
  Jet3 acc;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) acc += G(a, b) * X[a] * Y[b];
  acc -= X[2] * Y[2];
  return acc;
}

double ambient_metric_product(ChartKind kind, const Vec2d& base, const Vec3d& X,
                              const Vec3d& Y) {
  Mat2d gH = hyperbolic_metric_value(kind, base[0], base[1]);
  double acc = -X[2] * Y[2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) acc += gH(a, b) * X[a] * Y[b];
  return acc;
}

Vec3d ambient_curvature(ChartKind kind, const Vec2d& base, const Vec3d& X,
                        const Vec3d& Y, const Vec3d& Z) {
  require_in_chart(kind, base[0], base[1]);
  Vec2j ident{Jet3::variable(Axis::U, base[0]), Jet3::variable(Axis::V, base[1])};
  std::array<Mat2j, 2> gammaH = metric_christoffels(hyperbolic_metric(kind, ident));

  static const Jet3 kZero;
  auto gam = [&](int d, int b, int c) -> const Jet3& {
    return (d < 2 && b < 2 && c < 2) ? gammaH[d](b, c) : kZero;
  };
  auto dgam = [&](int a, int d, int b, int c) -> double {
    if (a >= 2) return 0.0;  // nothing depends on t
    return gam(d, b, c).deriv(static_cast<Axis>(a)).value();
  };

  Vec3d out{};
  for (int d = 0; d < 3; ++d) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double r = dgam(a, d, b, c) - dgam(b, d, a, c);
          for (int e = 0; e < 3; ++e)
            r += gam(d, a, e).value() * gam(e, b, c).value() -
                 gam(d, b, e).value() * gam(e, a, c).value();
          acc += -r * X[a] * Y[b] * Z[c];
        }
    out[d] = acc;
  }
  return out;
}

}  // namespace h2r1
