#include <doctest.h>

#include <cmath>

#include "h2r1/ambient.hpp"
#include "oracles.hpp"

using namespace h2r1;

namespace {

Mat2j disk_metric_at(double x, double y) {
  return hyperbolic_metric(ChartKind::PoincareDisk,
                           {Jet3::variable(Axis::U, x), Jet3::variable(Axis::V, y)});
}

Mat2j polar_metric_at(double r, double th) {
  return hyperbolic_metric(ChartKind::GeodesicPolar,
                           {Jet3::variable(Axis::U, r), Jet3::variable(Axis::V, th)});
}

double lam2(double x, double y) {
  const double w = 1.0 - x * x - y * y;
  return 4.0 / (w * w);
}

}  // namespace

TEST_SUITE("ambient") {

TEST_CASE("chart membership") {
  CHECK(chart_contains(ChartKind::PoincareDisk, 0.3, -0.9));
  CHECK(!chart_contains(ChartKind::PoincareDisk, 0.8, 0.7));
  CHECK(chart_contains(ChartKind::GeodesicPolar, 0.1, 42.0));
  CHECK(!chart_contains(ChartKind::GeodesicPolar, 0.0, 0.0));
  CHECK_NOTHROW(require_in_chart(ChartKind::PoincareDisk, 0.0, 0.0));
  CHECK_THROWS_AS(require_in_chart(ChartKind::PoincareDisk, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(require_in_chart(ChartKind::GeodesicPolar, -1.0, 0.0), DomainError);
}

TEST_CASE("disk metric matches the conformal closed form, jets included") {
  const double pts[][2] = {{0.0, 0.0}, {0.3, -0.2}, {-0.55, 0.4}};
  for (auto& p : pts) {
    Mat2j g = disk_metric_at(p[0], p[1]);
    CHECK(g(0, 0).value() == doctest::Approx(lam2(p[0], p[1])).epsilon(1e-14));
    CHECK(g(0, 1).value() == 0.0);
    CHECK(g(1, 0).value() == 0.0);
    CHECK(g(1, 1).value() == doctest::Approx(lam2(p[0], p[1])).epsilon(1e-14));
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) {
        const double fd = oracles::partial_fd(lam2, i, j, p[0], p[1], 5e-3);
        CHECK(std::abs(g(0, 0).partial(i, j) - fd) <= 2e-6 * (1.0 + std::abs(fd)));
      }
  }
  CHECK(hyperbolic_metric_value(ChartKind::PoincareDisk, 0.3, -0.2)(0, 0) ==
        doctest::Approx(lam2(0.3, -0.2)));
}

TEST_CASE("polar metric is dr^2 + sinh(r)^2 dtheta^2") {
  Mat2j g = polar_metric_at(1.3, 0.7);
  CHECK(g(0, 0).value() == 1.0);
  CHECK(g(1, 1).value() ==
        doctest::Approx(std::sinh(1.3) * std::sinh(1.3)).epsilon(1e-15));
  CHECK(g(1, 1).partial(1, 0) ==
        doctest::Approx(2.0 * std::sinh(1.3) * std::cosh(1.3)).epsilon(1e-13));
  CHECK(g(1, 1).partial(0, 1) == 0.0);
}

TEST_CASE("disk Christoffel symbols match the conformal closed form") {
  const double pts[][2] = {{0.25, 0.1}, {-0.3, -0.45}, {0.0, 0.6}};
  for (auto& p : pts) {
    auto gamma = metric_christoffels(disk_metric_at(p[0], p[1]));
    auto want = oracles::disk_christoffels(p[0], p[1]);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          CHECK(gamma[k](i, j).value() ==
                doctest::Approx(want[k][2 * i + j]).epsilon(1e-13));
  }
}

TEST_CASE("polar Christoffel symbols match their closed form") {
  const double r = 0.9;
  auto gamma = metric_christoffels(polar_metric_at(r, 2.0));
  CHECK(gamma[0](0, 0).value() == doctest::Approx(0.0));
  CHECK(gamma[0](1, 1).value() ==
        doctest::Approx(-std::sinh(r) * std::cosh(r)).epsilon(1e-14));
  CHECK(gamma[1](0, 1).value() ==
        doctest::Approx(std::cosh(r) / std::sinh(r)).epsilon(1e-14));
  CHECK(gamma[1](1, 0).value() == doctest::Approx(gamma[1](0, 1).value()));
  CHECK(gamma[1](0, 0).value() == doctest::Approx(0.0));
  CHECK(gamma[0](0, 1).value() == doctest::Approx(0.0));
}

TEST_CASE("both chart metrics have curvature -1 to machine precision") {
  const double pts[][2] = {{0.0, 0.0}, {0.45, -0.3}, {-0.2, 0.65}};
  for (auto& p : pts)
    CHECK(gauss_curvature(disk_metric_at(p[0], p[1])) ==
          doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(gauss_curvature(polar_metric_at(0.6, 1.0)) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(gauss_curvature(polar_metric_at(2.4, -3.0)) ==
        doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("curvature sign convention gives +1 on the round sphere") {
  // Latitude/longitude germ du^2 + cos(u)^2 dv^2 away from the equatorial
  // poles; this pins the orientation of the curvature tensor convention.
  for (double u0 : {0.2, -0.7, 1.1}) {
    Jet3 u = Jet3::variable(Axis::U, u0);
    Mat2j g;
    g(0, 0) = Jet3::constant(1.0);
    g(1, 1) = cos(u) * cos(u);
    CHECK(gauss_curvature(g) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("generic metric curvature agrees with the Brioschi oracle") {
  auto E = [](double u, double v) { return 2.0 + std::sin(u + v); };
  auto F = [](double u, double v) { return 0.3 * u * v; };
  auto G = [](double u, double v) { return 2.0 + std::cos(u - v) + 0.5 * u * u; };
  const double pts[][2] = {{0.2, -0.3}, {-0.4, 0.1}, {0.0, 0.5}};
  for (auto& p : pts) {
    Jet3 u = Jet3::variable(Axis::U, p[0]);
    Jet3 v = Jet3::variable(Axis::V, p[1]);
    Mat2j g;
    g(0, 0) = 2.0 + sin(u + v);
    g(0, 1) = 0.3 * u * v;
    g(1, 0) = g(0, 1);
    g(1, 1) = 2.0 + cos(u - v) + 0.5 * u * u;
    const double want = oracles::brioschi_curvature(E, F, G, p[0], p[1], 5e-3);
    CHECK(gauss_curvature(g) == doctest::Approx(want).epsilon(5e-7));
  }
}

TEST_CASE("ambient frame along a map: structure of G and Gamma") {
  Jet3 u = Jet3::variable(Axis::U, 0.1);
  Jet3 v = Jet3::variable(Axis::V, 0.2);
  Vec3j pos{0.25 * u + 0.1 * v * v, 0.3 * v - 0.1 * u * u, 0.2 * u * v};
  AmbientFrame fr = AmbientFrame::along(ChartKind::PoincareDisk, pos);

  for (int a = 0; a < 3; ++a) {
    CHECK(fr.fu[a].value() == doctest::Approx(pos[a].deriv(Axis::U).value()));
    CHECK(fr.fv[a].value() == doctest::Approx(pos[a].deriv(Axis::V).value()));
  }
  CHECK(fr.G(2, 2).value() == -1.0);
  CHECK(fr.G(0, 2).value() == 0.0);
  CHECK(fr.G(1, 2).value() == 0.0);
  const double l2 = lam2(pos[0].value(), pos[1].value());
  CHECK(fr.G(0, 0).value() == doctest::Approx(l2).epsilon(1e-13));
  CHECK(fr.G(1, 1).value() == doctest::Approx(l2).epsilon(1e-13));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        if (a == 2 || b == 2 || c == 2) CHECK(fr.Gamma[a](b, c).value() == 0.0);
  // Horizontal Christoffels are the chart symbols evaluated along the map.
  auto want = oracles::disk_christoffels(pos[0].value(), pos[1].value());
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(fr.Gamma[k](i, j).value() ==
              doctest::Approx(want[k][2 * i + j]).epsilon(1e-13));
}

TEST_CASE("covariant derivative is metric compatible along the map") {
  Jet3 u = Jet3::variable(Axis::U, -0.15);
  Jet3 v = Jet3::variable(Axis::V, 0.25);
  Vec3j pos{0.3 * u + 0.05 * v * v * u, 0.2 * v - 0.1 * u * v, 0.15 * u + 0.1 * v};
  AmbientFrame fr = AmbientFrame::along(ChartKind::PoincareDisk, pos);

  const Vec3j fields[] = {fr.fu, fr.fv,
                          Vec3j{Jet3::constant(0), Jet3::constant(0), Jet3::constant(1)}};
  for (Axis dir : {Axis::U, Axis::V})
    for (const Vec3j& X : fields)
      for (const Vec3j& Y : fields) {
        const double lhs = fr.pairing(X, Y).deriv(dir).value();
        const double rhs = fr.pairing(fr.covariant_derivative(dir, X), Y).value() +
                           fr.pairing(X, fr.covariant_derivative(dir, Y)).value();
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
      }
}

TEST_CASE("covariant derivatives of coordinate fields are torsion free") {
  Jet3 u = Jet3::variable(Axis::U, 0.2);
  Jet3 v = Jet3::variable(Axis::V, -0.1);
  Vec3j pos{0.2 * u * u + 0.3 * v, 0.4 * u - 0.2 * v * v, 0.1 * u * v};
  AmbientFrame fr = AmbientFrame::along(ChartKind::PoincareDisk, pos);
  Vec3j lhs = fr.covariant_derivative(Axis::U, fr.fv);
  Vec3j rhs = fr.covariant_derivative(Axis::V, fr.fu);
  for (int a = 0; a < 3; ++a)
    CHECK(std::abs(lhs[a].value() - rhs[a].value()) < 1e-13);
}

TEST_CASE("ambient curvature: hyperbolic block, flat time factor") {
  const Vec2d base{0.15, -0.2};
  const ChartKind kind = ChartKind::PoincareDisk;
  const Vec3d ex{1, 0, 0}, ey{0, 1, 0}, et{0, 0, 1};

  // Horizontal sectional curvature -1 in the library sign convention.
  Vec3d r = ambient_curvature(kind, base, ex, ey, ex);
  const double num = ambient_metric_product(kind, base, r, ey);
  const double den =
      ambient_metric_product(kind, base, ex, ex) *
          ambient_metric_product(kind, base, ey, ey) -
      std::pow(ambient_metric_product(kind, base, ex, ey), 2);
  CHECK(num / den == doctest::Approx(-1.0).epsilon(1e-11));

  // Any slot holding the parallel time direction kills the curvature.
  for (const Vec3d& z : {ex, ey, et}) {
    Vec3d a = ambient_curvature(kind, base, et, ey, z);
    Vec3d b = ambient_curvature(kind, base, ex, et, z);
    CHECK(norm(a) < 1e-12);
    CHECK(norm(b) < 1e-12);
  }
  Vec3d c = ambient_curvature(kind, base, ex, ey, et);
  CHECK(norm(c) < 1e-12);

  // Same structure in the polar chart.
  Vec3d rp = ambient_curvature(ChartKind::GeodesicPolar, {0.8, 0.5}, ex, ey, ex);
  const double nump = ambient_metric_product(ChartKind::GeodesicPolar, {0.8, 0.5}, rp, ey);
  const double denp = std::sinh(0.8) * std::sinh(0.8);
  CHECK(nump / denp == doctest::Approx(-1.0).epsilon(1e-11));
}

}  // TEST_SUITE
