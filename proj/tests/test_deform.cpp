#include <doctest.h>

#include <cmath>

#include "h2r1/deform.hpp"
#include "h2r1/rotational.hpp"

using namespace h2r1;

namespace {

SurfacePatch demo_patch() {
  Domain dom{-0.3, 0.3, -0.3, 0.3};
  return SurfacePatch::graph(
      ChartKind::PoincareDisk, dom,
      Expression::parse("0.2*sinh(u)*cos(v)", Expression::uv_vars()));
}

SurfacePatch slice() {
  Domain dom{-0.4, 0.4, -0.4, 0.4};
  return SurfacePatch::graph(ChartKind::PoincareDisk, dom,
                             Expression::parse("0.1", Expression::uv_vars()));
}

// Constant-curvature rotational band, well clear of its fold radius.
SurfacePatch constant_k_band(double K) {
  ShootOptions opts;
  opts.r_min = 0.8;
  opts.r_max = 1.0;
  opts.max_step = 2e-3;
  RotProfile prof = shoot(RotStart::annulus(1.0, 0.0, 0.2), K, opts);
  return profile_to_patch(prof);
}

}  // namespace

TEST_SUITE("deform") {

TEST_CASE("context factories validate their parameters") {
  SurfacePatch patch = slice();
  CHECK_THROWS_AS(DeformationContext::free_c(patch, 0.0), DomainError);
  CHECK_THROWS_AS(DeformationContext::free_c(patch, -2.0), DomainError);
  CHECK_THROWS_AS(DeformationContext::constant_K(patch, 0.5), DomainError);
  CHECK_THROWS_AS(DeformationContext::constant_K(patch, -1.0), DomainError);
  CHECK_THROWS_AS(DeformationContext::constant_K(patch, -1.5), DomainError);

  DeformationContext ctx = DeformationContext::free_c(patch, 2.0);
  CHECK(ctx.c() == 2.0);
  CHECK(ctx.mode() == DeformMode::FreeC);
  CHECK(ctx.consistent());
  CHECK(std::isnan(ctx.asserted_K()));
}

TEST_CASE("a slice deforms trivially") {
  DeformationContext ctx = DeformationContext::free_c(slice(), 3.0);
  PointFrame f = frame_at(ctx.patch(), {0.2, -0.3});
  Mat2j gt = deformed_metric(ctx, f);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < Jet3::kSlots; ++k)
      CHECK(std::abs(gt.e[i].data()[k] - f.g.e[i].data()[k]) < 1e-15);
  CHECK(ktilde_lemma(ctx, f) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ktilde_direct(ctx, f) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ktilde_closed_form(ctx, f) == doctest::Approx(-1.0).epsilon(1e-12));
  Mat2d at = deformed_shape_operator(ctx, f);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(at.e[i]) < 1e-14);
  Vec2d gr = deformed_gradient(ctx, f);
  CHECK(std::abs(gr[0]) < 1e-15);
  CHECK(std::abs(gr[1]) < 1e-15);
}

TEST_CASE("deformed metric is the rank-one height enlargement") {
  DeformationContext ctx = DeformationContext::free_c(demo_patch(), 1.7);
  const Vec2d pts[] = {{0.11, -0.23}, {-0.27, 0.04}};
  for (const Vec2d& p : pts) {
    PointFrame f = frame_at(ctx.patch(), p);
    Mat2j gt = deformed_metric(ctx, f);

    // g~ - g = c dh (x) dh, slot by slot.
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Jet3 want = f.dh[i] * f.dh[j] * 1.7;
        for (int k = 0; k < Jet3::kSlots; ++k)
          CHECK(std::abs((gt(i, j) - f.g(i, j)).data()[k] - want.data()[k]) <
                1e-13 * (1.0 + std::abs(want.data()[k])));
      }

    // Volume ratio and length monotonicity.
    const double s = f.gradh2.value();
    CHECK(det(value_of(gt)) ==
          doctest::Approx(det(value_of(f.g)) * (1.0 + 1.7 * s)).epsilon(1e-12));
    const Vec2d dirs[] = {{1.0, 0.0}, {0.3, -1.2}, {0.7, 0.7}};
    for (const Vec2d& x : dirs) {
      const Mat2d g0 = value_of(f.g), g1 = value_of(gt);
      const double q0 = g0(0, 0) * x[0] * x[0] + 2 * g0(0, 1) * x[0] * x[1] +
                        g0(1, 1) * x[1] * x[1];
      const double q1 = g1(0, 0) * x[0] * x[0] + 2 * g1(0, 1) * x[0] * x[1] +
                        g1(1, 1) * x[1] * x[1];
      CHECK(q1 >= q0 - 1e-15);
    }
  }
}

TEST_CASE("deformed gradient and shape operator satisfy their defining laws") {
  DeformationContext ctx = DeformationContext::free_c(demo_patch(), 1.0);
  PointFrame f = frame_at(ctx.patch(), {0.21, -0.13});
  Mat2d gt = value_of(deformed_metric(ctx, f));

  // g~(grad~ h, e_i) = dh_i.
  Vec2d gr = deformed_gradient(ctx, f);
  for (int i = 0; i < 2; ++i) {
    const double got = gt(i, 0) * gr[0] + gt(i, 1) * gr[1];
    CHECK(got == doctest::Approx(f.dh[i].value()).epsilon(1e-12));
  }

  // alpha(e_i, e_j) = g~(A~ e_i, e_j).
  Mat2d at = deformed_shape_operator(ctx, f);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double got = gt(j, 0) * at(0, i) + gt(j, 1) * at(1, i);
      CHECK(got == doctest::Approx(f.alpha(i, j).value()).epsilon(1e-11));
    }

  // Connection correction reproduces the Christoffel symbols of g~ jets.
  Mat2j gtj = deformed_metric(ctx, f);
  auto direct = metric_christoffels(gtj);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Vec2d corr = deformed_connection(ctx, f, i, j);
      for (int k = 0; k < 2; ++k)
        CHECK(corr[k] == doctest::Approx(direct[k](i, j).value()).epsilon(1e-10));
    }
}

TEST_CASE("three curvature paths for the deformed metric agree pointwise") {
  for (double c : {0.4, 1.0, 2.5}) {
    DeformationContext ctx = DeformationContext::free_c(demo_patch(), c);
    const Vec2d pts[] = {{0.0, 0.0}, {0.19, -0.26}, {-0.11, 0.14}};
    for (const Vec2d& p : pts) {
      PointFrame f = frame_at(ctx.patch(), p);
      const double lemma = ktilde_lemma(ctx, f);
      const double direct = ktilde_direct(ctx, f);
      const double closed = ktilde_closed_form(ctx, f);
      CHECK(lemma == doctest::Approx(direct).epsilon(1e-10));
      CHECK(closed == doctest::Approx(lemma).epsilon(1e-10));
      CHECK(ktilde_direct(ctx, p) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(hessian_det_identity(ctx, f) < 1e-12);
    }
  }
}

TEST_CASE("closed form equals the lemma with the Hessian determinant eliminated") {
  // ((1-c)K - c(1+s)^2) (1+cs)^-2 must coincide with
  // (K(1+cs) - c(1+s)(K+1+s)) (1+cs)^-2 identically.
  for (double K : {-0.9, -0.5, -0.1, 0.0})
    for (double c : {0.3, 1.0, 4.0})
      for (double s = 0.0; s <= 5.0; s += 0.25) {
        const double lhs = ktilde_closed_form_value(K, c, s);
        const double rhs =
            (K * (1.0 + c * s) - c * (1.0 + s) * (K + 1.0 + s)) /
            ((1.0 + c * s) * (1.0 + c * s));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
      }
}

TEST_CASE("with c = 1/(K+1) the deformed curvature grows from K-1 toward -(K+1)") {
  // At s = 0 the closed form gives exactly K - 1; for K < 0 and s > 0 it
  // increases strictly and approaches -(K+1) from below, never reaching it.
  // The absolute curvature therefore stays >= min(|K-1|, K+1) > 0.
  for (double K : {-0.9, -0.5, -0.2}) {
    const double c = 1.0 / (K + 1.0);
    CHECK(ktilde_closed_form_value(K, c, 0.0) ==
          doctest::Approx(K - 1.0).epsilon(1e-14));
    double prev = K - 1.0;
    for (double s = 0.1; s <= 40.0; s += 0.1) {
      const double kt = ktilde_closed_form_value(K, c, s);
      CHECK(kt > prev);
      CHECK(kt < -(K + 1.0));
      prev = kt;
    }
    CHECK(ktilde_closed_form_value(K, c, 1e6) ==
          doctest::Approx(-(K + 1.0)).epsilon(1e-4));
  }
  // K = 0 degenerates: c = 1 makes the closed form identically -1, so the
  // endpoints K - 1 and -(K+1) coincide.
  for (double s = 0.0; s <= 40.0; s += 0.5)
    CHECK(ktilde_closed_form_value(0.0, 1.0, s) ==
          doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("constant-curvature context verifies its assertion on the patch") {
  SurfacePatch band = constant_k_band(-0.5);
  DeformationContext good = DeformationContext::constant_K(band, -0.5);
  CHECK(good.consistent());
  CHECK(good.max_K_deviation() <= 1e-5);
  CHECK(good.c() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(good.asserted_K() == -0.5);

  DeformationContext wrong = DeformationContext::constant_K(band, -0.3);
  CHECK(!wrong.consistent());
  CHECK(wrong.max_K_deviation() > 1e-2);

  PointFrame f = frame_at(band, {0.9, 0.5});
  CHECK_THROWS_AS(pair_curvature_and_bound(wrong, f), DomainError);
  DeformationContext free = DeformationContext::free_c(band, 2.0);
  CHECK_THROWS_AS(pair_curvature_and_bound(free, f), DomainError);
}

TEST_CASE("pair-level record on a genuine constant-curvature band") {
  SurfacePatch band = constant_k_band(-0.5);
  DeformationContext ctx = DeformationContext::constant_K(band, -0.5);
  REQUIRE(ctx.consistent());
  const Vec2d pts[] = {{0.85, 0.3}, {0.95, 0.7}};
  for (const Vec2d& p : pts) {
    PointFrame f = frame_at(band, p);
    PairCurvatureRecord rec = pair_curvature_and_bound(ctx, f);
    // det alpha / det g~ collapses to -(K+1) for constant K.
    CHECK(rec.k_pair == doctest::Approx(-0.5).epsilon(2e-5));
    CHECK(rec.lambda_residual <= 2e-5);
    // The curvature of g~ genuinely exceeds K - 1 wherever grad h != 0.
    CHECK(rec.ktilde_bound_residual > 0.0);
    const double kt = ktilde_closed_form(ctx, f);
    CHECK(kt > -1.5);
    CHECK(kt < -0.5);
  }
}

TEST_CASE("extreme stiffness is reported as a conditioning failure") {
  DeformationContext ctx = DeformationContext::free_c(demo_patch(), 1e18);
  PointFrame f = frame_at(ctx.patch(), {0.25, 0.1});
  REQUIRE(f.gradh2.value() > 1e-4);  // c*s overflows the guard threshold
  CHECK_THROWS_AS(deformed_gradient(ctx, f), ConditioningError);
  CHECK_THROWS_AS(deformed_shape_operator(ctx, f), ConditioningError);
}

}  // TEST_SUITE
