#include "h2r1/rotational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "h2r1/errors.hpp"
#include "json.hpp"

namespace h2r1 {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SurfacePatch local_rotational_patch(double r, double h, double h1, double h2) {
  SurfacePatch patch;
  patch.chart = ChartKind::GeodesicPolar;
  patch.domain = Domain{0.5 * r, 1.5 * r, -1.0, 1.0};
  patch.coord[0] = [](const Vec2d& q) { return Jet3::variable(Axis::U, q[0]); };
  patch.coord[1] = [](const Vec2d& q) { return Jet3::variable(Axis::V, q[1]); };
  patch.coord[2] = [r, h, h1, h2](const Vec2d& q) {
    // Local Taylor germ of the height; the cubic term does not affect the
    // pointwise curvature and is left at zero.
    Jet3 x = Jet3::variable(Axis::U, q[0]) - r;
    return (x * (0.5 * h2) + h1) * x + h;
  };
  return patch;
}

struct State {
  double h = 0.0, dh = 0.0, len = 0.0;
};

State axpy(const State& y, double w, const State& k) {
  return State{y.h + w * k.h, y.dh + w * k.dh, y.len + w * k.len};
}

/// Right-hand side (h, h', len)' = (h', h'', sqrt(1 - h'^2)); false when the
/// constant-curvature continuation is impossible at this state.
bool rotational_deriv(double r, const State& y, double K_target,
                      double h2_limit, State& out) {
  if (!(r > 0.0)) return false;
  const double phi2 = 1.0 - y.dh * y.dh;
  if (!(phi2 > 1e-12)) return false;
  double h2;
  try {
    h2 = solve_h2(r, y.h, y.dh, K_target);
  } catch (const Error&) {
    return false;
  }
  if (!(std::abs(h2) <= h2_limit)) return false;
  out = State{y.dh, h2, std::sqrt(phi2)};
  return true;
}

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0, 500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,    0.0,         7571.0 / 16695,
                           393.0 / 640,       -92097.0 / 339200,
                           187.0 / 2100,      1.0 / 40};

struct Leg {
  std::vector<double> r, h, dh;
  double length = 0.0;
  double breakdown = kNaN;  // radius where the leg stopped early, else NaN
};

Leg integrate_leg(double r_start, State y0, double r_end, double dir,
                  double K_target, const ShootOptions& opts) {
  Leg leg;
  double r = r_start;
  State y = y0;
  leg.r.push_back(r);
  leg.h.push_back(y.h);
  leg.dh.push_back(y.dh);

  double step = opts.max_step;
  long iterations = 0;
  while (dir * (r_end - r) > opts.min_step) {
    if (++iterations > 2000000)
      throw ConditioningError("rotational integration exceeded its iteration budget");
    step = std::min(step, dir * (r_end - r));

    State k[7];
    State y5{};
    bool ok = rotational_deriv(r, y, K_target, opts.h2_limit, k[0]);
    for (int s = 1; s < 7 && ok; ++s) {
      State ys = y;
      for (int j = 0; j < s; ++j) ys = axpy(ys, dir * step * kA[s][j], k[j]);
      if (s == 6) y5 = ys;  // the seventh stage sits on the 5th-order solution
      ok = rotational_deriv(r + dir * step * kC[s], ys, K_target, opts.h2_limit,
                            k[s]);
    }

    if (!ok) {
      step *= 0.5;
      if (step < opts.min_step) {
        leg.breakdown = r;
        break;
      }
      continue;
    }

    double e_h = 0.0, e_dh = 0.0;
    for (int j = 0; j < 7; ++j) {
      e_h += (kB5[j] - kB4[j]) * k[j].h;
      e_dh += (kB5[j] - kB4[j]) * k[j].dh;
    }
    const double err = step * std::max(std::abs(e_h), std::abs(e_dh));
    const double fac = std::clamp(
        0.9 * std::pow(opts.atol / std::max(err, 1e-300), 0.2), 0.2, 5.0);

    if (err > opts.atol) {
      step = std::min(step * fac, step * 0.9);
      if (step < opts.min_step) {
        leg.breakdown = r;
        break;
      }
      continue;
    }

    r += dir * step;
    y = y5;
    leg.r.push_back(r);
    leg.h.push_back(y.h);
    leg.dh.push_back(y.dh);
    step = std::min(step * fac, opts.max_step);
  }

  leg.length = std::abs(y.len - y0.len);
  return leg;
}

void measure_patch_consistency(RotProfile& prof) {
  prof.K_error_max = kNaN;
  if (prof.r.size() < 4) return;
  SurfacePatch patch = profile_to_patch(prof);
  double worst = 0.0;
  auto probe = [&](double rr) {
    try {
      const double k = frame_at(patch, Vec2d{rr, 0.0}).k_ext;
      worst = std::max(worst, std::abs(k - prof.K_target));
    } catch (const Error&) {
      worst = std::numeric_limits<double>::infinity();
    }
  };
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    probe(prof.r[i]);
    if (i + 1 < prof.r.size()) probe(0.5 * (prof.r[i] + prof.r[i + 1]));
  }
  prof.K_error_max = worst;
}

}  // namespace

RotStart RotStart::axis() {
  RotStart s;
  s.kind = Kind::Axis;
  return s;
}

RotStart RotStart::annulus(double r0, double h0, double v0) {
  RotStart s;
  s.kind = Kind::Annulus;
  s.r0 = r0;
  s.h0 = h0;
  s.v0 = v0;
  return s;
}

double curvature_given_h2(double r, double h, double h1, double h2) {
  if (!(r > 0.0)) throw DomainError("rotational radius must be positive");
  if (!(1.0 - h1 * h1 > 0.0))
    throw NotSpacelikeError("rotational profile slope reaches the light cone", r,
                            0.0);
  SurfacePatch patch = local_rotational_patch(r, h, h1, h2);
  return frame_at(patch, Vec2d{r, 0.0}).k_ext;
}

double solve_h2(double r, double h, double h1, double K_target) {
  const double k0 = curvature_given_h2(r, h, h1, 0.0);
  const double k1 = curvature_given_h2(r, h, h1, 1.0);
  const double slope = k1 - k0;
  if (std::abs(slope) < 1e-14 * (1.0 + std::abs(k0))) {
    if (std::abs(k0 - K_target) <= 1e-10) return 0.0;
    throw NoRootError("curvature is insensitive to h'' at r = " +
                      std::to_string(r) + ", h' = " + std::to_string(h1) +
                      "; cannot reach K = " + std::to_string(K_target));
  }
  const double root = (K_target - k0) / slope;
  if (std::abs(curvature_given_h2(r, h, h1, root) - K_target) <= 1e-10)
    return root;

  // Curvature is affine in h'', so the two-point solve should land; keep a
  // bisection safeguard for pathological rounding anyway.
  auto val = [&](double x) { return curvature_given_h2(r, h, h1, x) - K_target; };
  double lo = root - 1.0, hi = root + 1.0;
  double flo = val(lo), fhi = val(hi);
  for (int i = 0; i < 80 && flo * fhi > 0.0; ++i) {
    lo = root + (lo - root) * 2.0;
    hi = root + (hi - root) * 2.0;
    flo = val(lo);
    fhi = val(hi);
  }
  if (flo * fhi > 0.0)
    throw NoRootError("no curvature-matching h'' bracket at r = " +
                      std::to_string(r));
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = val(mid);
    if (std::abs(fm) <= 1e-10) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  throw NoRootError("curvature root refinement stalled at r = " +
                    std::to_string(r));
}

RotProfile shoot(const RotStart& start, double K_target,
                 const ShootOptions& opts) {
  if (!std::isfinite(K_target)) throw DomainError("curvature target must be finite");
  if (!(opts.r_min > 0.0) || !(opts.r_max > opts.r_min))
    throw DomainError("radial span must satisfy 0 < r_min < r_max");

  RotProfile prof;
  prof.K_target = K_target;
  prof.breakdown_lo = kNaN;
  prof.breakdown_hi = kNaN;

  if (start.kind == RotStart::Kind::Axis) {
    prof.axis_start = true;
    if (K_target > -1.0)
      throw InadmissibleStartError(
          "axis start rejected for K = " + std::to_string(K_target) +
          ": a smooth axis point has Theta = -1, so det A = -(K+1) >= 0 is "
          "forced, which is impossible for K > -1");
    const double a = std::sqrt(-(K_target + 1.0));
    const double r_eps = 1e-3;
    State y0{0.5 * a * r_eps * r_eps, a * r_eps, 0.0};
    Leg up = integrate_leg(r_eps, y0, opts.r_max, +1.0, K_target, opts);
    prof.breakdown_hi = up.breakdown;
    prof.r = std::move(up.r);
    prof.h = std::move(up.h);
    prof.dh = std::move(up.dh);
    // Close the axis gap [0, r_eps] by its flat-limit length.
    prof.radial_length = up.length + r_eps;
  } else {
    if (!(start.r0 > 0.0) || !std::isfinite(start.h0) ||
        !(std::abs(start.v0) < 1.0))
      throw InadmissibleStartError(
          "annulus start needs r0 > 0, finite h0 and |v0| < 1");
    try {
      solve_h2(start.r0, start.h0, start.v0, K_target);
    } catch (const Error& e) {
      throw InadmissibleStartError(
          std::string("no constant-curvature continuation from the start: ") +
          e.what());
    }
    State y0{start.h0, start.v0, 0.0};
    Leg up = integrate_leg(start.r0, y0, opts.r_max, +1.0, K_target, opts);
    Leg down = integrate_leg(start.r0, y0, opts.r_min, -1.0, K_target, opts);
    prof.breakdown_hi = up.breakdown;
    prof.breakdown_lo = down.breakdown;
    prof.radial_length = up.length + down.length;
    // Ascending merge: the inward leg reversed, then the outward leg minus
    // its duplicate start sample.
    for (std::size_t i = down.r.size(); i-- > 0;) {
      prof.r.push_back(down.r[i]);
      prof.h.push_back(down.h[i]);
      prof.dh.push_back(down.dh[i]);
    }
    for (std::size_t i = 1; i < up.r.size(); ++i) {
      prof.r.push_back(up.r[i]);
      prof.h.push_back(up.h[i]);
      prof.dh.push_back(up.dh[i]);
    }
  }

  measure_patch_consistency(prof);
  return prof;
}

SurfacePatch profile_to_patch(const RotProfile& profile) {
  const std::size_t n = profile.r.size();
  if (n < 4)
    throw DomainError("profile interpolation needs at least 4 samples, got " +
                      std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && !(profile.r[i] < profile.r[i + 1]))
      throw DomainError("profile radii must be strictly increasing");
    if (!(1.0 - profile.dh[i] * profile.dh[i] > 0.0))
      throw NotSpacelikeError("profile sample is not spacelike", profile.r[i],
                              0.0);
  }

  auto rs = std::make_shared<std::vector<double>>(profile.r);
  auto hs = std::make_shared<std::vector<double>>(profile.h);
  auto ds = std::make_shared<std::vector<double>>(profile.dh);

  // Node second derivatives recovered from the curvature constraint lift the
  // interpolant from cubic to quintic Hermite. That keeps the patch faithful
  // through third height derivatives, which the Codazzi-pair residuals of
  // the downstream deformation checks sample; a plain cubic would leak an
  // O(step) error into them. Profiles that do not satisfy the constraint
  // (hand-written CSV imports, say) keep the cubic.
  auto cs = std::make_shared<std::vector<double>>();
  cs->reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      cs->push_back(
          solve_h2(profile.r[i], profile.h[i], profile.dh[i], profile.K_target));
    } catch (const Error&) {
      cs->clear();
      break;
    }
  }

  SurfacePatch patch;
  patch.chart = ChartKind::GeodesicPolar;
  patch.domain = Domain{rs->front(), rs->back(), 0.0, 1.0};
  patch.source = "rotational profile (" + std::to_string(n) + " samples, K = " +
                 std::to_string(profile.K_target) + ")";
  patch.coord[0] = [](const Vec2d& q) { return Jet3::variable(Axis::U, q[0]); };
  patch.coord[1] = [](const Vec2d& q) { return Jet3::variable(Axis::V, q[1]); };
  patch.coord[2] = [rs, hs, ds, cs](const Vec2d& q) {
    const std::vector<double>& r = *rs;
    const double x = q[0];
    std::size_t i =
        std::upper_bound(r.begin(), r.end(), x) - r.begin();
    i = (i == 0) ? 0 : i - 1;
    if (i + 1 >= r.size()) i = r.size() - 2;
    const double w = r[i + 1] - r[i];
    const double h0 = (*hs)[i], h1 = (*hs)[i + 1];
    const double d0 = (*ds)[i], d1 = (*ds)[i + 1];
    Jet3 dx = Jet3::variable(Axis::U, x) - r[i];
    if (cs->empty()) {
      // Cubic Hermite coefficients in the local offset from r[i].
      const double a0 = h0;
      const double a1 = d0;
      const double a2 = (3.0 * (h1 - h0) / w - 2.0 * d0 - d1) / w;
      const double a3 = (2.0 * (h0 - h1) / w + d0 + d1) / (w * w);
      return ((dx * a3 + a2) * dx + a1) * dx + a0;
    }
    // Quintic Hermite on (h, h', h'') at both interval ends.
    const double c0 = (*cs)[i], c1 = (*cs)[i + 1];
    const double a0 = h0, a1 = d0, a2 = 0.5 * c0;
    const double t0 = (h1 - (a0 + (a1 + a2 * w) * w)) / (w * w * w);
    const double t1 = (d1 - (a1 + 2.0 * a2 * w)) / (w * w);
    const double t2 = (c1 - 2.0 * a2) / w;
    const double a3 = 10.0 * t0 - 4.0 * t1 + 0.5 * t2;
    const double a4 = (-15.0 * t0 + 7.0 * t1 - t2) / w;
    const double a5 = (6.0 * t0 - 3.0 * t1 + 0.5 * t2) / (w * w);
    return (((((dx * a5 + a4) * dx + a3) * dx + a2) * dx + a1) * dx + a0);
  };
  return patch;
}

void write_profile_csv(const RotProfile& profile, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw Error("cannot open output file " + path);
  std::fprintf(fp, "r,h,dh,K_check\n");
  const std::size_t n = profile.r.size();
  std::vector<double> k_check(n, kNaN);
  if (n >= 4) {
    SurfacePatch patch = profile_to_patch(profile);
    for (std::size_t i = 0; i < n; ++i) {
      try {
        k_check[i] = frame_at(patch, Vec2d{profile.r[i], 0.0}).k_ext;
      } catch (const Error&) {
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g\n", profile.r[i], profile.h[i],
                 profile.dh[i], k_check[i]);
  std::fclose(fp);
}

std::string profile_sidecar_json(const RotProfile& profile) {
  nlohmann::ordered_json j;
  j["K_target"] = profile.K_target;
  j["start"] = profile.axis_start ? "axis" : "annulus";
  j["samples"] = profile.r.size();
  j["r_range"] = {profile.r.front(), profile.r.back()};
  j["breakdown_radius"] = {{"lo", profile.breakdown_lo},
                           {"hi", profile.breakdown_hi}};
  j["radial_length"] = profile.radial_length;
  j["K_error_max"] = profile.K_error_max;
  return j.dump(2) + "\n";
}

void write_profile_sidecar(const RotProfile& profile, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw Error("cannot open output file " + path);
  const std::string text = profile_sidecar_json(profile);
  std::fwrite(text.data(), 1, text.size(), fp);
  std::fclose(fp);
}

}  // namespace h2r1
