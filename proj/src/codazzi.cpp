#include "h2r1/codazzi.hpp"

#include <cmath>
#include <vector>

#include "h2r1/errors.hpp"
#include "h2r1/parallel.hpp"

namespace h2r1 {
namespace {

void check_pair_forms(const Mat2d& a, const Mat2d& b, const Vec2d& p) {
  const double tra = trace(a);
  if (!(tra > 0.0) || !(det(a) > 1e-12 * tra * tra))
    throw DomainError("pair metric is degenerate at (" + std::to_string(p[0]) +
                      ", " + std::to_string(p[1]) + ")");
  const double scale =
      1.0 + std::abs(b(0, 0)) + std::abs(b(0, 1)) + std::abs(b(1, 1));
  if (std::abs(b(0, 1) - b(1, 0)) > 1e-10 * scale)
    throw DomainError("pair form lost symmetry at (" + std::to_string(p[0]) +
                      ", " + std::to_string(p[1]) + ")");
}

}  // namespace

CodazziPairField induced_pair(const SurfacePatch& patch) {
  CodazziPairField pair;
  pair.domain = patch.domain;
  pair.metric = [patch](const Vec2d& p) { return frame_at(patch, p).g; };
  pair.second = [patch](const Vec2d& p) { return frame_at(patch, p).alpha; };
  return pair;
}

double pair_extrinsic_curvature(const CodazziPairField& pair, const Vec2d& p) {
  Mat2d a = value_of(pair.metric(p));
  Mat2d b = value_of(pair.second(p));
  check_pair_forms(a, b, p);
  return det(b) / det(a);
}

Mat2d shape_endomorphism(const CodazziPairField& pair, const Vec2d& p) {
  Mat2d a = value_of(pair.metric(p));
  Mat2d b = value_of(pair.second(p));
  check_pair_forms(a, b, p);
  return inverse(a) * b;
}

double pair_codazzi_residual(const CodazziPairField& pair, const Vec2d& p) {
  return pair_codazzi_residual_forms(pair.metric(p), pair.second(p), p);
}

double pair_codazzi_residual_forms(const Mat2j& a, const Mat2j& b,
                                   const Vec2d& p) {
  check_pair_forms(value_of(a), value_of(b), p);

  Mat2j s = inverse(a) * b;
  std::array<Mat2j, 2> gamma = metric_christoffels(a);

  // Coordinate components of (grad_u S)(e_v) - (grad_v S)(e_u).
  Vec2d res{};
  for (int k = 0; k < 2; ++k) {
    double du = s(k, 1).deriv(Axis::U).value();
    double dv = s(k, 0).deriv(Axis::V).value();
    for (int l = 0; l < 2; ++l) {
      du += gamma[k](0, l).value() * s(l, 1).value() -
            gamma[l](0, 1).value() * s(k, l).value();
      dv += gamma[k](1, l).value() * s(l, 0).value() -
            gamma[l](1, 0).value() * s(k, l).value();
    }
    res[k] = du - dv;
  }
  Mat2d a0 = value_of(a);
  double q = a0(0, 0) * res[0] * res[0] + 2.0 * a0(0, 1) * res[0] * res[1] +
             a0(1, 1) * res[1] * res[1];
  return std::sqrt(std::max(q, 0.0));
}

double metric_gauss_curvature(const MetricField& metric, const Vec2d& p) {
  return gauss_curvature(metric(p));
}

ScanResult scan_field(const std::function<double(const Vec2d&)>& field,
                      const GridSpec& grid, int threads) {
  const int n = grid.count();
  if (n <= 0) throw DomainError("scan grid is empty");
  std::vector<double> values(n);
  parallel_for(n, threads, [&](int i) { values[i] = field(grid.point(i)); });

  ScanResult out;
  out.count = n;
  int imin = 0, imax = 0, iabs = 0;
  for (int i = 1; i < n; ++i) {
    if (values[i] < values[imin]) imin = i;
    if (values[i] > values[imax]) imax = i;
    if (std::abs(values[i]) < std::abs(values[iabs])) iabs = i;
  }
  out.min_value = values[imin];
  out.max_value = values[imax];
  out.inf_abs = std::abs(values[iabs]);
  out.arg_min = grid.point(imin);
  out.arg_max = grid.point(imax);
  out.arg_inf_abs = grid.point(iabs);
  return out;
}

ScanResult inf_abs_curvature_scan(const MetricField& metric,
                                  const GridSpec& grid, int threads) {
  return scan_field(
      [&](const Vec2d& p) { return metric_gauss_curvature(metric, p); }, grid,
      threads);
}

}  // namespace h2r1
