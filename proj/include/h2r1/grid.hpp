#pragma once

#include "h2r1/linalg.hpp"

namespace h2r1 {

/// Row-major rectangular sampling grid with inclusive endpoints.
/// nu = 1 (or nv = 1) degenerates to the lower bound of that axis.
struct GridSpec {
  double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;
  int nu = 1, nv = 1;

  int count() const { return nu * nv; }

  Vec2d point(int index) const {
    const int i = index / nv;
    const int j = index % nv;
    const double u = (nu > 1) ? u0 + (u1 - u0) * i / (nu - 1) : u0;
    const double v = (nv > 1) ? v0 + (v1 - v0) * j / (nv - 1) : v0;
    return Vec2d{u, v};
  }
};

}  // namespace h2r1
