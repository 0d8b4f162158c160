#include "h2r1/jet.hpp"

namespace h2r1 {

Jet3 Jet3::compose(const std::array<double, 4>& f) const {
  // Horner on the nilpotent part w = this - value(): w^4 truncates to zero,
  // so f(a) = f0 + f1 w + f2/2 w^2 + f3/6 w^3 exactly at this order.
  Jet3 w = *this;
  w.c_[0] = 0.0;
  Jet3 acc = Jet3::constant(f[3] / 6.0);
  acc = acc * w;
  acc.c_[0] += f[2] / 2.0;
  acc = acc * w;
  acc.c_[0] += f[1];
  acc = acc * w;
  acc.c_[0] += f[0];
  return acc;
}

Jet3 reciprocal(const Jet3& b) {
  const double b0 = b.value();
  if (std::abs(b0) < 1e-300)
    throw DomainError("jet division by (near-)zero constant term");
  const double i1 = 1.0 / b0;
  const double i2 = i1 * i1;
  return b.compose({i1, -i2, 2.0 * i2 * i1, -6.0 * i2 * i2});
}

Jet3 sqrt(const Jet3& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DomainError("jet sqrt of non-positive constant term");
  const double r = std::sqrt(a0);
  const double i = 1.0 / a0;
  return a.compose({r, 0.5 * r * i, -0.25 * r * i * i, 0.375 * r * i * i * i});
}

Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.value());
  return a.compose({e, e, e, e});
}

Jet3 log(const Jet3& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DomainError("jet log of non-positive constant term");
  const double i = 1.0 / a0;
  return a.compose({std::log(a0), i, -i * i, 2.0 * i * i * i});
}

Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return a.compose({s, c, -s, -c});
}

Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return a.compose({c, -s, -c, s});
}

Jet3 sinh(const Jet3& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  return a.compose({s, c, s, c});
}

Jet3 cosh(const Jet3& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  return a.compose({c, s, c, s});
}

Jet3 tanh(const Jet3& a) {
  const double t = std::tanh(a.value());
  const double d = 1.0 - t * t;  // sech^2
  return a.compose({t, d, -2.0 * t * d, -2.0 * d * (1.0 - 3.0 * t * t)});
}

Jet3 atan(const Jet3& a) {
  const double x = a.value();
  const double d = 1.0 / (1.0 + x * x);
  return a.compose(
      {std::atan(x), d, -2.0 * x * d * d, (6.0 * x * x - 2.0) * d * d * d});
}

Jet3 abs(const Jet3& a) {
  const double x = a.value();
  if (x == 0.0) throw DomainError("jet abs at zero is not differentiable");
  const double s = x > 0.0 ? 1.0 : -1.0;
  return a.compose({std::abs(x), s, 0.0, 0.0});
}

Jet3 pow_int(const Jet3& a, int n) {
  if (n < -9 || n > 9)
    throw DomainError("jet integer power outside [-9, 9]");
  if (n == 0) return Jet3::constant(1.0);
  if (n < 0) return reciprocal(pow_int(a, -n));
  Jet3 r = a;
  for (int k = 1; k < n; ++k) r = r * a;
  return r;
}

Jet3 substitute(const Jet3& poly, const Jet3& du, const Jet3& dv) {
  if (du.value() != 0.0 || dv.value() != 0.0)
    throw DomainError("substitute expects increment jets with zero value");
  Jet3 up[4], vp[4];
  up[0] = Jet3::constant(1.0);
  vp[0] = Jet3::constant(1.0);
  up[1] = du;
  vp[1] = dv;
  up[2] = du * du;
  vp[2] = dv * dv;
  up[3] = up[2] * du;
  vp[3] = vp[2] * dv;
  Jet3 acc;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j) {
      const double c = poly.coeff(i, j);
      if (c == 0.0) continue;
      acc += (up[i] * vp[j]) * c;
    }
  return acc;
}

}  // namespace h2r1
