#pragma once

#include <array>
#include <cmath>

#include "h2r1/errors.hpp"
#include "h2r1/jet_kernels.hpp"

namespace h2r1 {

enum class Axis { U = 0, V = 1 };

/// Order-3 truncated Taylor expansion of a scalar function of two chart
/// variables (u, v), centered at the evaluation point.
///
/// Coefficient layout: slot(i, j) = 4*i + j holds the Taylor coefficient
/// c_ij of u^i v^j for i + j <= 3.  The six slots with i + j > 3 are
/// structural padding and stay exactly 0.0 through every operation:
///
///          j=0   j=1   j=2   j=3
///   i=0    c00   c01   c02   c03
///   i=1    c10   c11   c12   pad
///   i=2    c20   c21   pad   pad
///   i=3    c30   pad   pad   pad
///
/// partial(i, j) = c_ij * i! * j!.  Values are immutable once built; all
/// arithmetic returns fresh jets.
class Jet3 {
 public:
  static constexpr int kOrder = 3;
  static constexpr int kSlots = kernels::kSlots;

  Jet3() : c_{} {}

  static Jet3 constant(double value) {
    check_finite(value);
    Jet3 r;
    r.c_[0] = value;
    return r;
  }

  /// Germ of the chart variable itself: value + unit linear coefficient.
  static Jet3 variable(Axis axis, double value) {
    check_finite(value);
    Jet3 r;
    r.c_[0] = value;
    r.c_[axis == Axis::U ? 4 : 1] = 1.0;
    return r;
  }

  double value() const { return c_[0]; }

  double coeff(int i, int j) const {
    check_order(i, j);
    return c_[4 * i + j];
  }

  /// Mixed partial derivative d^(i+j) f / du^i dv^j at the center.
  double partial(int i, int j) const {
    check_order(i, j);
    static constexpr double kFact[4] = {1.0, 1.0, 2.0, 6.0};
    return c_[4 * i + j] * kFact[i] * kFact[j];
  }

  /// Polynomial derivative along one axis. The result is one order shallower:
  /// its top-degree coefficients are zeroed, not estimated.
  Jet3 deriv(Axis axis) const {
    Jet3 r;
    if (axis == Axis::U) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; i + 1 + j <= 3 && j < 4; ++j)
          if (i + j <= 2) r.c_[4 * i + j] = (i + 1) * c_[4 * (i + 1) + j];
    } else {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
          if (i + j <= 2) r.c_[4 * i + j] = (j + 1) * c_[4 * i + j + 1];
    }
    return r;
  }

  const double* data() const { return c_.data(); }
  double* data() { return c_.data(); }

  friend Jet3 operator+(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int k = 0; k < kSlots; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend Jet3 operator-(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int k = 0; k < kSlots; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }
  friend Jet3 operator-(const Jet3& a) {
    Jet3 r;
    for (int k = 0; k < kSlots; ++k) r.c_[k] = -a.c_[k];
    return r;
  }
  friend Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    kernels::active().mul(a.c_.data(), b.c_.data(), r.c_.data());
    return r;
  }
  friend Jet3 operator*(const Jet3& a, double s) {
    Jet3 r;
    kernels::active().scale(s, a.c_.data(), r.c_.data());
    return r;
  }
  friend Jet3 operator*(double s, const Jet3& a) { return a * s; }
  friend Jet3 operator+(const Jet3& a, double s) {
    Jet3 r = a;
    r.c_[0] += s;
    return r;
  }
  friend Jet3 operator+(double s, const Jet3& a) { return a + s; }
  friend Jet3 operator-(const Jet3& a, double s) { return a + (-s); }
  friend Jet3 operator-(double s, const Jet3& a) { return (-a) + s; }
  friend Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }
  friend Jet3 operator/(const Jet3& a, double s) { return a * (1.0 / s); }
  friend Jet3 operator/(double s, const Jet3& b) { return reciprocal(b) * s; }

  Jet3& operator+=(const Jet3& b) { return *this = *this + b; }
  Jet3& operator-=(const Jet3& b) { return *this = *this - b; }
  Jet3& operator*=(const Jet3& b) { return *this = *this * b; }

  /// Truncated chain rule: apply a univariate analytic function given its
  /// value and first three derivatives at this jet's constant term.
  Jet3 compose(const std::array<double, 4>& f) const;

  friend Jet3 reciprocal(const Jet3& b);

 private:
  static void check_finite(double v) {
    if (!std::isfinite(v)) throw DomainError("non-finite jet coefficient");
  }
  static void check_order(int i, int j) {
    if (i < 0 || j < 0 || i + j > kOrder)
      throw DomainError("partial order exceeds jet truncation");
  }

  alignas(32) std::array<double, kSlots> c_;
};

Jet3 reciprocal(const Jet3& b);
Jet3 sqrt(const Jet3& a);
Jet3 exp(const Jet3& a);
Jet3 log(const Jet3& a);
Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);
Jet3 sinh(const Jet3& a);
Jet3 cosh(const Jet3& a);
Jet3 tanh(const Jet3& a);
Jet3 atan(const Jet3& a);
Jet3 abs(const Jet3& a);

/// Integer power by repeated multiplication, |n| <= 9. Negative n divides.
Jet3 pow_int(const Jet3& a, int n);

/// Evaluate a polynomial germ at jet arguments: sum of c_ij * du^i * dv^j.
/// Both arguments must have zero constant term (increments, not positions).
Jet3 substitute(const Jet3& poly, const Jet3& du, const Jet3& dv);

}  // namespace h2r1
