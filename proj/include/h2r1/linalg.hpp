#pragma once

#include <array>
#include <cmath>

#include "h2r1/jet.hpp"

namespace h2r1 {

template <class T, int N>
struct Vec {
  std::array<T, N> e{};
  T& operator[](int i) { return e[i]; }
  const T& operator[](int i) const { return e[i]; }

  friend Vec operator+(const Vec& a, const Vec& b) {
    Vec r;
    for (int i = 0; i < N; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  friend Vec operator-(const Vec& a, const Vec& b) {
    Vec r;
    for (int i = 0; i < N; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
  }
  friend Vec operator-(const Vec& a) {
    Vec r;
    for (int i = 0; i < N; ++i) r.e[i] = -a.e[i];
    return r;
  }
  template <class S>
  friend Vec operator*(const Vec& a, const S& s) {
    Vec r;
    for (int i = 0; i < N; ++i) r.e[i] = a.e[i] * s;
    return r;
  }
  template <class S>
  friend Vec operator*(const S& s, const Vec& a) {
    return a * s;
  }
};

template <class T, int N>
struct Mat {
  std::array<T, N * N> e{};
  T& operator()(int i, int j) { return e[N * i + j]; }
  const T& operator()(int i, int j) const { return e[N * i + j]; }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat r;
    for (int i = 0; i < N * N; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat r;
    for (int i = 0; i < N * N; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
  }
  template <class S>
  friend Mat operator*(const Mat& a, const S& s) {
    Mat r;
    for (int i = 0; i < N * N; ++i) r.e[i] = a.e[i] * s;
    return r;
  }
  friend Vec<T, N> operator*(const Mat& a, const Vec<T, N>& x) {
    Vec<T, N> r;
    for (int i = 0; i < N; ++i) {
      T acc = a(i, 0) * x[0];
      for (int j = 1; j < N; ++j) acc += a(i, j) * x[j];
      r[i] = acc;
    }
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (int k = 1; k < N; ++k) acc += a(i, k) * b(k, j);
        r(i, j) = acc;
      }
    return r;
  }
};

using Vec2d = Vec<double, 2>;
using Vec3d = Vec<double, 3>;
using Mat2d = Mat<double, 2>;
using Mat3d = Mat<double, 3>;
using Vec2j = Vec<Jet3, 2>;
using Vec3j = Vec<Jet3, 3>;
using Mat2j = Mat<Jet3, 2>;
using Mat3j = Mat<Jet3, 3>;

template <class T>
T det(const Mat<T, 2>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

template <class T>
T trace(const Mat<T, 2>& m) {
  return m(0, 0) + m(1, 1);
}

template <class T>
Mat<T, 2> inverse(const Mat<T, 2>& m) {
  const T d = det(m);
  Mat<T, 2> r;
  r(0, 0) = m(1, 1) / d;
  r(0, 1) = -m(0, 1) / d;
  r(1, 0) = -m(1, 0) / d;
  r(1, 1) = m(0, 0) / d;
  return r;
}

inline Vec2d value_of(const Vec2j& v) { return {v[0].value(), v[1].value()}; }
inline Vec3d value_of(const Vec3j& v) {
  return {v[0].value(), v[1].value(), v[2].value()};
}
inline Mat2d value_of(const Mat2j& m) {
  Mat2d r;
  for (int i = 0; i < 4; ++i) r.e[i] = m.e[i].value();
  return r;
}
inline Mat3d value_of(const Mat3j& m) {
  Mat3d r;
  for (int i = 0; i < 9; ++i) r.e[i] = m.e[i].value();
  return r;
}

/// Eigenvalues of a symmetric 2x2, ascending.
inline Vec2d sym_eigenvalues(const Mat2d& m) {
  const double half_tr = 0.5 * (m(0, 0) + m(1, 1));
  const double half_diff = 0.5 * (m(0, 0) - m(1, 1));
  const double off = 0.5 * (m(0, 1) + m(1, 0));
  const double disc = std::sqrt(std::max(0.0, half_diff * half_diff + off * off));
  return Vec2d{half_tr - disc, half_tr + disc};
}

inline double dot(const Vec3d& a, const Vec3d& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

inline double norm(const Vec2d& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1]);
}

}  // namespace h2r1
