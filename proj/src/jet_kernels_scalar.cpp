#include "h2r1/jet_kernels.hpp"

#include <cmath>

namespace h2r1::kernels {
namespace {

// Reference kernels. These mirror the AVX2 lane algebra exactly: row i of the
// output is built lane-wise in the order (p = 0, q = 0..3), (p = 1, q = 0..3),
// ..., where p indexes a's row and q the lane shift applied to b's row i - p.
// The (p = 0, q = 0) term is a plain multiply, every later term a single
// std::fma, including terms whose shifted operand is a structural zero.  That
// keeps rounding (and signed zeros) identical to the vector path.

void mul_scalar(const double* a, const double* b, double* out) {
  for (int i = 0; i <= 3; ++i) {
    double acc[4];
    for (int j = 0; j < 4; ++j) acc[j] = a[0] * b[4 * i + j];
    for (int p = 0; p <= i; ++p) {
      const double* ap = a + 4 * p;
      const double* br = b + 4 * (i - p);
      for (int q = (p == 0 ? 1 : 0); q <= 3; ++q) {
        const double s = ap[q];
        for (int j = 0; j < 4; ++j) {
          const double shifted = (j >= q) ? br[j - q] : 0.0;
          acc[j] = std::fma(s, shifted, acc[j]);
        }
      }
    }
    for (int j = 0; j < 4; ++j) out[4 * i + j] = (i + j <= 3) ? acc[j] : 0.0;
  }
}

void scale_scalar(double s, const double* a, double* out) {
  for (int k = 0; k < kSlots; ++k) out[k] = s * a[k];
}

}  // namespace

const JetKernels& scalar() {
  static const JetKernels k{&mul_scalar, &scale_scalar, "scalar"};
  return k;
}

const JetKernels& active() {
  static const JetKernels& chosen = [&]() -> const JetKernels& {
    if (const JetKernels* v = avx2()) return *v;
    return scalar();
  }();
  return chosen;
}

}  // namespace h2r1::kernels
