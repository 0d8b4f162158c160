#include "h2r1/jet_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace h2r1::kernels {
namespace {

// Lane shift toward higher degree: out[j] = y[j - Q], zero-filled below.
template <int Q>
inline __m256d shift_up(__m256d y);
template <>
inline __m256d shift_up<0>(__m256d y) { return y; }
template <>
inline __m256d shift_up<1>(__m256d y) {
  __m256d t = _mm256_permute4x64_pd(y, _MM_SHUFFLE(2, 1, 0, 0));
  return _mm256_blend_pd(t, _mm256_setzero_pd(), 0x1);
}
template <>
inline __m256d shift_up<2>(__m256d y) {
  __m256d t = _mm256_permute4x64_pd(y, _MM_SHUFFLE(1, 0, 0, 0));
  return _mm256_blend_pd(t, _mm256_setzero_pd(), 0x3);
}
template <>
inline __m256d shift_up<3>(__m256d y) {
  __m256d t = _mm256_permute4x64_pd(y, _MM_SHUFFLE(0, 0, 0, 0));
  return _mm256_blend_pd(t, _mm256_setzero_pd(), 0x7);
}

template <int Q>
inline __m256d splat(__m256d row) {
  return _mm256_permute4x64_pd(row, _MM_SHUFFLE(Q, Q, Q, Q));
}

// acc += conv(ap, br), lanes shifted q = 0..3. Matches the scalar order.
inline __m256d conv_acc(__m256d acc, __m256d ap, __m256d br) {
  acc = _mm256_fmadd_pd(splat<0>(ap), shift_up<0>(br), acc);
  acc = _mm256_fmadd_pd(splat<1>(ap), shift_up<1>(br), acc);
  acc = _mm256_fmadd_pd(splat<2>(ap), shift_up<2>(br), acc);
  acc = _mm256_fmadd_pd(splat<3>(ap), shift_up<3>(br), acc);
  return acc;
}

// First convolution of a row: the q = 0 term initializes with a multiply.
inline __m256d conv_init(__m256d ap, __m256d br) {
  __m256d acc = _mm256_mul_pd(splat<0>(ap), shift_up<0>(br));
  acc = _mm256_fmadd_pd(splat<1>(ap), shift_up<1>(br), acc);
  acc = _mm256_fmadd_pd(splat<2>(ap), shift_up<2>(br), acc);
  acc = _mm256_fmadd_pd(splat<3>(ap), shift_up<3>(br), acc);
  return acc;
}

void mul_avx2(const double* a, const double* b, double* out) {
  const __m256d a0 = _mm256_loadu_pd(a);
  const __m256d a1 = _mm256_loadu_pd(a + 4);
  const __m256d a2 = _mm256_loadu_pd(a + 8);
  const __m256d a3 = _mm256_loadu_pd(a + 12);
  const __m256d b0 = _mm256_loadu_pd(b);
  const __m256d b1 = _mm256_loadu_pd(b + 4);
  const __m256d b2 = _mm256_loadu_pd(b + 8);
  const __m256d b3 = _mm256_loadu_pd(b + 12);
  const __m256d zero = _mm256_setzero_pd();

  __m256d r0 = conv_init(a0, b0);

  __m256d r1 = conv_init(a0, b1);
  r1 = conv_acc(r1, a1, b0);
  r1 = _mm256_blend_pd(r1, zero, 0x8);

  __m256d r2 = conv_init(a0, b2);
  r2 = conv_acc(r2, a1, b1);
  r2 = conv_acc(r2, a2, b0);
  r2 = _mm256_blend_pd(r2, zero, 0xC);

  __m256d r3 = conv_init(a0, b3);
  r3 = conv_acc(r3, a1, b2);
  r3 = conv_acc(r3, a2, b1);
  r3 = conv_acc(r3, a3, b0);
  r3 = _mm256_blend_pd(r3, zero, 0xE);

  _mm256_storeu_pd(out, r0);
  _mm256_storeu_pd(out + 4, r1);
  _mm256_storeu_pd(out + 8, r2);
  _mm256_storeu_pd(out + 12, r3);
}

void scale_avx2(double s, const double* a, double* out) {
  const __m256d sv = _mm256_set1_pd(s);
  _mm256_storeu_pd(out, _mm256_mul_pd(sv, _mm256_loadu_pd(a)));
  _mm256_storeu_pd(out + 4, _mm256_mul_pd(sv, _mm256_loadu_pd(a + 4)));
  _mm256_storeu_pd(out + 8, _mm256_mul_pd(sv, _mm256_loadu_pd(a + 8)));
  _mm256_storeu_pd(out + 12, _mm256_mul_pd(sv, _mm256_loadu_pd(a + 12)));
}

}  // namespace

const JetKernels* avx2() {
  static const JetKernels k{&mul_avx2, &scale_avx2, "avx2"};
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &k : nullptr;
}

}  // namespace h2r1::kernels

#else  // non-x86 builds fall back to the scalar reference kernels

namespace h2r1::kernels {
const JetKernels* avx2() { return nullptr; }
}  // namespace h2r1::kernels

#endif
