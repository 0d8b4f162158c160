#pragma once

namespace h2r1::kernels {

// Truncated bivariate polynomials are stored on a dense 4x4 coefficient grid,
// slot(i, j) = 4*i + j for the coefficient of u^i v^j.  Only the ten slots
// with i + j <= 3 carry data; the six padding slots are kept at exactly 0.0.
inline constexpr int kSlots = 16;

/// Arithmetic kernels over the 16-slot grid.
///
/// The truncated product is a 2D convolution: out row i is the sum over
/// p + r = i of the lane convolution of a's row p with b's row r.  Both
/// implementations accumulate contributions in one fixed order (rows p
/// ascending, lane shifts q ascending) and use fused multiply-add for every
/// term after the first, so scalar and AVX2 results are bit-identical.
/// The unit suite asserts exact equality on random inputs.
struct JetKernels {
  void (*mul)(const double* a, const double* b, double* out);  // out must not alias a or b
  void (*scale)(double s, const double* a, double* out);       // aliasing allowed
  const char* name;
};

/// Portable reference implementation. Always available.
const JetKernels& scalar();

/// AVX2+FMA implementation, or nullptr when the CPU (or build) lacks support.
const JetKernels* avx2();

/// Kernel set selected once at startup; stable for the process lifetime.
const JetKernels& active();

}  // namespace h2r1::kernels
