#pragma once

// Data-parallel inner loops used by symbol evaluation and operator assembly.
//
// Every kernel has a scalar reference implementation and an AVX2/FMA variant.
// The variant is chosen once at startup from CPUID; setting the environment
// variable SHIFTSYM_SIMD=scalar forces the reference path. Complex arrays are
// interleaved std::complex<double> (re, im, re, im, ...).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace shiftsym::kernels {

using cplx = std::complex<double>;

/// out[j] = sum_{m=-deg}^{deg} coeffs[m+deg] * exp(i m theta[j]), theta in radians.
using TrigEvalFn = void (*)(std::span<const cplx> coeffs, std::span<const double> theta,
                            std::span<cplx> out);

/// out[l] = alpha * x[l] + beta * y[l]
using CombineFn = void (*)(cplx alpha, std::span<const cplx> x, cplx beta,
                           std::span<const cplx> y, std::span<cplx> out);

/// y[l] += alpha * x[l]
using AxpyFn = void (*)(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

/// max_l |a[l] - b[l]|
using MaxAbsDiffFn = double (*)(std::span<const cplx> a, std::span<const cplx> b);

struct KernelTable {
  std::string_view isa;
  TrigEvalFn trig_eval;
  CombineFn combine;
  AxpyFn axpy;
  MaxAbsDiffFn max_abs_diff;
};

namespace scalar {
void trig_eval(std::span<const cplx> coeffs, std::span<const double> theta, std::span<cplx> out);
void combine(cplx alpha, std::span<const cplx> x, cplx beta, std::span<const cplx> y,
             std::span<cplx> out);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);
}  // namespace scalar

namespace avx2 {
/// True when this build carries the AVX2 variant and the CPU supports it.
bool available();
void trig_eval(std::span<const cplx> coeffs, std::span<const double> theta, std::span<cplx> out);
void combine(cplx alpha, std::span<const cplx> x, cplx beta, std::span<const cplx> y,
             std::span<cplx> out);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);
}  // namespace avx2

const KernelTable& scalar_table();
/// Null when the AVX2 variant is unavailable on this machine.
const KernelTable* avx2_table();

/// The table selected for this process.
const KernelTable& active();

}  // namespace shiftsym::kernels
