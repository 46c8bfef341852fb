#include "shiftsym/kernels.hpp"

#include <cassert>
#include <cmath>

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define SHIFTSYM_HAVE_AVX2_VARIANT 1
#include <immintrin.h>
#endif

namespace shiftsym::kernels::avx2 {

#ifdef SHIFTSYM_HAVE_AVX2_VARIANT

#define SHIFTSYM_AVX2 __attribute__((target("avx2,fma")))

namespace {

// Two interleaved complex numbers per register: [re0, im0, re1, im1].
SHIFTSYM_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

SHIFTSYM_AVX2 inline __m256d broadcast(cplx c) {
  return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
}

SHIFTSYM_AVX2 inline __m256d load2(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

SHIFTSYM_AVX2 inline void store2(cplx* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

}  // namespace

bool available() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
}

SHIFTSYM_AVX2 void trig_eval(std::span<const cplx> coeffs, std::span<const double> theta,
                             std::span<cplx> out) {
  assert(out.size() == theta.size());
  assert(coeffs.size() % 2 == 1);
  const double deg = static_cast<double>(coeffs.size() / 2);
  const std::size_t n = theta.size();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const cplx z0 = std::polar(1.0, theta[j]);
    const cplx z1 = std::polar(1.0, theta[j + 1]);
    const __m256d z = _mm256_setr_pd(z0.real(), z0.imag(), z1.real(), z1.imag());
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t m = coeffs.size(); m-- > 0;) acc = _mm256_add_pd(cmul(acc, z), broadcast(coeffs[m]));
    const cplx w0 = std::polar(1.0, -deg * theta[j]);
    const cplx w1 = std::polar(1.0, -deg * theta[j + 1]);
    store2(&out[j], cmul(acc, _mm256_setr_pd(w0.real(), w0.imag(), w1.real(), w1.imag())));
  }
  if (j < n) scalar::trig_eval(coeffs, theta.subspan(j), out.subspan(j));
}

SHIFTSYM_AVX2 void combine(cplx alpha, std::span<const cplx> x, cplx beta, std::span<const cplx> y,
                           std::span<cplx> out) {
  assert(x.size() == out.size() && y.size() == out.size());
  const __m256d va = broadcast(alpha);
  const __m256d vb = broadcast(beta);
  const std::size_t n = out.size();
  std::size_t l = 0;
  for (; l + 2 <= n; l += 2)
    store2(&out[l], _mm256_add_pd(cmul(load2(&x[l]), va), cmul(load2(&y[l]), vb)));
  for (; l < n; ++l) out[l] = alpha * x[l] + beta * y[l];
}

SHIFTSYM_AVX2 void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  const __m256d va = broadcast(alpha);
  const std::size_t n = y.size();
  std::size_t l = 0;
  for (; l + 2 <= n; l += 2) store2(&y[l], _mm256_add_pd(load2(&y[l]), cmul(load2(&x[l]), va)));
  for (; l < n; ++l) y[l] += alpha * x[l];
}

SHIFTSYM_AVX2 double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256d best = _mm256_setzero_pd();
  std::size_t l = 0;
  for (; l + 2 <= n; l += 2) {
    const __m256d d = _mm256_sub_pd(load2(&a[l]), load2(&b[l]));
    const __m256d sq = _mm256_mul_pd(d, d);
    // re^2 + im^2 lands in both lanes of each pair.
    const __m256d s = _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5));
    best = _mm256_max_pd(best, s);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::sqrt(std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3])));
  if (l < n) m = std::max(m, scalar::max_abs_diff(a.subspan(l), b.subspan(l)));
  return m;
}

#else

bool available() { return false; }
void trig_eval(std::span<const cplx> c, std::span<const double> t, std::span<cplx> o) {
  scalar::trig_eval(c, t, o);
}
void combine(cplx a, std::span<const cplx> x, cplx b, std::span<const cplx> y, std::span<cplx> o) {
  scalar::combine(a, x, b, y, o);
}
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) { scalar::axpy(a, x, y); }
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  return scalar::max_abs_diff(a, b);
}

#endif

}  // namespace shiftsym::kernels::avx2
