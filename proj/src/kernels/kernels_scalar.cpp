#include "shiftsym/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace shiftsym::kernels::scalar {

void trig_eval(std::span<const cplx> coeffs, std::span<const double> theta, std::span<cplx> out) {
  assert(out.size() == theta.size());
  assert(coeffs.size() % 2 == 1);
  const auto deg = static_cast<long>(coeffs.size() / 2);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    // Horner in z = e^{i theta}, then rotate back by z^{-deg}.
    const cplx z = std::polar(1.0, theta[j]);
    cplx acc{0.0, 0.0};
    for (std::size_t m = coeffs.size(); m-- > 0;) acc = acc * z + coeffs[m];
    out[j] = acc * std::polar(1.0, -static_cast<double>(deg) * theta[j]);
  }
}

void combine(cplx alpha, std::span<const cplx> x, cplx beta, std::span<const cplx> y,
             std::span<cplx> out) {
  assert(x.size() == out.size() && y.size() == out.size());
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = alpha * x[l] + beta * y[l];
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  for (std::size_t l = 0; l < y.size(); ++l) y[l] += alpha * x[l];
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    const double dr = a[l].real() - b[l].real();
    const double di = a[l].imag() - b[l].imag();
    m = std::max(m, std::sqrt(dr * dr + di * di));
  }
  return m;
}

}  // namespace shiftsym::kernels::scalar
