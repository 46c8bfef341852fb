#include <cstdlib>
#include <string_view>

#include "shiftsym/kernels.hpp"

namespace shiftsym::kernels {

const KernelTable& scalar_table() {
  static const KernelTable t{"scalar", &scalar::trig_eval, &scalar::combine, &scalar::axpy,
                             &scalar::max_abs_diff};
  return t;
}

const KernelTable* avx2_table() {
  static const KernelTable t{"avx2", &avx2::trig_eval, &avx2::combine, &avx2::axpy,
                             &avx2::max_abs_diff};
  return avx2::available() ? &t : nullptr;
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("SHIFTSYM_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace shiftsym::kernels
