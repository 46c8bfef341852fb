#pragma once

#include <cstddef>
#include <functional>

namespace shiftsym {

/// Worker count from SHIFTSYM_THREADS (default 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers. Bodies must not
/// share mutable state; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace shiftsym
