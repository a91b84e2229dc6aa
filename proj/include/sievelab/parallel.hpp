#pragma once

#include <cstddef>
#include <functional>

namespace sievelab {

/// Worker count from SIEVELAB_THREADS (default 1).
unsigned thread_count();

/// Calls body(i) for i in [0, n), possibly from several threads.  Callers
/// write results into slot i and reduce afterwards in index order, which
/// keeps results independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sievelab
