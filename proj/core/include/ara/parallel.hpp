#pragma once

#include <cstddef>
#include <functional>

namespace ara {

/// Worker count used by parallel_for. Initialized from the ARA_THREADS
/// environment variable (default 1, the reproducibility reference).
std::size_t thread_count();
void set_thread_count(std::size_t count);

/// Runs body(i) for i in [0, count). Iterations must only touch state owned
/// by index i. Nested calls from inside a worker run serially. The first
/// exception thrown by any iteration is rethrown after all workers join.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace ara
