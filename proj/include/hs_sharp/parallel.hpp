#pragma once

#include <cstddef>
#include <functional>

namespace hs_sharp {

/// Upper bound on worker threads for parallel_for; 0 means hardware default.
void set_thread_limit(unsigned limit);
unsigned thread_limit();

/// Reads HS_SHARP_THREADS (positive integer) and applies it; returns true if set.
bool apply_thread_limit_from_env();

/// Calls body(i) for every i in [0, count). Work is strided across threads;
/// callers write results into slot i so the reduction order stays fixed.
/// The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hs_sharp
