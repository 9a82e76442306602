#pragma once

#include <cstddef>
#include <functional>

namespace szeta {

/// Worker-pool width. 0 picks the hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Run fn(i) for every i in [0, n). Each index writes only to its own
/// output slot, so results are independent of scheduling; workers set the
/// thread-local MPFR precision on entry. Exceptions propagate to the caller.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace szeta
