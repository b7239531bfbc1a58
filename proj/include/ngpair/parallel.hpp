#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace ngpair {

/// Worker count: hardware concurrency, capped by the NG_THREADS environment
/// variable when it holds a positive integer.
std::size_t worker_count();

/// Calls fn(i) for i in [0, count) on up to worker_count() threads. Results
/// must be written by index; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Stream seed for item `index` of a run family with base seed `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace ngpair
