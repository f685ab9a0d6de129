#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace morrey {

/// Resolve a thread-count request: n > 0 is taken as-is, n <= 0 falls back to
/// the MORREY_LAB_THREADS environment variable and then to the hardware count.
int resolve_threads(int requested);

/// Static contiguous chunking over [begin, end). Each index is processed by
/// exactly one thread, so any per-index output is independent of the thread
/// count. Reductions across indices must be done by the caller in index order.
void parallel_for(std::int64_t begin, std::int64_t end, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& body);

/// Pairwise (cascade) summation; deterministic for a fixed input order.
double pairwise_sum(std::span<const double> values);

}  // namespace morrey
