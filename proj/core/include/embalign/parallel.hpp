#ifndef EMBALIGN_PARALLEL_HPP
#define EMBALIGN_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace embalign {

// Caps the number of worker threads used by parallel_for. 0 restores the
// hardware default.
void set_max_threads(int n);
int max_threads();

// Runs fn(begin, end) over disjoint contiguous chunks of [begin, end).
// Chunks never overlap, so writes to per-index slots are race-free and the
// result is independent of the thread count.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace embalign

#endif  // EMBALIGN_PARALLEL_HPP
