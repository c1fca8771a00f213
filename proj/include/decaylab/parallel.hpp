#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace decaylab {

/// Number of worker threads used by per-mode loops. Defaults to 1.
void set_worker_count(unsigned jobs);
unsigned worker_count();

/// Runs body(begin, end) over [0, count) split into contiguous blocks.
/// Blocks write disjoint index ranges, so results do not depend on the
/// worker count.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Pairwise (tree) summation in index order. Bit-reproducible for a given
/// input sequence regardless of how the values were produced.
double pairwise_sum(std::span<const double> values);

}  // namespace decaylab
