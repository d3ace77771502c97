#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hadwiger {

/// Fixed-order pairwise (cascade) summation. The result depends only on the
/// element order, never on how the values were produced, which is what makes
/// multi-threaded Monte Carlo runs byte-identical to single-threaded ones.
double pairwise_sum(std::span<const double> v);

/// Evaluates fn(0..count-1) into a dense vector, optionally on several
/// threads with static contiguous chunks. Each index must be computable
/// independently of the others.
std::vector<double> run_indexed(std::int64_t count, int threads,
                                const std::function<double(std::int64_t)>& fn);

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean and standard error of the mean with deterministic reduction order.
MeanStderr mean_stderr(std::span<const double> v);

}  // namespace hadwiger
