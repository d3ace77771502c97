#include "hadwiger/parallel.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace hadwiger {

namespace {

double pairwise_sum_range(std::span<const double> v, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum_range(v, lo, mid) + pairwise_sum_range(v, mid, hi);
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
  return pairwise_sum_range(v, 0, v.size());
}

std::vector<double> run_indexed(std::int64_t count, int threads,
                                const std::function<double(std::int64_t)>& fn) {
  if (count < 0) throw std::invalid_argument("run_indexed: negative count");
  std::vector<double> values(static_cast<std::size_t>(count));
  if (threads <= 1 || count < 2 * threads) {
    for (std::int64_t i = 0; i < count; ++i)
      values[static_cast<std::size_t>(i)] = fn(i);
    return values;
  }
  const int workers = threads;
  const std::int64_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&values, &fn, &error, &error_mutex, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i)
          values[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return values;
}

MeanStderr mean_stderr(std::span<const double> v) {
  MeanStderr out;
  if (v.empty()) return out;
  out.mean = pairwise_sum(v) / static_cast<double>(v.size());
  if (v.size() < 2) return out;
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - out.mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / static_cast<double>(v.size() - 1);
  out.std_error = std::sqrt(var / static_cast<double>(v.size()));
  return out;
}

}  // namespace hadwiger
