#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hadwiger {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Combines up to three substream labels into one stream id, so that
/// (seed, label...) -> stream is collision-resistant and order-independent
/// across parallel workers.
inline std::uint64_t stream_id(std::uint64_t a, std::uint64_t b = 0,
                               std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(a + 0x243f6a8885a308d3ULL);
  h = splitmix64(h ^ (b + 0x13198a2e03707344ULL));
  h = splitmix64(h ^ (c + 0xa4093822299f31d0ULL));
  return h;
}

/// Deterministic counter-based random stream: the state is fully determined
/// by (seed, stream id), so sample index i can always be served by stream
/// (seed, i) regardless of evaluation order or worker count.
///
/// Uniform and normal variates are generated with explicit arithmetic on the
/// mt19937_64 output (no std::*_distribution), keeping byte-identical results
/// across standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(splitmix64(seed ^ 0x8f1bbcdcbfa53e0bULL) ^ stream)) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hadwiger
