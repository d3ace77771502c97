#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "hadwiger/function_space.hpp"
#include "hadwiger/intrinsic_volumes.hpp"

namespace hadwiger {

/// Lower integrals sweep {h >= s} / {h < -s}; upper integrals swap in the
/// strict variants {h > s} / {h <= -s}.
enum class Bound { kLower, kUpper };

enum class Method {
  kExcursionExact,
  kExcursionQuadrature,
  kSliceMc,
  kProjectionMc
};

struct IntegralResult {
  double value = 0.0;
  double std_error = 0.0;
  Method method = Method::kExcursionExact;
  int k = 0;
  Bound bound = Bound::kLower;
};

const char* method_name(Method m);
const char* bound_name(Bound b);

/// Increasing continuous piecewise-linear reparameterization, used to
/// integrate composites c∘h by substituting thresholds instead of
/// resampling h. Extended beyond the outer breakpoints with the end slopes.
struct MonotoneMap {
  std::vector<double> xs;
  std::vector<double> ys;

  double operator()(double x) const;

  /// Least u with c(u) >= s (+inf when c stays below s).
  double least_preimage(double s) const;
  /// Greatest u with c(u) <= s (-inf when c stays above s).
  double greatest_preimage(double s) const;

  static MonotoneMap identity();
};

/// Exact Hadwiger integral of a constructible function: the integrand
/// mu_k{h >= s} - mu_k{h < -s} is piecewise constant between consecutive
/// critical values, so the sweep integrates segment by segment. Lower and
/// upper agree on constructible functions (the integrands differ only on the
/// finite breakpoint set).
IntegralResult hadwiger_constructible(const ConstructibleFunction& h, int k,
                                      Bound bound);

/// Exact k=0 (Euler) integral of a PL function by the same sweep over
/// pl_excursion_chi.
IntegralResult hadwiger_pl_euler(const PLFunction& h, Bound bound);

/// Hadwiger integral of a PL function: k=0 and k=n are exact; for
/// 0 < k < n the flats are Monte Carlo sampled and the per-flat fiber
/// integral is computed exactly from the range of h on each closed cell cut
/// by the flat, so sampling is the only error source.
IntegralResult hadwiger_pl(const PLFunction& h, int k, Bound bound,
                           const CroftonConstants& cst,
                           const SamplingOptions& opt);

/// Same with the integrand c∘h for an increasing map with c(0) = 0.
IntegralResult hadwiger_pl_composed(const PLFunction& h, const MonotoneMap& c,
                                    int k, Bound bound,
                                    const CroftonConstants& cst,
                                    const SamplingOptions& opt);

/// Step-function approximant (1/m) * integral of floor(m h) (lower) or
/// ceil(m h) (upper) against mu_k, evaluated as the finite threshold sums of
/// the excursion sets at levels i/m.
IntegralResult step_integral(const ConstructibleFunction& h, long long m,
                             int k, Bound bound);
IntegralResult step_integral(const PLFunction& h, long long m, int k,
                             Bound bound, const CroftonConstants& cst,
                             const SamplingOptions& opt);

/// Signed combinatorial dual: the linear extension of
/// D 1_cell = (-1)^dim(cell) 1_closure(cell). Involutive.
ConstructibleFunction verdier_dual(const ConstructibleFunction& h);

/// Returns (∫h dmu_k, (-1)^(n-k) ∫Dh dmu_k); the caller inspects agreement.
std::pair<double, double> prop31_residual(const ConstructibleFunction& h,
                                          int k);

/// Exact k=n (Lebesgue) integral.
double riemann(const ConstructibleFunction& h);
double riemann(const PLFunction& h);

/// Exact Lebesgue integral of c(h) for continuous piecewise-linear c given
/// by breakpoints (xs, ys); splits full-dimensional simplices at the level
/// sets of the breakpoints (simplex dimension <= 3 when splits occur).
double riemann_composed(const PLFunction& h, const std::vector<double>& xs,
                        const std::vector<double>& ys);

/// mu_k of a PL excursion set at a single threshold: {h >= u}, {h > u},
/// {h < u}, {h <= u}. Exact for k in {0, n}; slice Monte Carlo otherwise.
enum class PlMode { kGeq, kGt, kLt, kLeq };

MCEstimate mu_pl_excursion(const PLFunction& h, double u, PlMode mode, int k,
                           const CroftonConstants& cst,
                           const SamplingOptions& opt);

/// Batched thresholds evaluated against one shared set of sampled flats, so
/// the estimates are sample-consistent across the batch.
std::vector<MCEstimate> mu_pl_excursion_batch(
    const PLFunction& h, const std::vector<std::pair<double, PlMode>>& queries,
    int k, const CroftonConstants& cst, const SamplingOptions& opt);

/// Range of h over one closed cell cut by a sampled flat, with the cell's
/// dimension excess over k.
struct FiberRange {
  int excess = 0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Monte Carlo over sampled (n-k)-flats of custom functionals of the
/// per-cell fiber ranges. Per sample, eval receives the offset-window volume
/// and the cells hit by the flat and fills one value per output slot; the
/// returned estimates are scaled by the calibration constant. This is the
/// scaffold behind the slice estimators and is exposed for experiments that
/// need sample-consistent sums over many thresholds.
std::vector<MCEstimate> slice_fiber_mc(
    const PLFunction& h, int k, const CroftonConstants& cst,
    const SamplingOptions& opt, std::uint64_t tag, std::size_t n_out,
    const std::function<void(double, const std::vector<FiberRange>&,
                             std::vector<double>&)>& eval);

}  // namespace hadwiger
