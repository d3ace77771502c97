#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

#include "hadwiger/cell_complex.hpp"

namespace hadwiger {

/// Monte Carlo estimate with its standard error of the mean.
struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 1;
  std::uint64_t seed = 0;
};

struct CalibrationEntry {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normalization constants c[n][k] tying the probability-Haar estimators to
/// the intrinsic-volume scale. c[n][0] = c[n][n] = 1 by construction
/// (counting the single trivial subspace, resp. plain volume); intermediate
/// entries come from calibration on the closed unit cube.
class CroftonConstants {
 public:
  bool has(int n, int k) const;
  double get(int n, int k) const;            // throws CalibrationError if absent
  const CalibrationEntry& entry(int n, int k) const;
  void set(int n, int k, CalibrationEntry e);

  const std::map<std::pair<int, int>, CalibrationEntry>& table() const {
    return table_;
  }

 private:
  std::map<std::pair<int, int>, CalibrationEntry> table_;
};

struct SamplingOptions {
  long long samples = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Exact intrinsic volume of a grid region: each open cell of dimension d
/// with interval lengths l contributes (-1)^(d-k) * e_k(l), the signed
/// elementary symmetric polynomial, and the total is the sum over cells.
double mu_grid_exact(const GridRegion& region, int k);

/// Projection-average Monte Carlo estimator: per sampled k-subspace L the
/// inner integral evaluates to the signed sum of projected-hull measures of
/// the cells, scaled by the calibration constant.
MCEstimate mu_crofton(const SimplicialSet& set, int k, const CroftonConstants& c,
                      const SamplingOptions& opt);
MCEstimate mu_crofton(const GridRegion& region, int k, const CroftonConstants& c,
                      const SamplingOptions& opt);

/// Slice Monte Carlo estimator: samples (n-k)-subspaces plus offsets uniform
/// over the projected bounding window, importance-weighted by the window
/// k-volume; same target and calibration scale as mu_crofton.
MCEstimate mu_slice_mc(const SimplicialSet& set, int k, const CroftonConstants& c,
                       const SamplingOptions& opt);
MCEstimate mu_slice_mc(const GridRegion& region, int k,
                       const CroftonConstants& c, const SamplingOptions& opt);

/// Fixes c[n][k] so that the projection estimator reproduces the closed unit
/// n-cube value binomial(n,k). Throws CalibrationError when the relative
/// standard error exceeds 1%.
CalibrationEntry calibrate(int n, int k, long long samples, std::uint64_t seed,
                           int threads = 1);

/// Ensures the constant for (n, k) is present, calibrating with the default
/// budget when missing. Returns the constant.
double ensure_constant(CroftonConstants& c, int n, int k);

double binomial(int n, int k);

}  // namespace hadwiger
