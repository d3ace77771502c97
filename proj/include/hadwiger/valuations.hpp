#pragma once

#include "hadwiger/hadwiger_integrals.hpp"

namespace hadwiger {

/// Continuous monotone piecewise-linear coefficient function c with
/// c(0) = 0: breakpoints must include x = 0 with value 0, the slopes must
/// all be >= 0 (increasing) or all <= 0 (decreasing), and the function is
/// extended beyond the outer breakpoints with the end slopes.
class CoefficientProfile {
 public:
  CoefficientProfile(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

  bool increasing() const { return increasing_; }
  bool strictly_decreasing() const { return strictly_decreasing_; }
  bool is_zero() const { return zero_; }

  MonotoneMap map() const;  // requires increasing()

 private:
  std::vector<double> xs_, ys_;
  bool increasing_ = true;
  bool strictly_decreasing_ = false;
  bool zero_ = true;
};

/// v(h) = sum_k ∫ c_k∘h against the lower (or upper) Hadwiger measures.
struct HadwigerValuation {
  std::vector<CoefficientProfile> profiles;  // c_0 .. c_n
  Bound bound = Bound::kLower;
};

struct Evaluation {
  double value = 0.0;
  double std_error = 0.0;
};

/// Exact evaluation on constructible functions (cellwise composition).
/// Rejects valuations containing any decreasing profile.
Evaluation evaluate(const HadwigerValuation& v, const ConstructibleFunction& h);

/// Evaluation on PL functions: k = 0 and k = n terms are exact, the middle
/// terms are slice Monte Carlo with independent substreams per k.
Evaluation evaluate(const HadwigerValuation& v, const PLFunction& h,
                    const CroftonConstants& cst, const SamplingOptions& opt);

/// Independent computation path: the valuation as a sum of finite
/// differences of the coefficients over the excursion sets
/// B_i = {h >= r_i} (positive values) and {h <= r_i} (negative values).
double excursion_difference_form(const HadwigerValuation& v,
                                 const ConstructibleFunction& h);

/// |v(f) + v(g) - v(f max g) - v(f min g)|, exact on grid functions.
double additivity_residual(const HadwigerValuation& v,
                           const ConstructibleFunction& f,
                           const ConstructibleFunction& g);

struct DecreasingRow {
  long long m = 0;
  double lhs = 0.0;
  double lhs_std_error = 0.0;
  double rhs = 0.0;
  double rhs_std_error = 0.0;
};

/// Two-sided step experiment for a strictly decreasing c: per m, lhs
/// integrates c composed with the ceiling step of h and rhs is the lower
/// step integral of c∘h with thresholds substituted through the decreasing
/// inverse; the rows converge to a common limit.
std::vector<DecreasingRow> decreasing_composition(
    const PLFunction& h, const CoefficientProfile& c, int k,
    const std::vector<long long>& m_list, const CroftonConstants& cst,
    const SamplingOptions& opt);

/// Rigid motion x -> R x + t with R orthogonal to 1e-12.
struct RigidMotion {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd translation;
};

PLFunction apply_motion(const PLFunction& h, const RigidMotion& motion);

struct InvarianceResult {
  double residual = 0.0;
  double std_error = 0.0;  // combined over the two evaluations
};

/// |v(h) - v(h∘motion^-1)| with the transformed geometry evaluated on an
/// independent sample stream.
InvarianceResult invariance_residual(const HadwigerValuation& v,
                                     const PLFunction& h,
                                     const RigidMotion& motion,
                                     const CroftonConstants& cst,
                                     const SamplingOptions& opt);

}  // namespace hadwiger
