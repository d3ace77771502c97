#include "hadwiger/valuations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hadwiger/simplex_clip.hpp"

namespace hadwiger {

CoefficientProfile::CoefficientProfile(std::vector<double> xs,
                                       std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.empty() || xs_.size() != ys_.size())
    throw std::invalid_argument("CoefficientProfile: bad breakpoint list");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i - 1] < xs_[i]))
      throw std::invalid_argument(
          "CoefficientProfile: breakpoints must be strictly increasing");
  bool has_origin = false;
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (xs_[i] == 0.0 && ys_[i] == 0.0) has_origin = true;
  if (!has_origin)
    throw std::invalid_argument(
        "CoefficientProfile: must pass through (0, 0)");

  bool any_up = false, any_down = false;
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    const double slope = (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
    if (slope > 0.0) any_up = true;
    if (slope < 0.0) any_down = true;
  }
  if (any_up && any_down)
    throw std::invalid_argument("CoefficientProfile: non-monotone profile");
  increasing_ = !any_down;
  zero_ = !any_up && !any_down;
  strictly_decreasing_ = false;
  if (any_down && xs_.size() >= 2) {
    strictly_decreasing_ = true;
    for (std::size_t i = 1; i < xs_.size(); ++i) {
      const double slope = (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
      if (slope >= 0.0) strictly_decreasing_ = false;
    }
  }
}

double CoefficientProfile::operator()(double x) const {
  return piecewise_linear_eval(xs_, ys_, x);
}

MonotoneMap CoefficientProfile::map() const {
  if (!increasing_)
    throw std::invalid_argument("CoefficientProfile: decreasing profile");
  return {xs_, ys_};
}

namespace {

void check_valuation(const HadwigerValuation& v, int n) {
  if (static_cast<int>(v.profiles.size()) != n + 1)
    throw std::invalid_argument("HadwigerValuation: needs n+1 profiles");
  for (const auto& p : v.profiles)
    if (!p.increasing())
      throw std::invalid_argument(
          "HadwigerValuation: decreasing profiles are rejected for "
          "evaluation (mixed-monotonicity valuations are neither lower- nor "
          "upper-continuous)");
}

ConstructibleFunction compose_values(const CoefficientProfile& c,
                                     const ConstructibleFunction& h) {
  std::map<GridCell, double> out;
  for (const auto& [cell, v] : h.values()) out[cell] = c(v);
  return ConstructibleFunction(h.complex(), std::move(out));
}

}  // namespace

Evaluation evaluate(const HadwigerValuation& v, const ConstructibleFunction& h) {
  const int n = h.complex().dim();
  check_valuation(v, n);
  Evaluation out;
  for (int k = 0; k <= n; ++k) {
    const auto& prof = v.profiles[static_cast<std::size_t>(k)];
    if (prof.is_zero()) continue;
    out.value +=
        hadwiger_constructible(compose_values(prof, h), k, v.bound).value;
  }
  return out;
}

Evaluation evaluate(const HadwigerValuation& v, const PLFunction& h,
                    const CroftonConstants& cst, const SamplingOptions& opt) {
  const int n = h.set().ambient_dim();
  check_valuation(v, n);
  Evaluation out;
  double var = 0.0;
  for (int k = 0; k <= n; ++k) {
    const auto& prof = v.profiles[static_cast<std::size_t>(k)];
    if (prof.is_zero()) continue;
    const IntegralResult r =
        hadwiger_pl_composed(h, prof.map(), k, v.bound, cst, opt);
    out.value += r.value;
    var += r.std_error * r.std_error;
  }
  out.std_error = std::sqrt(var);
  return out;
}

double excursion_difference_form(const HadwigerValuation& v,
                                 const ConstructibleFunction& h) {
  const int n = h.complex().dim();
  if (static_cast<int>(v.profiles.size()) != n + 1)
    throw std::invalid_argument("HadwigerValuation: needs n+1 profiles");

  std::vector<double> pos, neg;
  for (const auto& [cell, val] : h.values()) {
    if (val > 0.0) pos.push_back(val);
    if (val < 0.0) neg.push_back(val);
  }
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  neg.erase(std::unique(neg.begin(), neg.end()), neg.end());

  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    const auto& c = v.profiles[static_cast<std::size_t>(k)];
    double prev = 0.0;  // c_k at the previous threshold, starting from c(0)=0
    for (double r : pos) {
      const GridRegion b = excursion(h, r, ExcursionMode::kGeq);
      total += (c(r) - prev) * mu_grid_exact(b, k);
      prev = c(r);
    }
    prev = 0.0;
    for (double r : neg) {
      const GridRegion b = excursion(h, -r, ExcursionMode::kLeqNeg);
      total += (c(r) - prev) * mu_grid_exact(b, k);
      prev = c(r);
    }
  }
  return total;
}

double additivity_residual(const HadwigerValuation& v,
                           const ConstructibleFunction& f,
                           const ConstructibleFunction& g) {
  const double vf = evaluate(v, f).value;
  const double vg = evaluate(v, g).value;
  const double vmax = evaluate(v, lattice(f, g, LatticeOp::kMax)).value;
  const double vmin = evaluate(v, lattice(f, g, LatticeOp::kMin)).value;
  return std::abs(vf + vg - vmax - vmin);
}

namespace {

/// Unique inverse of a strictly decreasing profile.
double decreasing_preimage(const CoefficientProfile& c, double s) {
  const auto& xs = c.xs();
  const auto& ys = c.ys();
  const std::size_t n = xs.size();
  auto seg_slope = [&](std::size_t j) {
    return (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j]);
  };
  if (s >= ys.front())
    return xs.front() + (s - ys.front()) / seg_slope(0);
  if (s <= ys.back())
    return xs.back() + (s - ys.back()) / seg_slope(n - 2);
  for (std::size_t j = 1; j < n; ++j) {
    if (ys[j] <= s)
      return xs[j - 1] + (s - ys[j - 1]) / seg_slope(j - 1);
  }
  return xs.back();
}

double pl_min_value(const PLFunction& h) {
  double m = 0.0;
  for (double v : h.vertex_values()) m = std::min(m, v);
  return m;
}

double pl_max_value(const PLFunction& h) {
  double m = 0.0;
  for (double v : h.vertex_values()) m = std::max(m, v);
  return m;
}

std::vector<SignedSimplex> full_cells(const PLFunction& h) {
  const int n = h.set().ambient_dim();
  std::vector<SignedSimplex> out;
  for (std::size_t i = 0; i < h.set().cells().size(); ++i) {
    if (h.set().cell_dim(i) != n) continue;
    SignedSimplex s{1, h.set().cell_vertices(i), {}};
    for (int vi : h.set().cells()[i])
      s.values.push_back(h.vertex_values()[static_cast<std::size_t>(vi)]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<DecreasingRow> decreasing_composition(
    const PLFunction& h, const CoefficientProfile& c, int k,
    const std::vector<long long>& m_list, const CroftonConstants& cst,
    const SamplingOptions& opt) {
  if (!c.strictly_decreasing())
    throw std::invalid_argument(
        "decreasing_composition: profile must be strictly decreasing");
  const int n = h.set().ambient_dim();
  if (k < 0 || k > n)
    throw std::invalid_argument("decreasing_composition: k out of range");

  const double lo_h = pl_min_value(h);
  const double hi_h = pl_max_value(h);
  const double max_abs_c =
      std::max({std::abs(c(lo_h)), std::abs(c(hi_h)), 0.0});

  std::vector<DecreasingRow> rows;
  for (long long m : m_list) {
    if (m < 1)
      throw std::invalid_argument("decreasing_composition: m must be >= 1");
    const double dm = static_cast<double>(m);
    DecreasingRow row;
    row.m = m;

    // lhs: sum over bands {(i-1)/m < h <= i/m} with coefficient c(i/m).
    // The i = 0 band meets the unbounded zero set but carries c(0) = 0.
    const long long band_lo =
        static_cast<long long>(std::floor(dm * lo_h)) - 1;
    const long long band_hi =
        static_cast<long long>(std::ceil(dm * hi_h)) + 1;
    if (k == 0) {
      double total = 0.0;
      for (long long i = band_lo; i <= band_hi; ++i) {
        if (i == 0) continue;
        const double a = static_cast<double>(i - 1) / dm;
        const double b = static_cast<double>(i) / dm;
        const long long band = pl_excursion_chi_below(h, b, false) -
                               pl_excursion_chi_below(h, a, false);
        total += c(b) * static_cast<double>(band);
      }
      row.lhs = total;
    } else if (k == n) {
      const auto cells = full_cells(h);
      double total = 0.0;
      for (long long i = band_lo; i <= band_hi; ++i) {
        if (i == 0) continue;
        const double a = static_cast<double>(i - 1) / dm;
        const double b = static_cast<double>(i) / dm;
        double band = 0.0;
        for (const auto& s : cells)
          band += volume_below(s, b) - volume_below(s, a);
        total += c(b) * band;
      }
      row.lhs = total;
    } else {
      // Per flat, every band collapses to the single index where the fiber
      // maximum lands: ceil(m * hi), with coefficient c of that level
      // (c(0) = 0 silently drops the i = 0 band).
      auto eval = [&c, dm](double window, const std::vector<FiberRange>& cells,
                           std::vector<double>& out) {
        double s = 0.0;
        for (const auto& f : cells) {
          const double g = dm * f.hi;
          const double eps = 1e-9 * (1.0 + std::abs(g));
          const double istar = std::ceil(g - eps);
          s += (f.excess % 2 == 0 ? 1.0 : -1.0) * c(istar / dm);
        }
        out[0] = window * s;
      };
      const auto est =
          slice_fiber_mc(h, k, cst, opt, 0x646563u, 1, eval);
      row.lhs = est[0].value;
      row.lhs_std_error = est[0].std_error;
    }

    // rhs: lower step integral of c∘h with thresholds substituted through
    // the decreasing inverse: {c∘h >= i/m} = {h <= cinv(i/m)} and
    // {c∘h < -i/m} = {h > cinv(-i/m)}.
    const long long imax =
        static_cast<long long>(std::ceil(dm * max_abs_c)) + 1;
    if (k == 0) {
      double pos = 0.0, neg = 0.0;
      for (long long i = 1; i <= imax; ++i)
        pos += static_cast<double>(pl_excursion_chi_below(
            h, decreasing_preimage(c, static_cast<double>(i) / dm), false));
      for (long long i = 0; i <= imax; ++i)
        neg += static_cast<double>(pl_excursion_chi(
            h, decreasing_preimage(c, -static_cast<double>(i) / dm), true));
      row.rhs = (pos - neg) / dm;
    } else if (k == n) {
      const auto cells = full_cells(h);
      double pos = 0.0, neg = 0.0;
      for (long long i = 1; i <= imax; ++i) {
        const double u = decreasing_preimage(c, static_cast<double>(i) / dm);
        for (const auto& s : cells) pos += volume_below(s, u);
      }
      for (long long i = 0; i <= imax; ++i) {
        const double u = decreasing_preimage(c, -static_cast<double>(i) / dm);
        for (const auto& s : cells) neg += volume_above(s, u);
      }
      row.rhs = (pos - neg) / dm;
    } else {
      // Lower step sums of c∘h: the fiber minimum of the composite is
      // c(fiber max of h), so the per-flat counts use c(hi).
      auto eval = [&c, dm](double window, const std::vector<FiberRange>& cells,
                           std::vector<double>& out) {
        double s = 0.0;
        for (const auto& f : cells) {
          const double g = dm * c(f.hi);
          const double eps = 1e-9 * (1.0 + std::abs(g));
          const double cnt = std::max(0.0, std::floor(g + eps)) -
                             std::max(0.0, std::ceil(-g - eps));
          s += (f.excess % 2 == 0 ? 1.0 : -1.0) * cnt;
        }
        out[0] = window * s / dm;
      };
      const auto est =
          slice_fiber_mc(h, k, cst, opt, 0x72687364u, 1, eval);
      row.rhs = est[0].value;
      row.rhs_std_error = est[0].std_error;
    }
    rows.push_back(row);
  }
  return rows;
}

PLFunction apply_motion(const PLFunction& h, const RigidMotion& motion) {
  const int n = h.set().ambient_dim();
  if (motion.rotation.rows() != n || motion.rotation.cols() != n ||
      motion.translation.size() != n)
    throw std::invalid_argument("apply_motion: dimension mismatch");
  const Eigen::MatrixXd gram =
      motion.rotation.transpose() * motion.rotation -
      Eigen::MatrixXd::Identity(n, n);
  if (gram.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("apply_motion: non-orthogonal matrix");
  std::vector<Eigen::VectorXd> verts;
  verts.reserve(h.set().vertices().size());
  for (const auto& v : h.set().vertices())
    verts.push_back(motion.rotation * v + motion.translation);
  SimplicialSet moved(n, std::move(verts), h.set().cells());
  return PLFunction(std::move(moved), h.vertex_values());
}

InvarianceResult invariance_residual(const HadwigerValuation& v,
                                     const PLFunction& h,
                                     const RigidMotion& motion,
                                     const CroftonConstants& cst,
                                     const SamplingOptions& opt) {
  const Evaluation e1 = evaluate(v, h, cst, opt);
  SamplingOptions opt2 = opt;
  opt2.seed = splitmix64(opt.seed ^ 0x6d6f74696fULL);
  const Evaluation e2 = evaluate(v, apply_motion(h, motion), cst, opt2);
  InvarianceResult out;
  out.residual = std::abs(e1.value - e2.value);
  out.std_error = std::hypot(e1.std_error, e2.std_error);
  return out;
}

}  // namespace hadwiger
