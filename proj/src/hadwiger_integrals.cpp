#include "hadwiger/hadwiger_integrals.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hadwiger/lp.hpp"
#include "hadwiger/parallel.hpp"
#include "hadwiger/simplex_clip.hpp"

namespace hadwiger {

namespace {

constexpr double kTieTol = 1e-9;
constexpr int kMaxResample = 64;
constexpr std::uint64_t kTagFiber = 0x66696265;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kExcursionExact:
      return "excursion-exact";
    case Method::kExcursionQuadrature:
      return "excursion-quadrature";
    case Method::kSliceMc:
      return "slice-mc";
    case Method::kProjectionMc:
      return "projection-mc";
  }
  return "?";
}

const char* bound_name(Bound b) {
  return b == Bound::kLower ? "lower" : "upper";
}

double MonotoneMap::operator()(double x) const {
  return piecewise_linear_eval(xs, ys, x);
}

MonotoneMap MonotoneMap::identity() { return {{0.0, 1.0}, {0.0, 1.0}}; }

double MonotoneMap::least_preimage(double s) const {
  const std::size_t n = xs.size();
  auto seg_slope = [&](std::size_t j) {
    return (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j]);
  };
  if (ys.front() >= s) {
    // The crossing is at or left of the first breakpoint.
    const double slope = n >= 2 ? seg_slope(0) : 0.0;
    if (slope <= 0.0) return -kInf;  // constant tail already >= s
    return xs.front() - (ys.front() - s) / slope;
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (ys[j] >= s) {
      const double slope = seg_slope(j - 1);  // > 0 since ys[j-1] < s <= ys[j]
      return xs[j - 1] + (s - ys[j - 1]) / slope;
    }
  }
  const double slope = n >= 2 ? seg_slope(n - 2) : 0.0;
  if (slope <= 0.0) return kInf;  // never reaches s
  return xs.back() + (s - ys.back()) / slope;
}

double MonotoneMap::greatest_preimage(double s) const {
  const std::size_t n = xs.size();
  auto seg_slope = [&](std::size_t j) {
    return (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j]);
  };
  if (ys.back() <= s) {
    const double slope = n >= 2 ? seg_slope(n - 2) : 0.0;
    if (slope <= 0.0) return kInf;  // constant tail stays <= s
    return xs.back() + (s - ys.back()) / slope;
  }
  for (std::size_t j = n - 1; j-- > 0;) {
    if (ys[j] <= s) {
      const double slope = seg_slope(j);  // > 0 since ys[j] <= s < ys[j+1]
      return xs[j] + (s - ys[j]) / slope;
    }
  }
  const double slope = n >= 2 ? seg_slope(0) : 0.0;
  if (slope <= 0.0) return -kInf;  // stays above s
  return xs.front() - (ys.front() - s) / slope;
}

// ---------------------------------------------------------------------------
// Exact sweeps
// ---------------------------------------------------------------------------

IntegralResult hadwiger_constructible(const ConstructibleFunction& h, int k,
                                      Bound bound) {
  const int n = h.complex().dim();
  if (k < 0 || k > n)
    throw std::invalid_argument("hadwiger_constructible: k out of range");

  std::vector<double> breaks{0.0};
  for (const auto& [c, v] : h.values()) breaks.push_back(std::abs(v));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double total = 0.0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double mid = 0.5 * (breaks[j] + breaks[j + 1]);
    double integrand;
    if (bound == Bound::kLower) {
      integrand = mu_grid_exact(excursion(h, mid, ExcursionMode::kGeq), k) -
                  mu_grid_exact(excursion(h, mid, ExcursionMode::kLtNeg), k);
    } else {
      integrand = mu_grid_exact(excursion(h, mid, ExcursionMode::kGt), k) -
                  mu_grid_exact(excursion(h, mid, ExcursionMode::kLeqNeg), k);
    }
    total += (breaks[j + 1] - breaks[j]) * integrand;
  }
  return {total, 0.0, Method::kExcursionExact, k, bound};
}

namespace {

/// s-sweep of the composed Euler integral ∫ c(h) with thresholds substituted
/// through the increasing map: {c∘h >= s} = {h >= least_preimage(s)} and the
/// strict/below variants through the matching pseudo-inverse.
double pl_euler_sweep(const PLFunction& h, const MonotoneMap& c, Bound bound) {
  std::vector<double> breaks{0.0};
  for (double u : critical_values(h)) breaks.push_back(std::abs(c(u)));
  for (double y : c.ys) breaks.push_back(std::abs(y));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double total = 0.0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double mid = 0.5 * (breaks[j] + breaks[j + 1]);
    long long chi_pos, chi_neg;
    if (bound == Bound::kLower) {
      chi_pos = pl_excursion_chi(h, c.least_preimage(mid), false);
      chi_neg = pl_excursion_chi_below(h, c.least_preimage(-mid), true);
    } else {
      chi_pos = pl_excursion_chi(h, c.greatest_preimage(mid), true);
      chi_neg = pl_excursion_chi_below(h, c.greatest_preimage(-mid), false);
    }
    total += (breaks[j + 1] - breaks[j]) *
             static_cast<double>(chi_pos - chi_neg);
  }
  return total;
}

}  // namespace

IntegralResult hadwiger_pl_euler(const PLFunction& h, Bound bound) {
  return {pl_euler_sweep(h, MonotoneMap::identity(), bound), 0.0,
          Method::kExcursionExact, 0, bound};
}

// ---------------------------------------------------------------------------
// Fiber machinery for the slice Monte Carlo paths
// ---------------------------------------------------------------------------

namespace {

std::optional<std::vector<FiberRange>> fiber_cells(const PLFunction& h,
                                                   const Eigen::MatrixXd& comp,
                                                   const Eigen::VectorXd& xc,
                                                   int k) {
  std::vector<FiberRange> out;
  const auto& set = h.set();
  for (std::size_t i = 0; i < set.cells().size(); ++i) {
    const auto verts = set.cell_vertices(i);
    const int d = set.cell_dim(i);
    std::vector<Eigen::VectorXd> proj;
    proj.reserve(verts.size());
    for (const auto& v : verts) proj.push_back(comp * v);
    const double margin = hull_margin(xc, proj);
    if (std::abs(margin) <= kTieTol) return std::nullopt;
    if (d < k) {
      if (margin > 0.0) return std::nullopt;  // flat hit a thin cell
      continue;
    }
    if (margin < 0.0) continue;

    const int nv = static_cast<int>(verts.size());
    Eigen::MatrixXd A(k + 1, nv);
    Eigen::VectorXd vals(nv);
    for (int j = 0; j < nv; ++j) {
      A.col(j).head(k) = proj[static_cast<std::size_t>(j)];
      A(k, j) = 1.0;
      vals(j) = h.vertex_values()[static_cast<std::size_t>(
          set.cells()[i][static_cast<std::size_t>(j)])];
    }
    Eigen::VectorXd b(k + 1);
    b.head(k) = xc;
    b(k) = 1.0;
    const LpSolution mx = lp_maximize(A, b, vals);
    const LpSolution mn = lp_maximize(A, b, -vals);
    if (mx.status != LpStatus::kOptimal || mn.status != LpStatus::kOptimal)
      return std::nullopt;  // borderline feasibility: resample
    out.push_back({d - k, -mn.objective, mx.objective});
  }
  return out;
}

struct WindowFrame {
  Eigen::MatrixXd comp;  // k x n complement basis
  Eigen::VectorXd lo, hi;
  double volume = 0.0;
};

WindowFrame make_window(const std::vector<Eigen::VectorXd>& bbox_corners,
                        const Subspace& sub, int k) {
  WindowFrame w;
  w.comp = complement_basis(sub);
  w.lo.resize(k);
  w.hi.resize(k);
  for (int j = 0; j < k; ++j) {
    w.lo(j) = kInf;
    w.hi(j) = -kInf;
  }
  for (const auto& corner : bbox_corners) {
    const Eigen::VectorXd p = w.comp * corner;
    w.lo = w.lo.cwiseMin(p);
    w.hi = w.hi.cwiseMax(p);
  }
  w.volume = 1.0;
  for (int j = 0; j < k; ++j) w.volume *= w.hi(j) - w.lo(j);
  return w;
}

double cell_sign(int excess) { return excess % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

std::vector<MCEstimate> slice_fiber_mc(
    const PLFunction& h, int k, const CroftonConstants& cst,
    const SamplingOptions& opt, std::uint64_t tag, std::size_t n_out,
    const std::function<void(double, const std::vector<FiberRange>&,
                             std::vector<double>&)>& eval) {
  const int n = h.set().ambient_dim();
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("slice sampler: requires 1 <= k <= n-1");
  if (k > 3)
    throw std::invalid_argument("slice sampler: k <= 3 required");
  if (opt.samples < 2)
    throw std::invalid_argument("slice sampler: samples must be >= 2");
  const double c = cst.get(n, k);
  const auto bbox = h.set().bounding_corners();

  std::vector<std::vector<double>> rows(n_out);
  for (auto& r : rows) r.resize(static_cast<std::size_t>(opt.samples));

  auto body = [&](std::int64_t i, std::vector<double>& scratch) {
    for (int attempt = 0; attempt < kMaxResample; ++attempt) {
      RngStream stream(opt.seed,
                       stream_id(stream_id(tag, static_cast<std::uint64_t>(k)),
                                 static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(attempt)));
      const Subspace sub = sample_subspace(n, n - k, stream);
      const WindowFrame w = make_window(bbox, sub, k);
      if (w.volume <= 0.0) {
        for (std::size_t q = 0; q < scratch.size(); ++q) scratch[q] = 0.0;
        return true;
      }
      Eigen::VectorXd xc(k);
      for (int j = 0; j < k; ++j) xc(j) = stream.uniform(w.lo(j), w.hi(j));
      const auto cells = fiber_cells(h, w.comp, xc, k);
      if (!cells.has_value()) continue;
      eval(w.volume, *cells, scratch);
      return true;
    }
    return false;
  };

  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](std::int64_t lo, std::int64_t hi) {
    std::vector<double> scratch(n_out);
    try {
      for (std::int64_t i = lo; i < hi && !failed.load(); ++i) {
        if (!body(i, scratch)) {
          failed.store(true);
          return;
        }
        for (std::size_t q = 0; q < n_out; ++q)
          rows[q][static_cast<std::size_t>(i)] = scratch[q];
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      failed.store(true);
    }
  };

  const int threads = std::max(1, opt.threads);
  if (threads == 1 || opt.samples < 2 * threads) {
    worker(0, opt.samples);
  } else {
    const std::int64_t chunk = (opt.samples + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const std::int64_t lo = t * chunk;
      const std::int64_t hi = std::min<std::int64_t>(opt.samples, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  if (failed.load())
    throw std::runtime_error("slice sampler: resample limit exceeded");

  std::vector<MCEstimate> out(n_out);
  for (std::size_t q = 0; q < n_out; ++q) {
    const MeanStderr ms = mean_stderr(rows[q]);
    out[q] = {c * ms.mean, c * ms.std_error, opt.samples, opt.seed};
  }
  return out;
}

IntegralResult hadwiger_pl_composed(const PLFunction& h, const MonotoneMap& c,
                                    int k, Bound bound,
                                    const CroftonConstants& cst,
                                    const SamplingOptions& opt) {
  const int n = h.set().ambient_dim();
  if (k < 0 || k > n)
    throw std::invalid_argument("hadwiger_pl: k out of range");
  if (k == 0)
    return {pl_euler_sweep(h, c, bound), 0.0, Method::kExcursionExact, 0,
            bound};
  if (k == n)
    return {riemann_composed(h, c.xs, c.ys), 0.0, Method::kExcursionExact, n,
            bound};
  if (k > 3)
    throw std::invalid_argument("hadwiger_pl: k <= 3 or k = n required");

  // Per flat, the fiber integral is exact: each open cell cut by the flat
  // contributes (-1)^(dim - k) * c(min h) for the lower integral, c(max h)
  // for the upper one.
  const bool lower = bound == Bound::kLower;
  auto eval = [&c, lower](double window, const std::vector<FiberRange>& cells,
                          std::vector<double>& out) {
    double s = 0.0;
    for (const auto& f : cells)
      s += cell_sign(f.excess) * c(lower ? f.lo : f.hi);
    out[0] = window * s;
  };
  const auto est = slice_fiber_mc(h, k, cst, opt, kTagFiber, 1, eval);
  return {est[0].value, est[0].std_error, Method::kSliceMc, k, bound};
}

IntegralResult hadwiger_pl(const PLFunction& h, int k, Bound bound,
                           const CroftonConstants& cst,
                           const SamplingOptions& opt) {
  const int n = h.set().ambient_dim();
  if (k == n && n > 0)
    return {riemann(h), 0.0, Method::kExcursionExact, k, bound};
  return hadwiger_pl_composed(h, MonotoneMap::identity(), k, bound, cst, opt);
}

// ---------------------------------------------------------------------------
// Step-function approximants
// ---------------------------------------------------------------------------

IntegralResult step_integral(const ConstructibleFunction& h, long long m,
                             int k, Bound bound) {
  const int n = h.complex().dim();
  if (m < 1) throw std::invalid_argument("step_integral: m must be >= 1");
  if (k < 0 || k > n)
    throw std::invalid_argument("step_integral: k out of range");
  double maxabs = 0.0;
  for (const auto& [c, v] : h.values()) maxabs = std::max(maxabs, std::abs(v));
  const long long imax =
      static_cast<long long>(std::ceil(static_cast<double>(m) * maxabs)) + 1;

  double pos = 0.0, neg = 0.0;
  const double dm = static_cast<double>(m);
  if (bound == Bound::kLower) {
    for (long long i = 1; i <= imax; ++i)
      pos += mu_grid_exact(
          excursion(h, static_cast<double>(i) / dm, ExcursionMode::kGeq), k);
    for (long long i = 0; i <= imax; ++i)
      neg += mu_grid_exact(
          excursion(h, static_cast<double>(i) / dm, ExcursionMode::kLtNeg), k);
  } else {
    for (long long i = 0; i <= imax; ++i)
      pos += mu_grid_exact(
          excursion(h, static_cast<double>(i) / dm, ExcursionMode::kGt), k);
    for (long long i = 1; i <= imax; ++i)
      neg += mu_grid_exact(
          excursion(h, static_cast<double>(i) / dm, ExcursionMode::kLeqNeg), k);
  }
  return {(pos - neg) / dm, 0.0, Method::kExcursionQuadrature, k, bound};
}

IntegralResult step_integral(const PLFunction& h, long long m, int k,
                             Bound bound, const CroftonConstants& cst,
                             const SamplingOptions& opt) {
  const int n = h.set().ambient_dim();
  if (m < 1) throw std::invalid_argument("step_integral: m must be >= 1");
  if (k < 0 || k > n)
    throw std::invalid_argument("step_integral: k out of range");
  const double dm = static_cast<double>(m);
  const long long imax =
      static_cast<long long>(std::ceil(dm * h.max_abs_value())) + 1;

  if (k == 0) {
    double pos = 0.0, neg = 0.0;
    if (bound == Bound::kLower) {
      for (long long i = 1; i <= imax; ++i)
        pos += static_cast<double>(
            pl_excursion_chi(h, static_cast<double>(i) / dm, false));
      for (long long i = 0; i <= imax; ++i)
        neg += static_cast<double>(
            pl_excursion_chi_below(h, -static_cast<double>(i) / dm, true));
    } else {
      for (long long i = 0; i <= imax; ++i)
        pos += static_cast<double>(
            pl_excursion_chi(h, static_cast<double>(i) / dm, true));
      for (long long i = 1; i <= imax; ++i)
        neg += static_cast<double>(
            pl_excursion_chi_below(h, -static_cast<double>(i) / dm, false));
    }
    return {(pos - neg) / dm, 0.0, Method::kExcursionQuadrature, 0, bound};
  }

  if (k == n) {
    double pos = 0.0, neg = 0.0;
    for (std::size_t ci = 0; ci < h.set().cells().size(); ++ci) {
      if (h.set().cell_dim(ci) != n) continue;
      SignedSimplex s{1, h.set().cell_vertices(ci), {}};
      for (int vi : h.set().cells()[ci])
        s.values.push_back(h.vertex_values()[static_cast<std::size_t>(vi)]);
      if (bound == Bound::kLower) {
        for (long long i = 1; i <= imax; ++i)
          pos += volume_above(s, static_cast<double>(i) / dm);
        for (long long i = 0; i <= imax; ++i)
          neg += volume_below(s, -static_cast<double>(i) / dm);
      } else {
        for (long long i = 0; i <= imax; ++i)
          pos += volume_above(s, static_cast<double>(i) / dm);
        for (long long i = 1; i <= imax; ++i)
          neg += volume_below(s, -static_cast<double>(i) / dm);
      }
    }
    return {(pos - neg) / dm, 0.0, Method::kExcursionQuadrature, n, bound};
  }

  // Monte Carlo path: per flat, the whole threshold sum collapses to
  // integer counts of the fiber range against the i/m grid. Counts snap to
  // the non-strict/strict semantics when the range end lands on the grid,
  // absorbing LP jitter at exact plateaus.
  const bool lower = bound == Bound::kLower;
  auto eval = [dm, lower](double window, const std::vector<FiberRange>& cells,
                          std::vector<double>& out) {
    double s = 0.0;
    for (const auto& f : cells) {
      double cnt;
      if (lower) {
        const double g = dm * f.lo;
        const double eps = 1e-9 * (1.0 + std::abs(g));
        // i >= 1 with i <= m*lo (non-strict), minus i >= 0 with i < -m*lo.
        cnt = std::max(0.0, std::floor(g + eps)) -
              std::max(0.0, std::ceil(-g - eps));
      } else {
        const double g = dm * f.hi;
        const double eps = 1e-9 * (1.0 + std::abs(g));
        // i >= 0 with i < m*hi (strict), minus i >= 1 with i <= -m*hi.
        cnt = std::max(0.0, std::ceil(g - eps)) -
              std::max(0.0, std::floor(-g + eps));
      }
      s += cell_sign(f.excess) * cnt;
    }
    out[0] = window * s / dm;
  };
  const auto est = slice_fiber_mc(h, k, cst, opt, kTagFiber ^ 0x5354u, 1, eval);
  return {est[0].value, est[0].std_error, Method::kSliceMc, k, bound};
}

// ---------------------------------------------------------------------------
// Dual operator and Lebesgue paths
// ---------------------------------------------------------------------------

ConstructibleFunction verdier_dual(const ConstructibleFunction& h) {
  const GridComplex& cx = h.complex();
  const int n = cx.dim();
  std::map<GridCell, double> out;
  for (const auto& [cell, v] : h.values()) {
    const int d = cx.cell_dim(cell);
    const double coef = (d % 2 == 0 ? 1.0 : -1.0) * v;
    // Spread over every face of the cell (its closure).
    std::vector<std::vector<int>> options(static_cast<std::size_t>(n));
    for (int ax = 0; ax < n; ++ax) {
      const int p = cell[static_cast<std::size_t>(ax)];
      options[static_cast<std::size_t>(ax)] =
          p % 2 == 0 ? std::vector<int>{p} : std::vector<int>{p - 1, p, p + 1};
    }
    GridCell face(static_cast<std::size_t>(n));
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      for (int ax = 0; ax < n; ++ax)
        face[static_cast<std::size_t>(ax)] =
            options[static_cast<std::size_t>(ax)][idx[static_cast<std::size_t>(ax)]];
      out[face] += coef;
      int ax = 0;
      while (ax < n) {
        auto& i = idx[static_cast<std::size_t>(ax)];
        if (++i < options[static_cast<std::size_t>(ax)].size()) break;
        i = 0;
        ++ax;
      }
      if (ax == n) break;
    }
  }
  return ConstructibleFunction(cx, std::move(out));
}

std::pair<double, double> prop31_residual(const ConstructibleFunction& h,
                                          int k) {
  const int n = h.complex().dim();
  const double lhs = hadwiger_constructible(h, k, Bound::kLower).value;
  const double rhs =
      hadwiger_constructible(verdier_dual(h), k, Bound::kLower).value;
  const double sign = (n - k) % 2 == 0 ? 1.0 : -1.0;
  return {lhs, sign * rhs};
}

double riemann(const ConstructibleFunction& h) {
  const int n = h.complex().dim();
  std::vector<double> terms;
  for (const auto& [cell, v] : h.values()) {
    if (h.complex().cell_dim(cell) != n) continue;
    double vol = 1.0;
    for (double l : h.complex().cell_lengths(cell)) vol *= l;
    terms.push_back(v * vol);
  }
  return pairwise_sum(terms);
}

double riemann(const PLFunction& h) {
  const int n = h.set().ambient_dim();
  std::vector<double> terms;
  for (std::size_t i = 0; i < h.set().cells().size(); ++i) {
    if (h.set().cell_dim(i) != n) continue;
    double mean = 0.0;
    for (int vi : h.set().cells()[i])
      mean += h.vertex_values()[static_cast<std::size_t>(vi)];
    mean /= static_cast<double>(h.set().cells()[i].size());
    terms.push_back(simplex_volume(h.set().cell_vertices(i)) * mean);
  }
  return pairwise_sum(terms);
}

double riemann_composed(const PLFunction& h, const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  const int n = h.set().ambient_dim();
  std::vector<double> terms;
  for (std::size_t i = 0; i < h.set().cells().size(); ++i) {
    if (h.set().cell_dim(i) != n) continue;
    SignedSimplex s{1, h.set().cell_vertices(i), {}};
    for (int vi : h.set().cells()[i])
      s.values.push_back(h.vertex_values()[static_cast<std::size_t>(vi)]);
    terms.push_back(integrate_pl_of_affine(s, xs, ys));
  }
  return pairwise_sum(terms);
}

// ---------------------------------------------------------------------------
// mu_k of PL excursion sets
// ---------------------------------------------------------------------------

namespace {

long long pl_chi_mode(const PLFunction& h, double u, PlMode mode) {
  switch (mode) {
    case PlMode::kGeq:
      return pl_excursion_chi(h, u, false);
    case PlMode::kGt:
      return pl_excursion_chi(h, u, true);
    case PlMode::kLt:
      return pl_excursion_chi_below(h, u, true);
    case PlMode::kLeq:
      return pl_excursion_chi_below(h, u, false);
  }
  return 0;
}

double pl_volume_mode(const PLFunction& h, double u, PlMode mode) {
  const int n = h.set().ambient_dim();
  double vol = 0.0;
  for (std::size_t i = 0; i < h.set().cells().size(); ++i) {
    if (h.set().cell_dim(i) != n) continue;
    SignedSimplex s{1, h.set().cell_vertices(i), {}};
    for (int vi : h.set().cells()[i])
      s.values.push_back(h.vertex_values()[static_cast<std::size_t>(vi)]);
    vol += (mode == PlMode::kGeq || mode == PlMode::kGt)
               ? volume_above(s, u)
               : volume_below(s, u);
  }
  return vol;
}

/// chi contribution of one fiber cell against a threshold. Comparisons snap
/// to equality within 1e-9 so that thresholds landing exactly on plateau
/// values follow the strict/non-strict table semantics despite LP jitter.
double fiber_mode_term(const FiberRange& f, double u, PlMode mode) {
  const double eps = 1e-9 * (1.0 + std::abs(u));
  const double lo = std::abs(u - f.lo) <= eps ? u : f.lo;
  const double hi = std::abs(u - f.hi) <= eps ? u : f.hi;
  bool full = false;
  switch (mode) {
    case PlMode::kGeq:
      full = u <= lo;
      break;
    case PlMode::kGt:
      full = u < hi;
      break;
    case PlMode::kLt:
      full = lo < u;
      break;
    case PlMode::kLeq:
      full = u >= hi;
      break;
  }
  return full ? cell_sign(f.excess) : 0.0;
}

}  // namespace

std::vector<MCEstimate> mu_pl_excursion_batch(
    const PLFunction& h, const std::vector<std::pair<double, PlMode>>& queries,
    int k, const CroftonConstants& cst, const SamplingOptions& opt) {
  const int n = h.set().ambient_dim();
  if (k < 0 || k > n)
    throw std::invalid_argument("mu_pl_excursion: k out of range");
  std::vector<MCEstimate> out(queries.size());
  if (k == 0) {
    for (std::size_t q = 0; q < queries.size(); ++q)
      out[q] = {static_cast<double>(
                    pl_chi_mode(h, queries[q].first, queries[q].second)),
                0.0, 1, opt.seed};
    return out;
  }
  if (k == n) {
    for (std::size_t q = 0; q < queries.size(); ++q)
      out[q] = {pl_volume_mode(h, queries[q].first, queries[q].second), 0.0, 1,
                opt.seed};
    return out;
  }

  auto eval = [&queries](double window, const std::vector<FiberRange>& cells,
                         std::vector<double>& scratch) {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      double s = 0.0;
      for (const auto& f : cells)
        s += fiber_mode_term(f, queries[q].first, queries[q].second);
      scratch[q] = window * s;
    }
  };
  return slice_fiber_mc(h, k, cst, opt, kTagFiber ^ 0x4d55u, queries.size(),
                        eval);
}

MCEstimate mu_pl_excursion(const PLFunction& h, double u, PlMode mode, int k,
                           const CroftonConstants& cst,
                           const SamplingOptions& opt) {
  return mu_pl_excursion_batch(h, {{u, mode}}, k, cst, opt)[0];
}

}  // namespace hadwiger
