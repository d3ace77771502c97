#include "hadwiger/intrinsic_volumes.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <type_traits>

#include "hadwiger/parallel.hpp"

namespace hadwiger {

namespace {

// Substream tags keeping the sampler families independent of each other.
constexpr std::uint64_t kTagCrofton = 0x63726f66;
constexpr std::uint64_t kTagSlice = 0x736c6963;
constexpr int kMaxResample = 64;

// Coefficients of prod (1 + l*t): e_k of the length list.
double elementary_symmetric(const std::vector<double>& lengths, int k) {
  if (k < 0 || k > static_cast<int>(lengths.size())) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (double l : lengths) {
    for (int j = k; j >= 1; --j)
      e[static_cast<std::size_t>(j)] += l * e[static_cast<std::size_t>(j - 1)];
  }
  return e[static_cast<std::size_t>(k)];
}

double exact_volume(const std::vector<CellView>& views, int n) {
  double vol = 0.0;
  for (const auto& v : views) {
    if (v.dim != n) continue;
    vol += hull_measure(v.corners);
  }
  return vol;
}

long long exact_chi(const std::vector<CellView>& views) {
  long long chi = 0;
  for (const auto& v : views) chi += v.dim % 2 == 0 ? 1 : -1;
  return chi;
}

struct SliceContext {
  std::vector<CellView> views;
  std::vector<Eigen::VectorXd> bbox_corners;
  int n = 0;
};

double crofton_raw(const SliceContext& ctx, int k, RngStream& stream) {
  const Subspace sub = sample_subspace(ctx.n, k, stream);
  double total = 0.0;
  for (const auto& view : ctx.views) {
    if (view.dim < k) continue;
    std::vector<Eigen::VectorXd> proj;
    proj.reserve(view.corners.size());
    for (const auto& p : view.corners) proj.push_back(sub.basis() * p);
    const double m = hull_measure(proj);
    total += (view.dim - k) % 2 == 0 ? m : -m;
  }
  return total;
}

template <typename Set>
MCEstimate mc_common(const Set& set, int k, const CroftonConstants& cst,
                     const SamplingOptions& opt, std::uint64_t tag,
                     bool slice_mode) {
  const auto views = cell_views(set);
  const int n = [&] {
    if constexpr (std::is_same_v<Set, SimplicialSet>)
      return set.ambient_dim();
    else
      return set.complex().dim();
  }();
  if (k < 0 || k > n)
    throw std::invalid_argument("mu estimator: k out of range");

  MCEstimate est;
  est.seed = opt.seed;
  if (k == 0) {
    est.value = static_cast<double>(exact_chi(views));
    return est;
  }
  if (k == n) {
    est.value = exact_volume(views, n);
    return est;
  }
  if (k > 3)
    throw std::invalid_argument(
        "mu estimator: hull measures support k <= 3 (or k = n)");
  bool any = false;
  for (const auto& v : views) any = any || v.dim >= k;
  if (!any) return est;  // no cell can meet a generic flat: exact 0

  if (opt.samples < 2)
    throw std::invalid_argument("mu estimator: samples must be >= 2");

  const double c = cst.get(n, k);
  SliceContext ctx{views, set.bounding_corners(), n};

  std::function<double(std::int64_t)> body;
  if (!slice_mode) {
    body = [&ctx, k, opt, tag](std::int64_t i) {
      RngStream stream(opt.seed, stream_id(tag, static_cast<std::uint64_t>(i)));
      return crofton_raw(ctx, k, stream);
    };
  } else {
    body = [&ctx, k, opt, tag, &set](std::int64_t i) {
      for (int attempt = 0; attempt < kMaxResample; ++attempt) {
        RngStream stream(opt.seed,
                         stream_id(tag, static_cast<std::uint64_t>(i),
                                   static_cast<std::uint64_t>(attempt)));
        const Subspace sub = sample_subspace(ctx.n, ctx.n - k, stream);
        const Eigen::MatrixXd comp = complement_basis(sub);
        Eigen::VectorXd lo(k), hi(k);
        for (int j = 0; j < k; ++j) {
          lo(j) = std::numeric_limits<double>::infinity();
          hi(j) = -std::numeric_limits<double>::infinity();
        }
        for (const auto& corner : ctx.bbox_corners) {
          const Eigen::VectorXd p = comp * corner;
          lo = lo.cwiseMin(p);
          hi = hi.cwiseMax(p);
        }
        double window = 1.0;
        for (int j = 0; j < k; ++j) window *= hi(j) - lo(j);
        if (window <= 0.0) return 0.0;  // degenerate support projection
        Eigen::VectorXd xc(k);
        for (int j = 0; j < k; ++j) xc(j) = stream.uniform(lo(j), hi(j));
        const AffineFlat flat(sub, comp.transpose() * xc);
        const auto chi = slice_chi(set, flat);
        if (!chi.has_value()) continue;  // boundary tie: redraw this index
        return window * static_cast<double>(*chi);
      }
      throw std::runtime_error("mu_slice_mc: resample limit exceeded");
    };
  }

  const std::vector<double> raw = run_indexed(opt.samples, opt.threads, body);
  const MeanStderr ms = mean_stderr(raw);
  est.value = c * ms.mean;
  est.std_error = c * ms.std_error;
  est.samples = opt.samples;
  return est;
}

}  // namespace

bool CroftonConstants::has(int n, int k) const {
  if (k == 0 || k == n) return true;
  return table_.count({n, k}) > 0;
}

double CroftonConstants::get(int n, int k) const {
  if (k == 0 || k == n) return 1.0;
  const auto it = table_.find({n, k});
  if (it == table_.end())
    throw CalibrationError("no calibration constant for (n=" +
                           std::to_string(n) + ", k=" + std::to_string(k) + ")");
  return it->second.value;
}

const CalibrationEntry& CroftonConstants::entry(int n, int k) const {
  static const CalibrationEntry kUnit{1.0, 0.0, 0, 0};
  if (k == 0 || k == n) return kUnit;
  const auto it = table_.find({n, k});
  if (it == table_.end())
    throw CalibrationError("no calibration constant for (n=" +
                           std::to_string(n) + ", k=" + std::to_string(k) + ")");
  return it->second;
}

void CroftonConstants::set(int n, int k, CalibrationEntry e) {
  if (k <= 0 || k >= n)
    throw std::invalid_argument("CroftonConstants: only 1 <= k <= n-1 stored");
  table_[{n, k}] = e;
}

double mu_grid_exact(const GridRegion& region, int k) {
  const int n = region.complex().dim();
  if (k < 0 || k > n)
    throw std::invalid_argument("mu_grid_exact: k out of range");
  std::vector<double> terms;
  terms.reserve(region.cells().size());
  for (const auto& cell : region.cells()) {
    const int d = region.complex().cell_dim(cell);
    if (k > d) {
      terms.push_back(0.0);
      continue;
    }
    const double ek = elementary_symmetric(region.complex().cell_lengths(cell), k);
    terms.push_back((d - k) % 2 == 0 ? ek : -ek);
  }
  return pairwise_sum(terms);
}

MCEstimate mu_crofton(const SimplicialSet& set, int k, const CroftonConstants& c,
                      const SamplingOptions& opt) {
  return mc_common(set, k, c, opt, kTagCrofton, false);
}

MCEstimate mu_crofton(const GridRegion& region, int k, const CroftonConstants& c,
                      const SamplingOptions& opt) {
  return mc_common(region, k, c, opt, kTagCrofton, false);
}

MCEstimate mu_slice_mc(const SimplicialSet& set, int k, const CroftonConstants& c,
                       const SamplingOptions& opt) {
  return mc_common(set, k, c, opt, kTagSlice, true);
}

MCEstimate mu_slice_mc(const GridRegion& region, int k,
                       const CroftonConstants& c, const SamplingOptions& opt) {
  return mc_common(region, k, c, opt, kTagSlice, true);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

CalibrationEntry calibrate(int n, int k, long long samples, std::uint64_t seed,
                           int threads) {
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("calibrate: requires 1 <= k <= n-1");
  if (k > 3)
    throw std::invalid_argument("calibrate: hull measures support k <= 3");
  if (samples < 2) throw std::invalid_argument("calibrate: samples must be >= 2");

  std::vector<std::vector<double>> axes(static_cast<std::size_t>(n), {0.0, 1.0});
  const GridComplex cube(axes);
  std::set<GridCell> cells;
  for (auto& c : cube.all_cells()) cells.insert(c);
  const GridRegion closed_cube(cube, std::move(cells));

  SliceContext ctx{cell_views(closed_cube), closed_cube.complex().bounding_corners(), n};
  const std::vector<double> raw = run_indexed(
      samples, threads, [&ctx, k, seed](std::int64_t i) {
        RngStream stream(seed,
                         stream_id(kTagCrofton, static_cast<std::uint64_t>(i)));
        return crofton_raw(ctx, k, stream);
      });
  const MeanStderr ms = mean_stderr(raw);
  const double target = binomial(n, k);
  if (ms.mean <= 0.0)
    throw CalibrationError("calibrate: non-positive raw mean");

  CalibrationEntry e;
  e.value = target / ms.mean;
  e.std_error = target * ms.std_error / (ms.mean * ms.mean);
  e.samples = samples;
  e.seed = seed;
  if (e.std_error > 0.01 * e.value)
    throw CalibrationError(
        "calibrate: insufficient samples (standard error above 1%)");
  return e;
}

double ensure_constant(CroftonConstants& c, int n, int k) {
  if (c.has(n, k)) return c.get(n, k);
  // Deterministic default: fixed internal seed and budget so that identical
  // configurations resolve to identical constants.
  c.set(n, k, calibrate(n, k, 200000, 0xCA11Bu, 1));
  return c.get(n, k);
}

}  // namespace hadwiger
