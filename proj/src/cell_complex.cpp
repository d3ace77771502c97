#include "hadwiger/cell_complex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hadwiger/lp.hpp"

namespace hadwiger {

namespace {
constexpr double kTieTol = 1e-9;
constexpr std::size_t kPairwiseCheckLimit = 1000;
}  // namespace

GridComplex::GridComplex(std::vector<std::vector<double>> axes)
    : axes_(std::move(axes)) {
  for (const auto& a : axes_) {
    if (a.size() < 2)
      throw std::invalid_argument("GridComplex: axis needs >= 2 breakpoints");
    for (std::size_t i = 1; i < a.size(); ++i)
      if (!(a[i - 1] < a[i]))
        throw std::invalid_argument(
            "GridComplex: breakpoints must be strictly increasing");
  }
}

bool GridComplex::valid_cell(const GridCell& c) const {
  if (static_cast<int>(c.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (c[static_cast<std::size_t>(i)] < 0 ||
        c[static_cast<std::size_t>(i)] >= parity_count(i))
      return false;
  }
  return true;
}

int GridComplex::cell_dim(const GridCell& c) const {
  int d = 0;
  for (int p : c) d += p % 2;
  return d;
}

double GridComplex::factor_length(int axis, int parity) const {
  if (parity % 2 == 0) return 0.0;
  const auto& a = axes_[static_cast<std::size_t>(axis)];
  const int i = parity / 2;
  return a[static_cast<std::size_t>(i + 1)] - a[static_cast<std::size_t>(i)];
}

std::vector<double> GridComplex::cell_lengths(const GridCell& c) const {
  std::vector<double> out;
  for (int ax = 0; ax < dim(); ++ax) {
    const int p = c[static_cast<std::size_t>(ax)];
    if (p % 2 == 1) out.push_back(factor_length(ax, p));
  }
  return out;
}

std::vector<Eigen::VectorXd> GridComplex::cell_corners(const GridCell& c) const {
  std::vector<std::vector<double>> per_axis;
  for (int ax = 0; ax < dim(); ++ax) {
    const auto& a = axes_[static_cast<std::size_t>(ax)];
    const int p = c[static_cast<std::size_t>(ax)];
    if (p % 2 == 0) {
      per_axis.push_back({a[static_cast<std::size_t>(p / 2)]});
    } else {
      per_axis.push_back({a[static_cast<std::size_t>(p / 2)],
                          a[static_cast<std::size_t>(p / 2 + 1)]});
    }
  }
  std::vector<Eigen::VectorXd> corners;
  std::vector<std::size_t> idx(per_axis.size(), 0);
  while (true) {
    Eigen::VectorXd pt(dim());
    for (int ax = 0; ax < dim(); ++ax)
      pt(ax) = per_axis[static_cast<std::size_t>(ax)][idx[static_cast<std::size_t>(ax)]];
    corners.push_back(std::move(pt));
    int ax = 0;
    while (ax < dim()) {
      auto& i = idx[static_cast<std::size_t>(ax)];
      if (++i < per_axis[static_cast<std::size_t>(ax)].size()) break;
      i = 0;
      ++ax;
    }
    if (ax == dim()) break;
  }
  return corners;
}

std::uint64_t GridComplex::total_cells() const {
  std::uint64_t t = 1;
  for (int ax = 0; ax < dim(); ++ax)
    t *= static_cast<std::uint64_t>(parity_count(ax));
  return t;
}

std::vector<GridCell> GridComplex::all_cells() const {
  std::vector<GridCell> cells;
  GridCell c(static_cast<std::size_t>(dim()), 0);
  while (true) {
    cells.push_back(c);
    int ax = 0;
    while (ax < dim()) {
      auto& p = c[static_cast<std::size_t>(ax)];
      if (++p < parity_count(ax)) break;
      p = 0;
      ++ax;
    }
    if (ax == dim()) break;
  }
  return cells;
}

std::vector<Eigen::VectorXd> GridComplex::bounding_corners() const {
  std::vector<Eigen::VectorXd> corners;
  const int n = dim();
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXd pt(n);
    for (int ax = 0; ax < n; ++ax) {
      const auto& a = axes_[static_cast<std::size_t>(ax)];
      pt(ax) = (mask >> ax) & 1 ? a.back() : a.front();
    }
    corners.push_back(std::move(pt));
  }
  return corners;
}

GridRegion::GridRegion(GridComplex complex, std::set<GridCell> cells)
    : complex_(std::move(complex)), cells_(std::move(cells)) {
  for (const auto& c : cells_)
    if (!complex_.valid_cell(c))
      throw std::invalid_argument("GridRegion: invalid cell identifier");
}

namespace {

/// Affine independence of tuple vertices: rank of the edge matrix.
bool affinely_independent(const std::vector<Eigen::VectorXd>& v) {
  if (v.size() <= 1) return true;
  Eigen::MatrixXd e(v[0].size(), static_cast<Eigen::Index>(v.size()) - 1);
  for (std::size_t i = 1; i < v.size(); ++i) e.col(static_cast<Eigen::Index>(i - 1)) = v[i] - v[0];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  if (svd.singularValues().size() < e.cols()) return false;
  const double smax = svd.singularValues()(0);
  return svd.singularValues()(e.cols() - 1) > 1e-12 * std::max(1.0, smax);
}

/// Open-simplex intersection test: the two open simplices meet iff there is
/// a common point with all barycentric weights strictly positive on both
/// sides, found by maximizing the smallest weight.
bool open_simplices_intersect(const std::vector<Eigen::VectorXd>& a,
                              const std::vector<Eigen::VectorXd>& b) {
  const int n = static_cast<int>(a[0].size());
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  const int nv = na + nb + 2;  // weights plus t = tp - tm
  // sum la_i a_i - sum mu_j b_j = 0,  sum la = 1, sum mu = 1, weights >= t.
  // Substituting la = u + t, mu = w + t turns "all weights >= t" into
  // standard form.
  Eigen::MatrixXd A(n + 2, nv);
  A.setZero();
  Eigen::VectorXd sum_a = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sum_b = Eigen::VectorXd::Zero(n);
  for (const auto& p : a) sum_a += p;
  for (const auto& p : b) sum_b += p;
  for (int i = 0; i < na; ++i) {
    A.col(i).head(n) = a[static_cast<std::size_t>(i)];
    A(n, i) = 1.0;
  }
  for (int j = 0; j < nb; ++j) {
    A.col(na + j).head(n) = -b[static_cast<std::size_t>(j)];
    A(n + 1, na + j) = 1.0;
  }
  A.col(na + nb).head(n) = sum_a - sum_b;
  A(n, na + nb) = static_cast<double>(na);
  A(n + 1, na + nb) = static_cast<double>(nb);
  A.col(na + nb + 1) = -A.col(na + nb);
  Eigen::VectorXd rhs(n + 2);
  rhs.setZero();
  rhs(n) = 1.0;
  rhs(n + 1) = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
  c(na + nb) = 1.0;
  c(na + nb + 1) = -1.0;
  const LpSolution sol = lp_maximize(A, rhs, c);
  return sol.status == LpStatus::kOptimal && sol.objective > 1e-9;
}

}  // namespace

SimplicialSet::SimplicialSet(int ambient_dim,
                             std::vector<Eigen::VectorXd> vertices,
                             std::vector<std::vector<int>> cells)
    : n_(ambient_dim), vertices_(std::move(vertices)), cells_(std::move(cells)) {
  if (n_ < 0) throw std::invalid_argument("SimplicialSet: negative dimension");
  for (const auto& v : vertices_)
    if (v.size() != n_)
      throw std::invalid_argument("SimplicialSet: vertex dimension mismatch");
  for (const auto& c : cells_) {
    if (c.empty())
      throw std::invalid_argument("SimplicialSet: empty cell tuple");
    for (int i : c)
      if (i < 0 || i >= static_cast<int>(vertices_.size()))
        throw std::invalid_argument("SimplicialSet: vertex index out of range");
    std::vector<int> s = c;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("SimplicialSet: repeated vertex in cell");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (!affinely_independent(cell_vertices(i)))
      throw std::invalid_argument(
          "SimplicialSet: cell vertices affinely dependent");
  if (cells_.size() <= kPairwiseCheckLimit) {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      for (std::size_t j = i + 1; j < cells_.size(); ++j) {
        if (open_simplices_intersect(cell_vertices(i), cell_vertices(j)))
          throw std::invalid_argument(
              "SimplicialSet: open cells are not pairwise disjoint");
      }
    }
  }
}

std::vector<Eigen::VectorXd> SimplicialSet::cell_vertices(std::size_t i) const {
  std::vector<Eigen::VectorXd> out;
  for (int vi : cells_[i]) out.push_back(vertices_[static_cast<std::size_t>(vi)]);
  return out;
}

std::vector<Eigen::VectorXd> SimplicialSet::bounding_corners() const {
  Eigen::VectorXd lo = Eigen::VectorXd::Zero(n_);
  Eigen::VectorXd hi = Eigen::VectorXd::Zero(n_);
  if (!vertices_.empty()) {
    lo = vertices_[0];
    hi = vertices_[0];
    for (const auto& v : vertices_) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  }
  std::vector<Eigen::VectorXd> corners;
  for (int mask = 0; mask < (1 << n_); ++mask) {
    Eigen::VectorXd pt(n_);
    for (int ax = 0; ax < n_; ++ax) pt(ax) = (mask >> ax) & 1 ? hi(ax) : lo(ax);
    corners.push_back(std::move(pt));
  }
  return corners;
}

long long euler_characteristic(const GridRegion& r) {
  long long chi = 0;
  for (const auto& c : r.cells())
    chi += r.complex().cell_dim(c) % 2 == 0 ? 1 : -1;
  return chi;
}

long long euler_characteristic(const SimplicialSet& s) {
  long long chi = 0;
  for (std::size_t i = 0; i < s.cells().size(); ++i)
    chi += s.cell_dim(i) % 2 == 0 ? 1 : -1;
  return chi;
}

GridRegion closure(const GridRegion& r) {
  std::set<GridCell> out;
  const int n = r.complex().dim();
  for (const auto& cell : r.cells()) {
    // Face options per axis: breakpoints stay, intervals contribute
    // themselves plus their two endpoints.
    std::vector<std::vector<int>> options(static_cast<std::size_t>(n));
    for (int ax = 0; ax < n; ++ax) {
      const int p = cell[static_cast<std::size_t>(ax)];
      if (p % 2 == 0)
        options[static_cast<std::size_t>(ax)] = {p};
      else
        options[static_cast<std::size_t>(ax)] = {p - 1, p, p + 1};
    }
    GridCell face(static_cast<std::size_t>(n));
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      for (int ax = 0; ax < n; ++ax)
        face[static_cast<std::size_t>(ax)] =
            options[static_cast<std::size_t>(ax)][idx[static_cast<std::size_t>(ax)]];
      out.insert(face);
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
  return GridRegion(r.complex(), std::move(out));
}

namespace {

std::vector<std::vector<int>> axis_refinement_map(
    const std::vector<double>& old_axis, const std::vector<double>& new_axis) {
  std::vector<std::vector<int>> map(2 * old_axis.size() - 1);
  auto new_index = [&new_axis](double x) {
    const auto it = std::lower_bound(new_axis.begin(), new_axis.end(), x);
    return static_cast<int>(it - new_axis.begin());
  };
  for (std::size_t i = 0; i < old_axis.size(); ++i)
    map[2 * i] = {2 * new_index(old_axis[i])};
  for (std::size_t i = 0; i + 1 < old_axis.size(); ++i) {
    const int lo = new_index(old_axis[i]);
    const int hi = new_index(old_axis[i + 1]);
    std::vector<int> parts;
    for (int p = 2 * lo + 1; p <= 2 * hi - 1; ++p) parts.push_back(p);
    map[2 * i + 1] = std::move(parts);
  }
  return map;
}

}  // namespace

std::vector<GridCell> Refinement::map_cell(int which, const GridCell& c) const {
  const auto& maps = axis_maps[static_cast<std::size_t>(which)];
  const int n = static_cast<int>(maps.size());
  std::vector<GridCell> out;
  GridCell cur(static_cast<std::size_t>(n));
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    for (int ax = 0; ax < n; ++ax)
      cur[static_cast<std::size_t>(ax)] =
          maps[static_cast<std::size_t>(ax)][static_cast<std::size_t>(
              c[static_cast<std::size_t>(ax)])][idx[static_cast<std::size_t>(ax)]];
    out.push_back(cur);
    int ax = 0;
    while (ax < n) {
      auto& i = idx[static_cast<std::size_t>(ax)];
      if (++i < maps[static_cast<std::size_t>(ax)][static_cast<std::size_t>(
                        c[static_cast<std::size_t>(ax)])].size())
        break;
      i = 0;
      ++ax;
    }
    if (ax == n) break;
  }
  return out;
}

GridRegion Refinement::map_region(int which, const GridRegion& r) const {
  std::set<GridCell> cells;
  for (const auto& c : r.cells())
    for (auto& rc : map_cell(which, c)) cells.insert(std::move(rc));
  return GridRegion(common, std::move(cells));
}

Refinement refine_common(const GridComplex& a, const GridComplex& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("refine_common: dimension mismatch");
  std::vector<std::vector<double>> merged;
  for (int ax = 0; ax < a.dim(); ++ax) {
    std::vector<double> u = a.axis(ax);
    u.insert(u.end(), b.axis(ax).begin(), b.axis(ax).end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    merged.push_back(std::move(u));
  }
  Refinement ref{GridComplex(merged), {}};
  for (int ax = 0; ax < a.dim(); ++ax) {
    ref.axis_maps[0].push_back(
        axis_refinement_map(a.axis(ax), merged[static_cast<std::size_t>(ax)]));
    ref.axis_maps[1].push_back(
        axis_refinement_map(b.axis(ax), merged[static_cast<std::size_t>(ax)]));
  }
  return ref;
}

GridRegion region_boolean(const GridRegion& a, const GridRegion& b, SetOp op) {
  const Refinement ref = refine_common(a.complex(), b.complex());
  const GridRegion ra = ref.map_region(0, a);
  const GridRegion rb = ref.map_region(1, b);
  std::set<GridCell> cells;
  switch (op) {
    case SetOp::kUnion:
      cells = ra.cells();
      cells.insert(rb.cells().begin(), rb.cells().end());
      break;
    case SetOp::kIntersection:
      std::set_intersection(ra.cells().begin(), ra.cells().end(),
                            rb.cells().begin(), rb.cells().end(),
                            std::inserter(cells, cells.begin()));
      break;
    case SetOp::kDifference:
      std::set_difference(ra.cells().begin(), ra.cells().end(),
                          rb.cells().begin(), rb.cells().end(),
                          std::inserter(cells, cells.begin()));
      break;
  }
  return GridRegion(ref.common, std::move(cells));
}

namespace {

std::optional<long long> slice_chi_views(const std::vector<CellView>& views,
                                         int ambient, const AffineFlat& flat) {
  const int k = ambient - flat.subspace.dim();
  const Eigen::MatrixXd comp = complement_basis(flat.subspace);
  const Eigen::VectorXd xc = comp * flat.offset;
  long long chi = 0;
  for (const auto& view : views) {
    std::vector<Eigen::VectorXd> proj;
    proj.reserve(view.corners.size());
    for (const auto& p : view.corners) proj.push_back(comp * p);
    const double margin = hull_margin(xc, proj);
    if (std::abs(margin) <= kTieTol) return std::nullopt;
    if (view.dim < k) {
      if (margin > 0.0) return std::nullopt;  // flat hit a thin cell
      continue;
    }
    if (margin > 0.0) chi += (view.dim - k) % 2 == 0 ? 1 : -1;
  }
  return chi;
}

}  // namespace

std::optional<long long> slice_chi(const SimplicialSet& s,
                                   const AffineFlat& flat) {
  if (flat.subspace.ambient_dim() != s.ambient_dim())
    throw std::invalid_argument("slice_chi: ambient dimension mismatch");
  return slice_chi_views(cell_views(s), s.ambient_dim(), flat);
}

std::optional<long long> slice_chi(const GridRegion& r, const AffineFlat& flat) {
  if (flat.subspace.ambient_dim() != r.complex().dim())
    throw std::invalid_argument("slice_chi: ambient dimension mismatch");
  return slice_chi_views(cell_views(r), r.complex().dim(), flat);
}

std::vector<CellView> cell_views(const SimplicialSet& s) {
  std::vector<CellView> out;
  out.reserve(s.cells().size());
  for (std::size_t i = 0; i < s.cells().size(); ++i)
    out.push_back({s.cell_dim(i), s.cell_vertices(i)});
  return out;
}

std::vector<CellView> cell_views(const GridRegion& r) {
  std::vector<CellView> out;
  out.reserve(r.cells().size());
  for (const auto& c : r.cells())
    out.push_back({r.complex().cell_dim(c), r.complex().cell_corners(c)});
  return out;
}

}  // namespace hadwiger
