#include "hadwiger/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hadwiger/lp.hpp"

namespace hadwiger {

namespace {

constexpr double kGramTol = 1e-12;
constexpr double kRankTol = 1e-10;

void check_orthonormal(const Eigen::MatrixXd& basis) {
  if (basis.rows() == 0) return;
  const Eigen::MatrixXd gram = basis * basis.transpose();
  const Eigen::MatrixXd eye =
      Eigen::MatrixXd::Identity(basis.rows(), basis.rows());
  if ((gram - eye).cwiseAbs().maxCoeff() > kGramTol)
    throw std::invalid_argument("Subspace: basis is not orthonormal");
}

}  // namespace

Subspace::Subspace(int ambient_dim, Eigen::MatrixXd basis)
    : n_(ambient_dim), basis_(std::move(basis)) {
  if (n_ < 0) throw std::invalid_argument("Subspace: negative dimension");
  if (basis_.rows() > n_)
    throw std::invalid_argument("Subspace: dimension exceeds ambient");
  if (basis_.rows() > 0 && basis_.cols() != n_)
    throw std::invalid_argument("Subspace: basis width != ambient dimension");
  if (basis_.rows() == 0) basis_.resize(0, n_);
  check_orthonormal(basis_);
}

AffineFlat::AffineFlat(Subspace s, Eigen::VectorXd off)
    : subspace(std::move(s)), offset(std::move(off)) {
  if (offset.size() != subspace.ambient_dim())
    throw std::invalid_argument("AffineFlat: offset dimension mismatch");
  for (int i = 0; i < subspace.dim(); ++i) {
    if (std::abs(subspace.basis().row(i).dot(offset)) > kGramTol)
      throw std::invalid_argument("AffineFlat: offset not orthogonal to L");
  }
}

Subspace sample_subspace(int n, int d, RngStream& stream) {
  if (n < 0 || d < 0 || d > n)
    throw std::invalid_argument("sample_subspace: invalid dimensions");
  if (d == 0) return Subspace(n, Eigen::MatrixXd(0, n));

  for (int attempt = 0; attempt < 256; ++attempt) {
    Eigen::MatrixXd q(d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j) q(i, j) = stream.normal();

    // Modified Gram-Schmidt, run twice for orthogonality near machine
    // precision; redraw when a residual collapses below the rank threshold.
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      Eigen::VectorXd v = q.row(i);
      for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < i; ++j) v -= q.row(j).dot(v) * q.row(j).transpose();
      const double norm = v.norm();
      if (norm < kRankTol) {
        ok = false;
        break;
      }
      q.row(i) = v / norm;
    }
    if (ok) return Subspace(n, std::move(q));
  }
  throw std::runtime_error("sample_subspace: persistent rank deficiency");
}

Eigen::MatrixXd sample_frame(int n, RngStream& stream) {
  return sample_subspace(n, n, stream).basis();
}

std::vector<Eigen::VectorXd> project(const std::vector<Eigen::VectorXd>& points,
                                     const Subspace& s) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != s.ambient_dim())
      throw std::invalid_argument("project: point dimension mismatch");
    out.push_back(s.basis() * p);
  }
  return out;
}

namespace {

double scale_of(const std::vector<Eigen::VectorXd>& pts) {
  double s = 1.0;
  for (const auto& p : pts)
    if (p.size() > 0) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

double interval_length(const std::vector<Eigen::VectorXd>& pts) {
  double lo = pts[0](0), hi = pts[0](0);
  for (const auto& p : pts) {
    lo = std::min(lo, p(0));
    hi = std::max(hi, p(0));
  }
  return hi - lo;
}

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
              const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Monotone-chain convex hull, counterclockwise, no repeated endpoint.
std::vector<Eigen::Vector2d> hull2d(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Eigen::Vector2d> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double polygon_area(const std::vector<Eigen::Vector2d>& poly) {
  double a = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * std::abs(a);
}

double area2d(const std::vector<Eigen::VectorXd>& pts) {
  std::vector<Eigen::Vector2d> v;
  v.reserve(pts.size());
  for (const auto& p : pts) v.emplace_back(p(0), p(1));
  auto h = hull2d(std::move(v));
  if (h.size() < 3) return 0.0;
  return polygon_area(h);
}

struct Plane {
  Eigen::Vector3d normal;  // unit, outward
  double offset;           // normal . x = offset on the plane
};

double volume3d(const std::vector<Eigen::VectorXd>& pts_in) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(pts_in.size());
  for (const auto& p : pts_in) pts.emplace_back(p(0), p(1), p(2));

  const double scale = scale_of(pts_in);
  const double side_tol = 1e-9 * scale;

  // Deduplicate.
  std::vector<Eigen::Vector3d> u;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : u)
      if ((p - q).norm() <= 1e-12 * scale) dup = true;
    if (!dup) u.push_back(p);
  }
  const std::size_t n = u.size();
  if (n < 4) return 0.0;

  // Brute-force supporting planes over all triples; fine for the small point
  // sets (projected cell corners) this library feeds in.
  std::vector<Plane> planes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Eigen::Vector3d nv = (u[j] - u[i]).cross(u[k] - u[i]);
        const double len = nv.norm();
        if (len <= 1e-12 * scale * scale) continue;
        nv /= len;
        double lo = 0.0, hi = 0.0;
        for (const auto& p : u) {
          const double s = nv.dot(p - u[i]);
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
        for (int sgn = 0; sgn < 2; ++sgn) {
          const bool supporting = sgn == 0 ? hi <= side_tol : lo >= -side_tol;
          if (!supporting) continue;
          Plane pl;
          pl.normal = sgn == 0 ? nv : Eigen::Vector3d(-nv);
          pl.offset = pl.normal.dot(u[i]);
          bool seen = false;
          for (const auto& q : planes) {
            if ((q.normal - pl.normal).norm() < 1e-9 &&
                std::abs(q.offset - pl.offset) < side_tol)
              seen = true;
          }
          if (!seen) planes.push_back(pl);
        }
      }
    }
  }
  if (planes.empty()) return 0.0;  // all coplanar

  // Divergence theorem: V = (1/3) * sum over facets of area * (n . x).
  double vol = 0.0;
  for (const auto& pl : planes) {
    std::vector<Eigen::Vector3d> on;
    for (const auto& p : u)
      if (std::abs(pl.normal.dot(p) - pl.offset) <= side_tol) on.push_back(p);
    if (on.size() < 3) continue;
    // In-plane coordinates.
    Eigen::Vector3d a = pl.normal.unitOrthogonal();
    Eigen::Vector3d b = pl.normal.cross(a);
    std::vector<Eigen::Vector2d> flat;
    flat.reserve(on.size());
    for (const auto& p : on) flat.emplace_back(a.dot(p), b.dot(p));
    auto h = hull2d(std::move(flat));
    if (h.size() < 3) continue;
    vol += polygon_area(h) * pl.offset;
  }
  return std::abs(vol) / 3.0;
}

}  // namespace

double hull_measure(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty())
    throw std::invalid_argument("hull_measure: empty point list");
  const int d = static_cast<int>(points[0].size());
  for (const auto& p : points)
    if (p.size() != d)
      throw std::invalid_argument("hull_measure: inconsistent dimensions");
  switch (d) {
    case 0:
      return 1.0;
    case 1:
      return interval_length(points);
    case 2:
      return area2d(points);
    case 3:
      return volume3d(points);
    default:
      throw std::invalid_argument("hull_measure: only d <= 3 supported");
  }
}

double hull_margin(const Eigen::VectorXd& point,
                   const std::vector<Eigen::VectorXd>& points) {
  if (points.empty())
    throw std::invalid_argument("hull_margin: empty point list");
  const int d = static_cast<int>(point.size());
  for (const auto& p : points)
    if (p.size() != d)
      throw std::invalid_argument("hull_margin: inconsistent dimensions");
  const int nn = static_cast<int>(points.size());

  // Maximize t with x = sum lam_i w_i, sum lam_i = 1, lam_i >= t.
  // Substituting lam_i = u_i + t (u >= 0, t = tp - tm) gives the standard
  // form below.
  Eigen::VectorXd wsum = Eigen::VectorXd::Zero(d);
  for (const auto& p : points) wsum += p;

  Eigen::MatrixXd A(d + 1, nn + 2);
  for (int i = 0; i < nn; ++i) {
    A.col(i).head(d) = points[static_cast<std::size_t>(i)];
    A(d, i) = 1.0;
  }
  A.col(nn).head(d) = wsum;
  A(d, nn) = static_cast<double>(nn);
  A.col(nn + 1) = -A.col(nn);

  Eigen::VectorXd b(d + 1);
  b.head(d) = point;
  b(d) = 1.0;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(nn + 2);
  c(nn) = 1.0;
  c(nn + 1) = -1.0;

  const LpSolution sol = lp_maximize(A, b, c);
  if (sol.status == LpStatus::kInfeasible) return -sol.infeasibility;
  if (sol.status != LpStatus::kOptimal)
    throw std::logic_error("hull_margin: unexpected LP status");
  return sol.objective;
}

bool hull_contains(const Eigen::VectorXd& point,
                   const std::vector<Eigen::VectorXd>& points) {
  return hull_margin(point, points) >= -1e-9;
}

Eigen::MatrixXd complement_basis(const Subspace& s) {
  const int n = s.ambient_dim();
  const int d = s.dim();
  if (d == 0) return Eigen::MatrixXd::Identity(n, n);
  if (d == n) return Eigen::MatrixXd(0, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.basis(),
                                        Eigen::ComputeFullV);
  // Right singular vectors beyond the row rank span the kernel.
  return svd.matrixV().rightCols(n - d).transpose();
}

}  // namespace hadwiger
