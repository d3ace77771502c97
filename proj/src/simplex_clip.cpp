#include "hadwiger/simplex_clip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hadwiger {

double simplex_volume(const std::vector<Eigen::VectorXd>& vertices) {
  const int d = static_cast<int>(vertices.size()) - 1;
  if (d <= 0) return d == 0 ? 1.0 : 0.0;
  Eigen::MatrixXd e(vertices[0].size(), d);
  for (int i = 1; i <= d; ++i)
    e.col(i - 1) = vertices[static_cast<std::size_t>(i)] - vertices[0];
  const double det = (e.transpose() * e).determinant();
  if (det <= 0.0) return 0.0;
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= static_cast<double>(i);
  return std::sqrt(det) / fact;
}

namespace {

Eigen::VectorXd cut_point(const Eigen::VectorXd& a, double va,
                          const Eigen::VectorXd& b, double vb, double u) {
  const double t = (u - va) / (vb - va);
  return a + t * (b - a);
}

SignedSimplex make_simplex(int sign,
                           std::initializer_list<const Eigen::VectorXd*> pts,
                           std::initializer_list<double> vals) {
  SignedSimplex out;
  out.sign = sign;
  for (const auto* p : pts) out.vertices.push_back(*p);
  out.values.assign(vals);
  return out;
}

}  // namespace

std::vector<SignedSimplex> clip_below(const SignedSimplex& s, double u) {
  const int d = static_cast<int>(s.vertices.size()) - 1;
  std::vector<int> below, above;
  for (int i = 0; i <= d; ++i) {
    if (s.values[static_cast<std::size_t>(i)] <= u)
      below.push_back(i);
    else
      above.push_back(i);
  }
  if (above.empty()) return {s};
  if (below.empty()) return {};
  if (d > 3)
    throw std::invalid_argument("clip_below: simplex dimension > 3");

  auto v = [&s](int i) -> const Eigen::VectorXd& {
    return s.vertices[static_cast<std::size_t>(i)];
  };
  auto w = [&s](int i) { return s.values[static_cast<std::size_t>(i)]; };
  auto cut = [&](int bi, int ai) {
    return cut_point(v(bi), w(bi), v(ai), w(ai), u);
  };

  std::vector<SignedSimplex> out;
  if (d == 1) {
    const int b = below[0], a = above[0];
    const Eigen::VectorXd p = cut(b, a);
    out.push_back(make_simplex(s.sign, {&v(b), &p}, {w(b), u}));
    return out;
  }
  if (d == 2) {
    if (below.size() == 1) {
      const int b = below[0];
      const Eigen::VectorXd p0 = cut(b, above[0]);
      const Eigen::VectorXd p1 = cut(b, above[1]);
      out.push_back(make_simplex(s.sign, {&v(b), &p0, &p1}, {w(b), u, u}));
    } else {
      // Two below: complement of the small triangle at the apex.
      const int a = above[0];
      const Eigen::VectorXd p0 = cut(below[0], a);
      const Eigen::VectorXd p1 = cut(below[1], a);
      out.push_back(s);
      out.push_back(make_simplex(-s.sign, {&v(a), &p0, &p1}, {w(a), u, u}));
    }
    return out;
  }
  // d == 3
  if (below.size() == 1) {
    const int b = below[0];
    const Eigen::VectorXd p0 = cut(b, above[0]);
    const Eigen::VectorXd p1 = cut(b, above[1]);
    const Eigen::VectorXd p2 = cut(b, above[2]);
    out.push_back(
        make_simplex(s.sign, {&v(b), &p0, &p1, &p2}, {w(b), u, u, u}));
  } else if (below.size() == 3) {
    const int a = above[0];
    const Eigen::VectorXd p0 = cut(below[0], a);
    const Eigen::VectorXd p1 = cut(below[1], a);
    const Eigen::VectorXd p2 = cut(below[2], a);
    out.push_back(s);
    out.push_back(
        make_simplex(-s.sign, {&v(a), &p0, &p1, &p2}, {w(a), u, u, u}));
  } else {
    // Two below / two above: wedge cone decomposition from below[0] over the
    // faces of the cut polytope not containing it. The cut quadrilateral has
    // the cyclic order i00, i10, i11, i01 (each consecutive pair shares a
    // tetra facet).
    const int b0 = below[0], b1 = below[1];
    const int a0 = above[0], a1 = above[1];
    const Eigen::VectorXd i00 = cut(b0, a0);
    const Eigen::VectorXd i01 = cut(b0, a1);
    const Eigen::VectorXd i10 = cut(b1, a0);
    const Eigen::VectorXd i11 = cut(b1, a1);
    out.push_back(
        make_simplex(s.sign, {&v(b0), &i00, &i10, &i11}, {w(b0), u, u, u}));
    out.push_back(
        make_simplex(s.sign, {&v(b0), &i00, &i11, &i01}, {w(b0), u, u, u}));
    out.push_back(
        make_simplex(s.sign, {&v(b0), &v(b1), &i10, &i11}, {w(b0), w(b1), u, u}));
  }
  return out;
}

std::vector<SignedSimplex> clip_above(const SignedSimplex& s, double u) {
  SignedSimplex neg = s;
  for (double& v : neg.values) v = -v;
  auto pieces = clip_below(neg, -u);
  for (auto& p : pieces)
    for (double& v : p.values) v = -v;
  return pieces;
}

namespace {

double signed_volume_sum(const std::vector<SignedSimplex>& pieces) {
  double vol = 0.0;
  for (const auto& p : pieces)
    vol += static_cast<double>(p.sign) * simplex_volume(p.vertices);
  return vol;
}

}  // namespace

double volume_below(const SignedSimplex& s, double u) {
  return signed_volume_sum(clip_below(s, u));
}

double volume_above(const SignedSimplex& s, double u) {
  return signed_volume_sum(clip_above(s, u));
}

double piecewise_linear_eval(const std::vector<double>& xs,
                             const std::vector<double>& ys, double x) {
  const std::size_t n = xs.size();
  if (n == 1) return ys[0];
  std::size_t seg;
  if (x <= xs[0])
    seg = 0;
  else if (x >= xs[n - 1])
    seg = n - 2;
  else {
    seg = static_cast<std::size_t>(
              std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
    seg = std::min(seg, n - 2);
  }
  const double slope = (ys[seg + 1] - ys[seg]) / (xs[seg + 1] - xs[seg]);
  return ys[seg] + slope * (x - xs[seg]);
}

namespace {

double integrate_rec(const SignedSimplex& s, const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  double lo = s.values[0], hi = s.values[0];
  for (double v : s.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // First breakpoint strictly inside the value range forces a split.
  for (double u : xs) {
    if (u > lo && u < hi) {
      double total = 0.0;
      for (const auto& p : clip_below(s, u)) total += integrate_rec(p, xs, ys);
      for (const auto& p : clip_above(s, u)) total += integrate_rec(p, xs, ys);
      return total;
    }
  }
  // c is affine on [lo, hi]: integral = vol * c(mean of vertex values).
  double mean = 0.0;
  for (double v : s.values) mean += v;
  mean /= static_cast<double>(s.values.size());
  return static_cast<double>(s.sign) * simplex_volume(s.vertices) *
         piecewise_linear_eval(xs, ys, mean);
}

}  // namespace

double integrate_pl_of_affine(const SignedSimplex& s,
                              const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size())
    throw std::invalid_argument("integrate_pl_of_affine: bad breakpoint list");
  return integrate_rec(s, xs, ys);
}

}  // namespace hadwiger
