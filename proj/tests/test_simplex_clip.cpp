#include <doctest.h>

#include <cmath>

#include "hadwiger/simplex_clip.hpp"
#include "test_support.hpp"

using namespace hadwiger;
using hadwiger::test::vec1;
using hadwiger::test::vec2;
using hadwiger::test::vec3;

namespace {

/// CDF of an affine function over a uniform simplex point, for distinct
/// vertex values: P(h <= u) = sum_i (u - w_i)_+^d / prod_{j != i} (w_j - w_i).
double simplex_value_cdf(std::vector<double> w, double u) {
  const int d = static_cast<int>(w.size()) - 1;
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = u - w[i];
    if (t <= 0.0) continue;
    double denom = 1.0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (j != i) denom *= w[j] - w[i];
    total += std::pow(t, d) / denom;
  }
  return total;
}

SignedSimplex unit_triangle(std::vector<double> values) {
  return {1, {vec2(0, 0), vec2(1, 0), vec2(0, 1)}, std::move(values)};
}

SignedSimplex unit_tetra(std::vector<double> values) {
  return {1,
          {vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)},
          std::move(values)};
}

}  // namespace

TEST_CASE("simplex volumes") {
  CHECK(simplex_volume({vec1(0), vec1(3)}) == doctest::Approx(3.0));
  CHECK(simplex_volume(unit_triangle({0, 0, 0}).vertices) ==
        doctest::Approx(0.5));
  CHECK(simplex_volume(unit_tetra({0, 0, 0, 0}).vertices) ==
        doctest::Approx(1.0 / 6));
  // Embedded lower-dimensional simplex: Gram volume.
  CHECK(simplex_volume({vec2(0, 0), vec2(3, 4)}) == doctest::Approx(5.0));
}

TEST_CASE("segment clipping") {
  const SignedSimplex seg{1, {vec1(0), vec1(2)}, {0.0, 1.0}};
  CHECK(volume_below(seg, 0.3) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(volume_above(seg, 0.3) == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(volume_below(seg, -1.0) == 0.0);
  CHECK(volume_below(seg, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("triangle and tetra clipping against the order-statistics oracle") {
  // Distinct vertex values exercise every below/above split.
  const std::vector<double> tri_vals{0.0, 1.0, 2.0};
  const SignedSimplex tri = unit_triangle(tri_vals);
  for (double u = -0.25; u <= 2.3; u += 0.17) {
    const double want = 0.5 * simplex_value_cdf(tri_vals, u);
    CHECK(volume_below(tri, u) == doctest::Approx(want).epsilon(1e-10));
    CHECK(volume_below(tri, u) + volume_above(tri, u) ==
          doctest::Approx(0.5).epsilon(1e-10));
  }

  const std::vector<double> tet_vals{0.0, 0.7, 1.3, 2.1};
  const SignedSimplex tet = unit_tetra(tet_vals);
  for (double u = -0.2; u <= 2.3; u += 0.13) {
    const double want = (1.0 / 6) * simplex_value_cdf(tet_vals, u);
    CHECK(volume_below(tet, u) == doctest::Approx(want).epsilon(1e-9));
    CHECK(volume_below(tet, u) + volume_above(tet, u) ==
          doctest::Approx(1.0 / 6).epsilon(1e-10));
  }
}

TEST_CASE("clipping handles boundary values") {
  const SignedSimplex tri = unit_triangle({0.0, 1.0, 2.0});
  // Cut exactly through a vertex value.
  CHECK(volume_below(tri, 1.0) ==
        doctest::Approx(0.5 * simplex_value_cdf({0, 1, 2}, 1.0)).epsilon(1e-10));
  // Constant simplex: all or nothing.
  const SignedSimplex flat = unit_triangle({1.0, 1.0, 1.0});
  CHECK(volume_below(flat, 0.5) == 0.0);
  CHECK(volume_below(flat, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("piecewise-linear integration over simplices") {
  // Tent via two segments: integral of the identity is the area, 1.
  const SignedSimplex left{1, {vec1(-1), vec1(0)}, {0.0, 1.0}};
  const SignedSimplex right{1, {vec1(0), vec1(1)}, {1.0, 0.0}};
  const std::vector<double> id_x{0.0, 1.0}, id_y{0.0, 1.0};
  CHECK(integrate_pl_of_affine(left, id_x, id_y) +
            integrate_pl_of_affine(right, id_x, id_y) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Hinge c(t) = max(t - 1/2, 0) on the tent: 2 * integral_0^(1/2) s ds.
  const std::vector<double> hx{0.0, 0.5, 1.0}, hy{0.0, 0.0, 0.5};
  CHECK(integrate_pl_of_affine(left, hx, hy) +
            integrate_pl_of_affine(right, hx, hy) ==
        doctest::Approx(0.25).epsilon(1e-12));

  // Same hinge against h = x over the unit right triangle:
  // integral_u^1 (x - u)(1 - x) dx = (1 - u)^3 / 6 at u = 1/4.
  const SignedSimplex tri = unit_triangle({0.0, 1.0, 0.0});
  const std::vector<double> h2x{0.0, 0.25, 2.0}, h2y{0.0, 0.0, 1.75};
  CHECK(integrate_pl_of_affine(tri, h2x, h2y) ==
        doctest::Approx(std::pow(0.75, 3) / 6).epsilon(1e-12));

  // Non-monotone map |t| - handled by the same splitting.
  const SignedSimplex span{1, {vec1(-2), vec1(2)}, {-2.0, 2.0}};
  const std::vector<double> ax{-2.0, 0.0, 2.0}, ay{2.0, 0.0, 2.0};
  CHECK(integrate_pl_of_affine(span, ax, ay) ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("clip rejects high dimensions only when a split is needed") {
  // 4-simplex with a breakpoint inside its value range.
  std::vector<Eigen::VectorXd> verts;
  for (int i = 0; i < 5; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
    if (i > 0) v(i - 1) = 1.0;
    verts.push_back(v);
  }
  const SignedSimplex s4{1, verts, {0.0, 1.0, 2.0, 3.0, 4.0}};
  CHECK_THROWS_AS(integrate_pl_of_affine(s4, {0.0, 2.0}, {0.0, 1.0}),
                  std::invalid_argument);
  // Affine on the whole range: fine in any dimension.
  CHECK_NOTHROW(integrate_pl_of_affine(s4, {-10.0, 0.0, 10.0},
                                       {-10.0, 0.0, 10.0}));
}
