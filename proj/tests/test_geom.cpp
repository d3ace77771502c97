#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hadwiger/geom.hpp"
#include "test_support.hpp"

using namespace hadwiger;
using hadwiger::test::vec1;
using hadwiger::test::vec2;
using hadwiger::test::vec3;

namespace {

double gram_error(const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd g = basis * basis.transpose();
  return (g - Eigen::MatrixXd::Identity(basis.rows(), basis.rows()))
      .cwiseAbs()
      .maxCoeff();
}

/// Independent hull-area oracle: brute-force directed hull edges (all other
/// points strictly left), then the shoelace sum over the edge set. Valid for
/// generic clouds with no collinear triples.
double hull_area_oracle(const std::vector<Eigen::VectorXd>& pts) {
  const std::size_t n = pts.size();
  double twice_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool edge = true;
      for (std::size_t k = 0; k < n && edge; ++k) {
        if (k == i || k == j) continue;
        const double cross =
            (pts[j](0) - pts[i](0)) * (pts[k](1) - pts[i](1)) -
            (pts[j](1) - pts[i](1)) * (pts[k](0) - pts[i](0));
        if (cross <= 0.0) edge = false;
      }
      if (edge) twice_area += pts[i](0) * pts[j](1) - pts[j](0) * pts[i](1);
    }
  }
  return 0.5 * std::abs(twice_area);
}

}  // namespace

TEST_CASE("sampled subspaces are orthonormal") {
  RngStream rng(7, 0);
  const int dims[][2] = {{1, 1}, {2, 1}, {3, 2}, {4, 3}, {5, 5}, {3, 0}};
  for (const auto& nd : dims) {
    for (int rep = 0; rep < 25; ++rep) {
      const Subspace s = sample_subspace(nd[0], nd[1], rng);
      CHECK(s.dim() == nd[1]);
      if (nd[1] > 0) CHECK(gram_error(s.basis()) < 1e-12);
    }
  }
}

TEST_CASE("one-dimensional subspace of R^1 is a sign") {
  RngStream rng(3, 1);
  for (int rep = 0; rep < 10; ++rep) {
    const Subspace s = sample_subspace(1, 1, rng);
    CHECK(std::abs(std::abs(s.basis()(0, 0)) - 1.0) < 1e-14);
  }
}

TEST_CASE("invalid sampling dimensions are rejected") {
  RngStream rng(1, 0);
  CHECK_THROWS_AS(sample_subspace(2, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_subspace(-1, 0, rng), std::invalid_argument);
}

TEST_CASE("line angles are uniform on [0, pi)") {
  // Chi-square goodness of fit, 20 bins; 1% critical value at 19 dof.
  const int samples = 10000;
  const int bins = 20;
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < samples; ++i) {
    RngStream rng(42, stream_id(0x616e67, static_cast<std::uint64_t>(i)));
    const Subspace s = sample_subspace(2, 1, rng);
    double angle = std::atan2(s.basis()(0, 1), s.basis()(0, 0));
    if (angle < 0) angle += M_PI;
    if (angle >= M_PI) angle -= M_PI;
    counts[static_cast<std::size_t>(angle / M_PI * bins)]++;
  }
  const double expected = static_cast<double>(samples) / bins;
  double chi2 = 0.0;
  for (int c : counts) {
    const double d = c - expected;
    chi2 += d * d / expected;
  }
  CHECK(chi2 < 36.191);
}

TEST_CASE("projection returns subspace coordinates") {
  Eigen::MatrixXd e1(1, 2);
  e1 << 1, 0;
  const Subspace sx(2, e1);
  const auto p = project({vec2(3, 4)}, sx);
  CHECK(p[0].size() == 1);
  CHECK(p[0](0) == doctest::Approx(3.0).epsilon(1e-14));

  const auto zero = project({vec2(0, 0)}, sx);
  CHECK(zero[0](0) == 0.0);

  Eigen::MatrixXd diag(1, 2);
  const double r = 1.0 / std::sqrt(2.0);
  diag << r, r;
  const Subspace sd(2, diag);
  const auto q = project({vec2(1, 1)}, sd);
  CHECK(std::abs(q[0](0) - std::sqrt(2.0)) < 1e-12);

  CHECK_THROWS_AS(project({vec1(1)}, sd), std::invalid_argument);
}

TEST_CASE("hull measure in the plane") {
  const std::vector<Eigen::VectorXd> square{vec2(0, 0), vec2(1, 0), vec2(1, 1),
                                            vec2(0, 1)};
  CHECK(hull_measure(square) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<Eigen::VectorXd> collinear{vec2(0, 0), vec2(1, 1),
                                               vec2(2, 2)};
  CHECK(hull_measure(collinear) == 0.0);

  CHECK_THROWS_AS(hull_measure({}), std::invalid_argument);
}

TEST_CASE("hull area matches the brute-force oracle on random clouds") {
  for (int rep = 0; rep < 50; ++rep) {
    RngStream rng(11, static_cast<std::uint64_t>(rep));
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 10; ++i)
      pts.push_back(vec2(rng.uniform(-2, 2), rng.uniform(-2, 2)));
    const double got = hull_measure(pts);
    const double want = hull_area_oracle(pts);
    CHECK(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("hull measure is invariant under permutation and rigid motion") {
  for (int rep = 0; rep < 20; ++rep) {
    RngStream rng(13, static_cast<std::uint64_t>(rep));
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 8; ++i)
      pts.push_back(vec2(rng.uniform(-2, 2), rng.uniform(-2, 2)));
    const double base = hull_measure(pts);

    std::vector<Eigen::VectorXd> shuffled = pts;
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[0], shuffled[3]);
    CHECK(std::abs(hull_measure(shuffled) - base) < 1e-9);

    const Eigen::MatrixXd rot = sample_frame(2, rng);
    const Eigen::VectorXd t = vec2(rng.uniform(-5, 5), rng.uniform(-5, 5));
    std::vector<Eigen::VectorXd> moved;
    for (const auto& p : pts) moved.push_back(rot * p + t);
    CHECK(std::abs(hull_measure(moved) - base) < 1e-9);
  }
}

TEST_CASE("hull measure in dimensions 0, 1 and 3") {
  CHECK(hull_measure({Eigen::VectorXd(0)}) == 1.0);
  CHECK(hull_measure({vec1(2), vec1(-1), vec1(0.5)}) ==
        doctest::Approx(3.0).epsilon(1e-14));

  // Unit cube corners.
  std::vector<Eigen::VectorXd> cube;
  for (int m = 0; m < 8; ++m)
    cube.push_back(vec3(m & 1, (m >> 1) & 1, (m >> 2) & 1));
  CHECK(hull_measure(cube) == doctest::Approx(1.0).epsilon(1e-9));

  // Affine images of the cube: hull volume is |det T|.
  for (int rep = 0; rep < 10; ++rep) {
    RngStream rng(17, static_cast<std::uint64_t>(rep));
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = rng.uniform(-1.5, 1.5);
    std::vector<Eigen::VectorXd> image;
    for (const auto& c : cube) {
      Eigen::VectorXd p = t * c;
      p(0) += 0.7;
      image.push_back(p);
    }
    CHECK(std::abs(hull_measure(image) - std::abs(t.determinant())) < 1e-9);
  }

  // A simplex: |det| / 6.
  const std::vector<Eigen::VectorXd> tetra{vec3(0, 0, 0), vec3(2, 0, 0),
                                           vec3(0, 3, 0), vec3(0, 0, 1)};
  CHECK(hull_measure(tetra) == doctest::Approx(1.0).epsilon(1e-9));

  // Coplanar points in R^3 have zero volume.
  const std::vector<Eigen::VectorXd> flat{vec3(0, 0, 0), vec3(1, 0, 0),
                                          vec3(0, 1, 0), vec3(1, 1, 0)};
  CHECK(hull_measure(flat) == 0.0);
}

TEST_CASE("hull membership") {
  const std::vector<Eigen::VectorXd> tri{vec2(0, 0), vec2(2, 0), vec2(0, 2)};
  CHECK(hull_contains(vec2(2.0 / 3, 2.0 / 3), tri));
  CHECK_FALSE(hull_contains(vec2(5, 5), tri));

  const std::vector<Eigen::VectorXd> seg{vec1(-1), vec1(2)};
  CHECK(hull_contains(vec1(-1), seg));
  CHECK(hull_contains(vec1(2), seg));
  CHECK_FALSE(hull_contains(vec1(2.001), seg));

  CHECK_THROWS_AS(hull_contains(vec1(0), {}), std::invalid_argument);
}

TEST_CASE("every generator point lies in its own hull") {
  for (int rep = 0; rep < 20; ++rep) {
    RngStream rng(23, static_cast<std::uint64_t>(rep));
    std::vector<Eigen::VectorXd> pts;
    const int d = 1 + static_cast<int>(rng.uniform() * 3);
    for (int i = 0; i < 6; ++i) {
      Eigen::VectorXd p(d);
      for (int j = 0; j < d; ++j) p(j) = rng.uniform(-3, 3);
      pts.push_back(p);
    }
    for (const auto& p : pts) CHECK(hull_contains(p, pts));
  }
}

TEST_CASE("hull margin sign and scale") {
  const std::vector<Eigen::VectorXd> tri{vec2(0, 0), vec2(1, 0), vec2(0, 1)};
  // Centroid has all barycentric weights 1/3.
  CHECK(hull_margin(vec2(1.0 / 3, 1.0 / 3), tri) ==
        doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(hull_margin(vec2(0, 0), tri) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(hull_margin(vec2(2, 2), tri) < -1e-3);
}

TEST_CASE("complement basis spans the orthogonal complement") {
  RngStream rng(29, 0);
  for (int rep = 0; rep < 15; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform() * 3);
    const int d = 1 + static_cast<int>(rng.uniform() * (n - 1));
    const Subspace s = sample_subspace(n, d, rng);
    const Eigen::MatrixXd comp = complement_basis(s);
    REQUIRE(comp.rows() == n - d);
    CHECK(gram_error(comp) < 1e-12);
    CHECK((s.basis() * comp.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("affine flat validates offset orthogonality") {
  Eigen::MatrixXd e1(1, 2);
  e1 << 1, 0;
  const Subspace s(2, e1);
  CHECK_NOTHROW(AffineFlat(s, vec2(0, 3)));
  CHECK_THROWS_AS(AffineFlat(s, vec2(0.1, 3)), std::invalid_argument);
}
