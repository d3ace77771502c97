#include <doctest.h>

#include <cmath>

#include "hadwiger/intrinsic_volumes.hpp"
#include "test_support.hpp"

using namespace hadwiger;
using hadwiger::test::closed_box_region;
using hadwiger::test::random_complex;
using hadwiger::test::random_region;
using hadwiger::test::unit_square_set;

namespace {

CroftonConstants calibrated_2_1() {
  static const CalibrationEntry entry = calibrate(2, 1, 100000, 313, 1);
  CroftonConstants c;
  c.set(2, 1, entry);
  return c;
}

}  // namespace

TEST_CASE("exact intrinsic volumes of closed boxes") {
  for (int rep = 0; rep < 50; ++rep) {
    RngStream rng(61, static_cast<std::uint64_t>(rep));
    const double a = 0.2 + rng.uniform() * 3.0;
    const double b = 0.2 + rng.uniform() * 3.0;
    const GridRegion box = closed_box_region(a, b);
    CHECK(mu_grid_exact(box, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mu_grid_exact(box, 1) == doctest::Approx(a + b).epsilon(1e-9));
    CHECK(mu_grid_exact(box, 2) == doctest::Approx(a * b).epsilon(1e-9));
  }
}

TEST_CASE("exact intrinsic volumes of points and open intervals") {
  GridComplex line({{0.0, 2.5}});
  const GridRegion point(line, {{0}});
  CHECK(mu_grid_exact(point, 0) == 1.0);
  CHECK(mu_grid_exact(point, 1) == 0.0);

  const GridRegion open(line, {{1}});
  CHECK(mu_grid_exact(open, 0) == -1.0);
  CHECK(mu_grid_exact(open, 1) == doctest::Approx(2.5).epsilon(1e-12));

  CHECK_THROWS_AS(mu_grid_exact(point, 2), std::invalid_argument);
  CHECK_THROWS_AS(mu_grid_exact(point, -1), std::invalid_argument);
}

TEST_CASE("mu_grid_exact is additive") {
  for (int rep = 0; rep < 60; ++rep) {
    RngStream rng(67, static_cast<std::uint64_t>(rep));
    const int n = 1 + static_cast<int>(rng.uniform() * 3);
    const GridRegion a = random_region(rng, random_complex(rng, n));
    const GridRegion b = random_region(rng, random_complex(rng, n));
    const GridRegion u = region_boolean(a, b, SetOp::kUnion);
    const GridRegion i = region_boolean(a, b, SetOp::kIntersection);
    for (int k = 0; k <= n; ++k) {
      const double lhs = mu_grid_exact(u, k) + mu_grid_exact(i, k);
      const double rhs = mu_grid_exact(a, k) + mu_grid_exact(b, k);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("mu_grid_exact is k-homogeneous") {
  for (int rep = 0; rep < 30; ++rep) {
    RngStream rng(71, static_cast<std::uint64_t>(rep));
    const int n = 1 + static_cast<int>(rng.uniform() * 3);
    const GridComplex cx = random_complex(rng, n);
    const GridRegion r = random_region(rng, cx);
    const double lam = 0.3 + rng.uniform() * 2.5;

    std::vector<std::vector<double>> scaled;
    for (int ax = 0; ax < n; ++ax) {
      std::vector<double> s;
      for (double x : cx.axis(ax)) s.push_back(lam * x);
      scaled.push_back(std::move(s));
    }
    const GridRegion rs(GridComplex(scaled), r.cells());
    for (int k = 0; k <= n; ++k) {
      const double want = std::pow(lam, k) * mu_grid_exact(r, k);
      CHECK(mu_grid_exact(rs, k) ==
            doctest::Approx(want).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("open versus closed unions of boxes") {
  // Unions of open full-dimensional boxes with disjoint closures satisfy
  // mu_k(A) = (-1)^(n-k) mu_k(closure A).
  for (int rep = 0; rep < 50; ++rep) {
    RngStream rng(73, static_cast<std::uint64_t>(rep));
    const int n = 1 + static_cast<int>(rng.uniform() * 3);
    // Breakpoints spaced so that alternating open boxes have disjoint
    // closures: pick every second full-dimensional cell.
    const GridComplex cx = random_complex(rng, n, 5);
    std::set<GridCell> cells;
    for (const auto& c : cx.all_cells()) {
      bool pick = cx.cell_dim(c) == n;
      for (int ax = 0; ax < n && pick; ++ax)
        if ((c[static_cast<std::size_t>(ax)] / 2) % 2 != 0) pick = false;
      if (pick) cells.insert(c);
    }
    if (cells.empty()) continue;
    const GridRegion open_boxes(cx, cells);
    const GridRegion closed = closure(open_boxes);
    for (int k = 0; k <= n; ++k) {
      const double sign = (n - k) % 2 == 0 ? 1.0 : -1.0;
      CHECK(mu_grid_exact(open_boxes, k) ==
            doctest::Approx(sign * mu_grid_exact(closed, k)).epsilon(1e-9));
    }
  }
}

TEST_CASE("crofton estimator collapses for k = 0 and k = n") {
  const SimplicialSet square = unit_square_set();
  CroftonConstants cst;
  SamplingOptions opt{100, 9, 1};

  const MCEstimate chi = mu_crofton(square, 0, cst, opt);
  CHECK(chi.value == 1.0);
  CHECK(chi.std_error == 0.0);

  const MCEstimate vol = mu_crofton(square, 2, cst, opt);
  CHECK(vol.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(vol.std_error == 0.0);

  // Degenerate input: no cells of dimension >= k.
  SimplicialSet points(2, {hadwiger::test::vec2(0, 0)}, {{0}});
  const MCEstimate zero = mu_crofton(points, 1, calibrated_2_1(), opt);
  CHECK(zero.value == 0.0);
  CHECK(zero.std_error == 0.0);
}

TEST_CASE("calibration reproduces the right-angle constant") {
  const CalibrationEntry e = calibrate(2, 1, 100000, 313, 1);
  CHECK(std::abs(e.value - M_PI / 2) < 3 * e.std_error);
  CHECK(e.std_error < 0.01 * e.value);
  CHECK_THROWS_AS(calibrate(2, 1, 10, 1, 1), CalibrationError);
  CHECK_THROWS_AS(calibrate(2, 2, 100, 1, 1), std::invalid_argument);
}

TEST_CASE("calibrated estimators agree with exact grid values") {
  const CroftonConstants cst = calibrated_2_1();
  SamplingOptions opt{10000, 17, 1};

  const MCEstimate est = mu_crofton(unit_square_set(), 1, cst, opt);
  CHECK(std::abs(est.value - 2.0) < 3 * est.std_error);

  const MCEstimate slice = mu_slice_mc(unit_square_set(), 1, cst, opt);
  CHECK(std::abs(slice.value - 2.0) < 3 * slice.std_error);

  const double combined =
      3 * std::sqrt(est.std_error * est.std_error +
                    slice.std_error * slice.std_error);
  CHECK(std::abs(est.value - slice.value) < combined);

  // Grid-region inputs run through the same estimators.
  for (int rep = 0; rep < 3; ++rep) {
    RngStream rng(79, static_cast<std::uint64_t>(rep));
    const double a = 0.4 + rng.uniform() * 2.0;
    const double b = 0.4 + rng.uniform() * 2.0;
    const GridRegion box = closed_box_region(a, b);
    const MCEstimate g = mu_crofton(box, 1, cst, opt);
    CHECK(std::abs(g.value - (a + b)) < 3 * g.std_error);
  }
}

TEST_CASE("slice estimates are translation invariant in distribution") {
  const CroftonConstants cst = calibrated_2_1();
  SamplingOptions opt{8000, 23, 1};

  const MCEstimate base = mu_slice_mc(unit_square_set(), 1, cst, opt);

  std::vector<Eigen::VectorXd> verts;
  for (const auto& v : unit_square_set().vertices())
    verts.push_back(v + hadwiger::test::vec2(10.0, -3.0));
  SimplicialSet moved(2, std::move(verts), unit_square_set().cells());
  SamplingOptions opt2{8000, 24, 1};
  const MCEstimate shifted = mu_slice_mc(moved, 1, cst, opt2);

  const double band = 3 * std::sqrt(base.std_error * base.std_error +
                                    shifted.std_error * shifted.std_error);
  CHECK(std::abs(base.value - shifted.value) < band);
}

TEST_CASE("estimators are deterministic and thread-count independent") {
  const CroftonConstants cst = calibrated_2_1();
  const SamplingOptions a{4000, 99, 1};
  const SamplingOptions b{4000, 99, 3};

  const MCEstimate e1 = mu_crofton(unit_square_set(), 1, cst, a);
  const MCEstimate e2 = mu_crofton(unit_square_set(), 1, cst, a);
  const MCEstimate e3 = mu_crofton(unit_square_set(), 1, cst, b);
  CHECK(e1.value == e2.value);
  CHECK(e1.std_error == e2.std_error);
  CHECK(e1.value == e3.value);
  CHECK(e1.std_error == e3.std_error);

  const MCEstimate s1 = mu_slice_mc(unit_square_set(), 1, cst, a);
  const MCEstimate s3 = mu_slice_mc(unit_square_set(), 1, cst, b);
  CHECK(s1.value == s3.value);
}

TEST_CASE("missing constants raise calibration errors") {
  CroftonConstants cst;
  CHECK_THROWS_AS(cst.get(3, 1), CalibrationError);
  CHECK(cst.get(3, 0) == 1.0);
  CHECK(cst.get(3, 3) == 1.0);
  CHECK_THROWS_AS(
      mu_crofton(unit_square_set(), 1, cst, SamplingOptions{100, 1, 1}),
      CalibrationError);
  CHECK_THROWS_AS(cst.set(2, 2, CalibrationEntry{}), std::invalid_argument);
}
