#include <doctest.h>

#include <cmath>

#include "hadwiger/cell_complex.hpp"
#include "test_support.hpp"

using namespace hadwiger;
using hadwiger::test::random_complex;
using hadwiger::test::random_region;
using hadwiger::test::unit_square_set;
using hadwiger::test::vec1;
using hadwiger::test::vec2;

namespace {

/// Independent slice oracle in the plane: does the line {x : n.x = c} meet
/// the open cell? Decided by the signs of n.v - c over the cell's vertices
/// (an open simplex meets the line iff the vertex values straddle zero, or
/// the cell is a vertex exactly on the line).
bool line_hits_open_cell_oracle(const std::vector<Eigen::VectorXd>& verts,
                                const Eigen::Vector2d& normal, double c) {
  double lo = 1e100, hi = -1e100;
  for (const auto& v : verts) {
    const double s = normal.x() * v(0) + normal.y() * v(1) - c;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (verts.size() == 1) return std::abs(lo) < 1e-12;
  return lo < 0.0 && hi > 0.0;
}

AffineFlat line_through(double angle, const Eigen::VectorXd& point) {
  Eigen::MatrixXd dir(1, 2);
  dir << std::cos(angle), std::sin(angle);
  const Subspace l(2, dir);
  const Eigen::VectorXd offset =
      point - dir.row(0).dot(point) * dir.row(0).transpose();
  return AffineFlat(l, offset);
}

}  // namespace

TEST_CASE("grid complex validation") {
  CHECK_THROWS_AS(GridComplex({{0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(GridComplex({{0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(GridComplex({{1.0, 0.0}}), std::invalid_argument);
  CHECK_NOTHROW(GridComplex({{0.0, 1.0}, {-1.0, 0.5, 2.0}}));
}

TEST_CASE("euler characteristic of grid cells") {
  GridComplex cx({{0.0, 1.0}, {0.0, 1.0}});

  CHECK(euler_characteristic(GridRegion(cx, {{0, 0}})) == 1);   // vertex
  CHECK(euler_characteristic(GridRegion(cx, {{1, 0}})) == -1);  // open edge
  CHECK(euler_characteristic(GridRegion(cx, {{1, 1}})) == 1);   // open square

  // Closed unit square: 4 vertices - 4 edges + 1 face.
  std::set<GridCell> all;
  for (const auto& c : cx.all_cells()) all.insert(c);
  CHECK(all.size() == 9);
  CHECK(euler_characteristic(GridRegion(cx, all)) == 1);
}

TEST_CASE("euler characteristic of open simplices is (-1)^k") {
  // k = 0..3, each as a single open cell of a standard simplex.
  for (int k = 0; k <= 3; ++k) {
    const int n = std::max(k, 1);
    std::vector<Eigen::VectorXd> verts;
    std::vector<int> tuple;
    for (int i = 0; i <= k; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      if (i > 0) v(i - 1) = 1.0;
      verts.push_back(v);
      tuple.push_back(i);
    }
    SimplicialSet s(n, verts, {tuple});
    CHECK(euler_characteristic(s) == (k % 2 == 0 ? 1 : -1));
  }
  CHECK(euler_characteristic(unit_square_set()) == 1);
}

TEST_CASE("simplicial set validation") {
  // Overlapping open intervals are rejected.
  CHECK_THROWS_AS(
      SimplicialSet(1, {vec1(0), vec1(2), vec1(1), vec1(3)}, {{0, 1}, {2, 3}}),
      std::invalid_argument);
  // Sharing a face is fine.
  CHECK_NOTHROW(
      SimplicialSet(1, {vec1(0), vec1(1), vec1(2)}, {{0, 1}, {1, 2}, {1}}));
  // Affinely dependent tuple.
  CHECK_THROWS_AS(
      SimplicialSet(2, {vec2(0, 0), vec2(1, 1), vec2(2, 2)}, {{0, 1, 2}}),
      std::invalid_argument);
  // Repeated vertex in a tuple.
  CHECK_THROWS_AS(SimplicialSet(1, {vec1(0), vec1(1)}, {{0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("closure of grid regions") {
  GridComplex cx({{0.0, 1.0, 2.0}, {0.0, 1.0}});

  const GridRegion open_cell(cx, {{1, 1}});
  CHECK(closure(open_cell).cells().size() == 9);
  CHECK(euler_characteristic(closure(open_cell)) == 1);

  const GridRegion point(cx, {{2, 0}});
  CHECK(closure(point).cells() == point.cells());

  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(5, static_cast<std::uint64_t>(rep));
    const int n = 1 + static_cast<int>(rng.uniform() * 3);
    const GridComplex c = random_complex(rng, n);
    const GridRegion r = random_region(rng, c);
    const GridRegion c1 = closure(r);
    const GridRegion c2 = closure(c1);
    CHECK(c1.cells() == c2.cells());
  }
}

TEST_CASE("closure of a single open cell is contractible") {
  RngStream rng(55, 0);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 1 + static_cast<int>(rng.uniform() * 3);
    const GridComplex cx = random_complex(rng, n);
    const auto cells = cx.all_cells();
    const GridCell cell =
        cells[static_cast<std::size_t>(rng.uniform() * cells.size())];
    CHECK(euler_characteristic(closure(GridRegion(cx, {cell}))) == 1);
  }
}

TEST_CASE("common refinement") {
  GridComplex a({{0.0, 1.0}});
  GridComplex b({{0.0, 0.5, 1.0}});

  const Refinement same = refine_common(a, a);
  CHECK(same.common == a);
  CHECK(same.map_cell(0, {1}) == std::vector<GridCell>{{1}});

  const Refinement ref = refine_common(a, b);
  CHECK(ref.common == b);
  CHECK(ref.map_cell(0, {1}) == std::vector<GridCell>{{1}, {2}, {3}});
  CHECK(ref.map_cell(0, {0}) == std::vector<GridCell>{{0}});
  CHECK(ref.map_cell(1, {1}) == std::vector<GridCell>{{1}});

  CHECK_THROWS_AS(refine_common(a, GridComplex({{0.0, 1.0}, {0.0, 1.0}})),
                  std::invalid_argument);
}

TEST_CASE("chi is invariant under refinement") {
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(31, static_cast<std::uint64_t>(rep));
    const int n = 1 + static_cast<int>(rng.uniform() * 2);
    const GridComplex a = random_complex(rng, n);
    const GridComplex b = random_complex(rng, n);
    const GridRegion r = random_region(rng, a);
    const Refinement ref = refine_common(a, b);
    CHECK(euler_characteristic(ref.map_region(0, r)) ==
          euler_characteristic(r));
  }
}

TEST_CASE("region boolean algebra") {
  RngStream rng(37, 0);
  const GridComplex cx = random_complex(rng, 2);
  const GridRegion a = random_region(rng, cx);

  const GridRegion aa = region_boolean(a, a, SetOp::kUnion);
  CHECK(euler_characteristic(aa) == euler_characteristic(a));
  CHECK(region_boolean(a, a, SetOp::kDifference).cells().empty());

  for (int rep = 0; rep < 100; ++rep) {
    RngStream r2(41, static_cast<std::uint64_t>(rep));
    const int n = 1 + static_cast<int>(r2.uniform() * 2);
    const GridRegion f = random_region(r2, random_complex(r2, n));
    const GridRegion g = random_region(r2, random_complex(r2, n));
    const long long u = euler_characteristic(region_boolean(f, g, SetOp::kUnion));
    const long long i =
        euler_characteristic(region_boolean(f, g, SetOp::kIntersection));
    CHECK(u + i == euler_characteristic(f) + euler_characteristic(g));
  }
}

TEST_CASE("disjoint regions add") {
  GridComplex cx({{0.0, 1.0, 2.0, 3.0}});
  const GridRegion a(cx, {{1}});          // (0,1)
  const GridRegion b(cx, {{4}, {5}});     // {2} and (2,3)
  const GridRegion u = region_boolean(a, b, SetOp::kUnion);
  CHECK(euler_characteristic(u) ==
        euler_characteristic(a) + euler_characteristic(b));
}

TEST_CASE("slice chi of the unit square against the cell oracle") {
  const SimplicialSet square = unit_square_set();
  // Generic crossing lines at assorted angles and anchor points.
  const double angles[] = {0.3, 0.7, 1.1, 1.9, 2.6};
  const double anchors[][2] = {
      {0.41, 0.37}, {0.73, 0.52}, {0.5, 0.11}, {0.23, 0.88}, {0.65, 0.34}};
  for (int t = 0; t < 5; ++t) {
    const AffineFlat flat = line_through(angles[t], vec2(anchors[t][0],
                                                         anchors[t][1]));
    const auto got = slice_chi(square, flat);
    REQUIRE(got.has_value());

    // Oracle: classify every open cell against the line.
    const Eigen::Vector2d dir(std::cos(angles[t]), std::sin(angles[t]));
    const Eigen::Vector2d normal(-dir.y(), dir.x());
    const double c = normal.x() * anchors[t][0] + normal.y() * anchors[t][1];
    long long want = 0;
    for (std::size_t i = 0; i < square.cells().size(); ++i) {
      const int d = square.cell_dim(i);
      if (d < 1) continue;
      if (line_hits_open_cell_oracle(square.cell_vertices(i), normal, c))
        want += (d - 1) % 2 == 0 ? 1 : -1;
    }
    CHECK(*got == want);
    // A generic line through the square's interior slices it in a segment.
    CHECK(*got == 1);
  }
}

TEST_CASE("slice chi special cases") {
  const SimplicialSet square = unit_square_set();

  // A line that misses the square entirely.
  const AffineFlat far_line = line_through(0.4, vec2(10.0, -10.0));
  CHECK(slice_chi(square, far_line) == 0);

  // A single open triangle cut by a generic line: an open segment.
  SimplicialSet tri(2, {vec2(0, 0), vec2(1, 0), vec2(0, 1)}, {{0, 1, 2}});
  const AffineFlat cut = line_through(0.5, vec2(0.25, 0.25));
  CHECK(slice_chi(tri, cut) == -1);

  // A line exactly through a vertex is flagged for resampling.
  const AffineFlat degenerate = line_through(M_PI / 2, vec2(0.0, 0.5));
  CHECK_FALSE(slice_chi(square, degenerate).has_value());
}

TEST_CASE("slice chi on grid regions") {
  const GridRegion box = hadwiger::test::closed_box_region(1.0, 1.0);
  const AffineFlat flat = line_through(0.6, vec2(0.4, 0.5));
  CHECK(slice_chi(box, flat) == 1);
}
