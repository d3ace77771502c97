#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hadwiger/function_space.hpp"
#include "hadwiger/rng.hpp"

namespace hadwiger::test {

inline Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

inline Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

inline Eigen::VectorXd vec3(double x, double y, double z) {
  Eigen::VectorXd v(3);
  v << x, y, z;
  return v;
}

/// Closed unit square as a simplicial set: 4 vertices, 4 boundary edges,
/// the diagonal, and 2 triangles.
inline SimplicialSet unit_square_set() {
  std::vector<Eigen::VectorXd> v{vec2(0, 0), vec2(1, 0), vec2(1, 1),
                                 vec2(0, 1)};
  std::vector<std::vector<int>> cells{{0},       {1},       {2},    {3},
                                      {0, 1},    {1, 2},    {2, 3}, {3, 0},
                                      {0, 2},    {0, 1, 2}, {0, 2, 3}};
  return SimplicialSet(2, std::move(v), std::move(cells));
}

/// Tent 1 - |x| on [-1, 1]: closed support, apex value 1.
inline PLFunction tent() {
  std::vector<Eigen::VectorXd> v{vec1(-1), vec1(0), vec1(1)};
  std::vector<std::vector<int>> cells{{0}, {1}, {2}, {0, 1}, {1, 2}};
  SimplicialSet set(1, std::move(v), std::move(cells));
  return PLFunction(std::move(set), {0.0, 1.0, 0.0});
}

/// Indicator-like plateau of height 1 on the closed unit square.
inline PLFunction plateau_square() {
  return PLFunction(unit_square_set(), {1.0, 1.0, 1.0, 1.0});
}

/// Pyramid over the unit square: center value 1, corners 0 (2-d tent).
inline PLFunction pyramid() {
  std::vector<Eigen::VectorXd> v{vec2(0, 0), vec2(1, 0), vec2(1, 1),
                                 vec2(0, 1), vec2(0.5, 0.5)};
  std::vector<std::vector<int>> cells{
      {0},       {1},       {2},       {3},       {4},
      {0, 1},    {1, 2},    {2, 3},    {3, 0},
      {0, 4},    {1, 4},    {2, 4},    {3, 4},
      {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  SimplicialSet set(2, std::move(v), std::move(cells));
  return PLFunction(std::move(set), {0, 0, 0, 0, 1.0});
}

inline GridComplex random_complex(RngStream& rng, int n, int max_breaks = 4) {
  std::vector<std::vector<double>> axes;
  for (int ax = 0; ax < n; ++ax) {
    const int m = 2 + static_cast<int>(rng.uniform() * (max_breaks - 1));
    std::vector<double> bp;
    double x = rng.uniform(-3.0, 3.0);
    for (int i = 0; i < m; ++i) {
      bp.push_back(x);
      x += 0.25 + rng.uniform() * 2.0;
    }
    axes.push_back(std::move(bp));
  }
  return GridComplex(std::move(axes));
}

inline GridRegion random_region(RngStream& rng, const GridComplex& cx,
                                double density = 0.4) {
  std::set<GridCell> cells;
  for (const auto& c : cx.all_cells())
    if (rng.uniform() < density) cells.insert(c);
  return GridRegion(cx, std::move(cells));
}

inline ConstructibleFunction random_cf(RngStream& rng, int n,
                                       bool with_negatives = true,
                                       int distinct_values = 4) {
  const GridComplex cx = random_complex(rng, n);
  std::vector<double> pool;
  for (int i = 0; i < distinct_values; ++i) {
    double v = 0.25 + rng.uniform() * 3.0;
    if (with_negatives && rng.uniform() < 0.4) v = -v;
    pool.push_back(v);
  }
  std::map<GridCell, double> values;
  for (const auto& c : cx.all_cells()) {
    if (rng.uniform() < 0.45)
      values[c] = pool[static_cast<std::size_t>(rng.uniform() *
                                                static_cast<double>(pool.size()))];
  }
  return ConstructibleFunction(cx, std::move(values));
}

/// Closed box [0,a] x [0,b] as the full cell set of a 2x2-breakpoint grid.
inline GridRegion closed_box_region(double a, double b) {
  GridComplex cx({{0.0, a}, {0.0, b}});
  std::set<GridCell> cells;
  for (const auto& c : cx.all_cells()) cells.insert(c);
  return GridRegion(cx, std::move(cells));
}

}  // namespace hadwiger::test
