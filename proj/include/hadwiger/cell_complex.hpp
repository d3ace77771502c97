#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "hadwiger/geom.hpp"

namespace hadwiger {

/// Grid cell address: one parity index per axis. Even index 2i names the
/// breakpoint x_i (a 0-dimensional factor); odd index 2i+1 names the open
/// interval (x_i, x_{i+1}). The cell is the product of its factors, so cells
/// of a complex are pairwise disjoint by construction and faces are
/// enumerable in O(1) per factor.
using GridCell = std::vector<int>;

/// Product decomposition of a bounding box into open cells, given by a
/// strictly increasing breakpoint list per axis (>= 2 entries each).
class GridComplex {
 public:
  explicit GridComplex(std::vector<std::vector<double>> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<double>& axis(int i) const {
    return axes_[static_cast<std::size_t>(i)];
  }
  const std::vector<std::vector<double>>& axes() const { return axes_; }

  /// Number of parity indices on an axis: 2 * breakpoints - 1.
  int parity_count(int axis) const {
    return 2 * static_cast<int>(axes_[static_cast<std::size_t>(axis)].size()) -
           1;
  }

  bool valid_cell(const GridCell& c) const;
  int cell_dim(const GridCell& c) const;

  /// Length of the parity factor on one axis (0 for breakpoints).
  double factor_length(int axis, int parity) const;

  /// Lengths of the interval factors of a cell, in axis order.
  std::vector<double> cell_lengths(const GridCell& c) const;

  /// Corners of the closed cell (2^dim points).
  std::vector<Eigen::VectorXd> cell_corners(const GridCell& c) const;

  std::uint64_t total_cells() const;
  std::vector<GridCell> all_cells() const;

  /// Bounding box corners of the whole complex (2^n points).
  std::vector<Eigen::VectorXd> bounding_corners() const;

  bool operator==(const GridComplex& o) const { return axes_ == o.axes_; }

 private:
  std::vector<std::vector<double>> axes_;
};

/// Finite set of open cells of one grid complex.
class GridRegion {
 public:
  GridRegion(GridComplex complex, std::set<GridCell> cells);

  const GridComplex& complex() const { return complex_; }
  const std::set<GridCell>& cells() const { return cells_; }

  std::vector<Eigen::VectorXd> bounding_corners() const {
    return complex_.bounding_corners();
  }

 private:
  GridComplex complex_;
  std::set<GridCell> cells_;
};

/// Embedded finite set of pairwise-disjoint open simplices. A cell is a
/// vertex-index tuple of length dim+1; every cell is an open simplex.
/// Disjointness is verified pairwise up to 1000 cells and is the producer's
/// responsibility above that.
class SimplicialSet {
 public:
  SimplicialSet(int ambient_dim, std::vector<Eigen::VectorXd> vertices,
                std::vector<std::vector<int>> cells);

  int ambient_dim() const { return n_; }
  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  int cell_dim(std::size_t i) const {
    return static_cast<int>(cells_[i].size()) - 1;
  }

  std::vector<Eigen::VectorXd> cell_vertices(std::size_t i) const;

  /// Axis-aligned bounding box corners of all vertices (2^n points).
  std::vector<Eigen::VectorXd> bounding_corners() const;

 private:
  int n_;
  std::vector<Eigen::VectorXd> vertices_;
  std::vector<std::vector<int>> cells_;
};

long long euler_characteristic(const GridRegion& r);
long long euler_characteristic(const SimplicialSet& s);

/// Adds every face of every cell (the cells obtained by replacing interval
/// factors with their endpoint breakpoints).
GridRegion closure(const GridRegion& r);

/// Common refinement of two complexes: per-axis sorted breakpoint union,
/// together with the map sending each original cell to the refined cells
/// that partition it.
struct Refinement {
  GridComplex common;

  /// axis_maps[which][axis][old parity] = new parities covering the factor.
  std::array<std::vector<std::vector<std::vector<int>>>, 2> axis_maps;

  std::vector<GridCell> map_cell(int which, const GridCell& c) const;
  GridRegion map_region(int which, const GridRegion& r) const;
};

Refinement refine_common(const GridComplex& a, const GridComplex& b);

enum class SetOp { kUnion, kIntersection, kDifference };

/// Set operation on two regions, expressed in their common refinement.
GridRegion region_boolean(const GridRegion& a, const GridRegion& b, SetOp op);

/// Euler characteristic of set ∩ flat for a generically sampled affine
/// flat of dimension n-k: every open cell of dimension >= k meeting the
/// flat contributes (-1)^(dim - k); cells of lower dimension are missed by
/// generic flats. Returns nullopt when a membership test lands within the
/// 1e-9 tie tolerance, signalling the caller to resample the flat.
std::optional<long long> slice_chi(const SimplicialSet& s,
                                   const AffineFlat& flat);
std::optional<long long> slice_chi(const GridRegion& r, const AffineFlat& flat);

/// Uniform view of the cells of either carrier used by the Monte Carlo
/// estimators: dimension plus the closed cell's corner points.
struct CellView {
  int dim = 0;
  std::vector<Eigen::VectorXd> corners;
};

std::vector<CellView> cell_views(const SimplicialSet& s);
std::vector<CellView> cell_views(const GridRegion& r);

}  // namespace hadwiger
