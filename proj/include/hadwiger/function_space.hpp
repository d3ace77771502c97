#pragma once

#include <map>
#include <vector>

#include "hadwiger/cell_complex.hpp"

namespace hadwiger {

/// Compactly supported function that is constant on each open cell of a grid
/// complex and zero outside the bounding box. Cells with value 0 are not
/// stored, so the support is exactly the stored cell set.
class ConstructibleFunction {
 public:
  ConstructibleFunction(GridComplex complex, std::map<GridCell, double> values);

  const GridComplex& complex() const { return complex_; }
  const std::map<GridCell, double>& values() const { return values_; }
  double value(const GridCell& c) const;

  /// Support as a region (the cells carrying a nonzero value).
  GridRegion support() const;

 private:
  GridComplex complex_;
  std::map<GridCell, double> values_;
};

enum class LatticeOp { kMax, kMin };

/// Pointwise max/min on the common refinement.
ConstructibleFunction lattice(const ConstructibleFunction& f,
                              const ConstructibleFunction& g, LatticeOp op);

/// Excursion set predicates at level s: {h >= s}, {h > s}, {h < -s},
/// {h <= -s}. The region is clipped to the bounding box; for thresholds
/// where the value 0 itself qualifies, the unbounded zero set outside the
/// box is NOT represented (see zero_qualifies for the caller-side warning).
enum class ExcursionMode { kGeq, kGt, kLtNeg, kLeqNeg };

GridRegion excursion(const ConstructibleFunction& h, double s,
                     ExcursionMode mode);

/// True when the zero value satisfies the predicate, i.e. the honest
/// excursion set would be unbounded and the returned region is a clipped
/// stand-in. All integral sweeps in this library stay on s > 0, where this
/// never happens.
bool zero_qualifies(double s, ExcursionMode mode);

/// Piecewise-linear function: affine on each open simplex with the given
/// vertex values, zero off the set.
class PLFunction {
 public:
  PLFunction(SimplicialSet set, std::vector<double> vertex_values);

  const SimplicialSet& set() const { return set_; }
  const std::vector<double>& vertex_values() const { return vertex_values_; }

  /// Closure min/max of the function over cell i (vertex-value extremes).
  std::pair<double, double> cell_range(std::size_t i) const;

  double max_abs_value() const;

 private:
  SimplicialSet set_;
  std::vector<double> vertex_values_;
};

/// chi of the excursion set {h >= s} (strict=false) or {h > s} (strict=true),
/// evaluated cell by cell. With closure extremes m <= M on an open d-cell:
/// a half-open slab cut contributes 0 and an open slab contributes (-1)^d,
/// so {h >= s} gives (-1)^d iff s <= m, and {h > s} gives (-1)^d iff s < M
/// (s < value on cells where h is constant).
long long pl_excursion_chi(const PLFunction& h, double s, bool strict);

/// chi of {h < t} (strict=true) or {h <= t} (strict=false), the mirrors used
/// for the negative parts of the integral sweeps.
long long pl_excursion_chi_below(const PLFunction& h, double t, bool strict);

/// Sorted breakpoints of the s-sweep: distinct cell values (plus 0) for
/// constructible functions, distinct vertex values plus 0 for PL functions.
/// Excursion data is constant on the open intervals in between.
std::vector<double> critical_values(const ConstructibleFunction& h);
std::vector<double> critical_values(const PLFunction& h);

}  // namespace hadwiger
