#include "hadwiger/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hadwiger {

ConstructibleFunction::ConstructibleFunction(GridComplex complex,
                                             std::map<GridCell, double> values)
    : complex_(std::move(complex)), values_(std::move(values)) {
  for (auto it = values_.begin(); it != values_.end();) {
    if (!complex_.valid_cell(it->first))
      throw std::invalid_argument("ConstructibleFunction: invalid cell");
    if (!std::isfinite(it->second))
      throw std::invalid_argument("ConstructibleFunction: non-finite value");
    if (it->second == 0.0)
      it = values_.erase(it);
    else
      ++it;
  }
}

double ConstructibleFunction::value(const GridCell& c) const {
  const auto it = values_.find(c);
  return it == values_.end() ? 0.0 : it->second;
}

GridRegion ConstructibleFunction::support() const {
  std::set<GridCell> cells;
  for (const auto& [c, v] : values_) cells.insert(c);
  return GridRegion(complex_, std::move(cells));
}

ConstructibleFunction lattice(const ConstructibleFunction& f,
                              const ConstructibleFunction& g, LatticeOp op) {
  if (f.complex().dim() != g.complex().dim())
    throw std::invalid_argument("lattice: dimension mismatch");
  const Refinement ref = refine_common(f.complex(), g.complex());
  std::map<GridCell, double> fv, gv;
  for (const auto& [c, v] : f.values())
    for (const auto& rc : ref.map_cell(0, c)) fv[rc] = v;
  for (const auto& [c, v] : g.values())
    for (const auto& rc : ref.map_cell(1, c)) gv[rc] = v;

  std::map<GridCell, double> out;
  auto combine = [op](double a, double b) {
    return op == LatticeOp::kMax ? std::max(a, b) : std::min(a, b);
  };
  for (const auto& [c, v] : fv) {
    const auto it = gv.find(c);
    out[c] = combine(v, it == gv.end() ? 0.0 : it->second);
  }
  for (const auto& [c, v] : gv)
    if (!fv.count(c)) out[c] = combine(0.0, v);
  return ConstructibleFunction(ref.common, std::move(out));
}

bool zero_qualifies(double s, ExcursionMode mode) {
  switch (mode) {
    case ExcursionMode::kGeq:
      return 0.0 >= s;
    case ExcursionMode::kGt:
      return 0.0 > s;
    case ExcursionMode::kLtNeg:
      return 0.0 < -s;
    case ExcursionMode::kLeqNeg:
      return 0.0 <= -s;
  }
  return false;
}

GridRegion excursion(const ConstructibleFunction& h, double s,
                     ExcursionMode mode) {
  auto pred = [s, mode](double v) {
    switch (mode) {
      case ExcursionMode::kGeq:
        return v >= s;
      case ExcursionMode::kGt:
        return v > s;
      case ExcursionMode::kLtNeg:
        return v < -s;
      case ExcursionMode::kLeqNeg:
        return v <= -s;
    }
    return false;
  };
  std::set<GridCell> cells;
  if (zero_qualifies(s, mode)) {
    // The zero cells inside the box qualify too; the result is the clipped
    // stand-in for an unbounded set.
    for (const auto& c : h.complex().all_cells())
      if (pred(h.value(c))) cells.insert(c);
  } else {
    for (const auto& [c, v] : h.values())
      if (pred(v)) cells.insert(c);
  }
  return GridRegion(h.complex(), std::move(cells));
}

PLFunction::PLFunction(SimplicialSet set, std::vector<double> vertex_values)
    : set_(std::move(set)), vertex_values_(std::move(vertex_values)) {
  if (vertex_values_.size() != set_.vertices().size())
    throw std::invalid_argument("PLFunction: one value per vertex required");
  for (double v : vertex_values_)
    if (!std::isfinite(v))
      throw std::invalid_argument("PLFunction: non-finite vertex value");
}

std::pair<double, double> PLFunction::cell_range(std::size_t i) const {
  const auto& cell = set_.cells()[i];
  double lo = vertex_values_[static_cast<std::size_t>(cell[0])];
  double hi = lo;
  for (int vi : cell) {
    const double v = vertex_values_[static_cast<std::size_t>(vi)];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double PLFunction::max_abs_value() const {
  double m = 0.0;
  for (double v : vertex_values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

bool cell_constant(const PLFunction& h, std::size_t i) {
  const auto [lo, hi] = h.cell_range(i);
  return lo == hi;
}

}  // namespace

long long pl_excursion_chi(const PLFunction& h, double s, bool strict) {
  long long chi = 0;
  for (std::size_t i = 0; i < h.set().cells().size(); ++i) {
    const auto [m, bigm] = h.cell_range(i);
    const int d = h.set().cell_dim(i);
    bool full;
    if (!strict) {
      full = s <= m;  // non-strict: all of the open cell iff s <= closure min
    } else {
      full = cell_constant(h, i) ? m > s : s < bigm;
    }
    if (full) chi += d % 2 == 0 ? 1 : -1;
  }
  return chi;
}

long long pl_excursion_chi_below(const PLFunction& h, double t, bool strict) {
  long long chi = 0;
  for (std::size_t i = 0; i < h.set().cells().size(); ++i) {
    const auto [m, bigm] = h.cell_range(i);
    const int d = h.set().cell_dim(i);
    bool full;
    if (strict) {
      full = m < t;  // {h < t} covers the open cell iff the closure min is below
    } else {
      full = cell_constant(h, i) ? m <= t : t >= bigm;
    }
    if (full) chi += d % 2 == 0 ? 1 : -1;
  }
  return chi;
}

std::vector<double> critical_values(const ConstructibleFunction& h) {
  std::vector<double> vals{0.0};
  for (const auto& [c, v] : h.values()) vals.push_back(v);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

std::vector<double> critical_values(const PLFunction& h) {
  std::vector<double> vals{0.0};
  vals.insert(vals.end(), h.vertex_values().begin(), h.vertex_values().end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

}  // namespace hadwiger
