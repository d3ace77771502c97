#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hadwiger {

/// A d-simplex embedded in R^n with an affine scalar function given by its
/// vertex values, carried with a sign so that halfspace cuts can be
/// represented as signed unions of simplices.
struct SignedSimplex {
  int sign = 1;                            // +1 or -1
  std::vector<Eigen::VectorXd> vertices;   // d+1 points
  std::vector<double> values;              // matching vertex values
};

/// d-volume of a d-simplex embedded in R^n (Gram determinant).
double simplex_volume(const std::vector<Eigen::VectorXd>& vertices);

/// Signed-simplex decomposition of {h <= u} (resp. {h >= u}) within one
/// simplex. Exact for simplex dimension <= 3; volume-null slivers may appear
/// when u touches vertex values.
std::vector<SignedSimplex> clip_below(const SignedSimplex& s, double u);
std::vector<SignedSimplex> clip_above(const SignedSimplex& s, double u);

/// Lebesgue volume of {h <= u} (resp. >= u) inside the simplex.
double volume_below(const SignedSimplex& s, double u);
double volume_above(const SignedSimplex& s, double u);

/// Exact integral of c(h(x)) over the simplex for a continuous piecewise
/// linear c given by sorted breakpoints xs (c is affine between neighbours
/// and extended with the end slopes). Splits the simplex at the interior
/// level sets of the breakpoints, so it is exact for any monotone or
/// non-monotone c. Simplex dimension <= 3 when splits are required.
double integrate_pl_of_affine(const SignedSimplex& s,
                              const std::vector<double>& xs,
                              const std::vector<double>& ys);

/// Value at x of the continuous piecewise-linear function through (xs, ys),
/// extended beyond the outer breakpoints with the end slopes.
double piecewise_linear_eval(const std::vector<double>& xs,
                             const std::vector<double>& ys, double x);

}  // namespace hadwiger
