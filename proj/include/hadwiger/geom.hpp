#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hadwiger/rng.hpp"

namespace hadwiger {

/// Linear subspace of R^n carried by an orthonormal basis (rows).
/// The Gram matrix of the basis is within 1e-12 of the identity.
class Subspace {
 public:
  Subspace(int ambient_dim, Eigen::MatrixXd basis);

  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

 private:
  int n_;
  Eigen::MatrixXd basis_;
};

/// Affine flat L + x, with the offset x constrained to the orthogonal
/// complement of L (checked to 1e-12).
struct AffineFlat {
  AffineFlat(Subspace s, Eigen::VectorXd off);

  Subspace subspace;
  Eigen::VectorXd offset;
};

/// Draws a d-dimensional subspace of R^n from the rotation-invariant
/// distribution by orthonormalizing d independent standard-normal vectors.
/// Numerically rank-deficient draws (smallest residual norm below 1e-10)
/// are rejected and redrawn from the same stream.
Subspace sample_subspace(int n, int d, RngStream& stream);

/// Haar-distributed orthonormal frame on R^n (rows).
Eigen::MatrixXd sample_frame(int n, RngStream& stream);

/// Coordinates of each point in the subspace basis.
std::vector<Eigen::VectorXd> project(const std::vector<Eigen::VectorXd>& points,
                                     const Subspace& s);

/// d-dimensional volume of the convex hull of points in R^d, d <= 3.
/// Affinely degenerate inputs give 0; a nonempty set of 0-vectors gives 1.
double hull_measure(const std::vector<Eigen::VectorXd>& points);

/// Closed convex hull membership, decided by a small linear-feasibility
/// solve with tolerance 1e-9.
bool hull_contains(const Eigen::VectorXd& point,
                   const std::vector<Eigen::VectorXd>& points);

/// Inclusion margin for hull membership: the largest t such that the point
/// is a convex combination with all weights >= t. Positive strictly inside,
/// ~0 on the boundary, negative outside; when the point misses the affine
/// hull of the set, the (negated) phase-1 residual is returned instead.
/// Either way, values near 0 flag a boundary tie.
double hull_margin(const Eigen::VectorXd& point,
                   const std::vector<Eigen::VectorXd>& points);

/// Orthonormal basis (rows) of the orthogonal complement of s.
Eigen::MatrixXd complement_basis(const Subspace& s);

}  // namespace hadwiger
