#pragma once

#include <Eigen/Dense>

namespace hadwiger {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;          // primal point, valid when optimal
  double objective = 0.0;     // c.dot(x) when optimal
  double infeasibility = 0.0; // phase-1 residual when infeasible
};

/// Maximizes c.x subject to A x = b, x >= 0.
///
/// Dense two-phase simplex with Bland pivoting, sized for the very small
/// feasibility and fiber-range problems in this library (a handful of rows
/// and columns). Not intended for large or badly scaled systems.
LpSolution lp_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& c);

}  // namespace hadwiger
