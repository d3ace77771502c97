#include "hadwiger/lp.hpp"

#include <stdexcept>
#include <vector>

namespace hadwiger {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kMaxIterations = 10000;

struct Tableau {
  Eigen::MatrixXd m;      // constraint rows in canonical form
  Eigen::VectorXd rhs;    // always >= 0
  Eigen::RowVectorXd red; // reduced cost row (c_j - z_j)
  double objective = 0.0;
  std::vector<int> basis;
};

void pivot_exact(Tableau& t, int row, int col) {
  const double p = t.m(row, col);
  t.m.row(row) /= p;
  t.rhs(row) /= p;
  for (int i = 0; i < t.m.rows(); ++i) {
    if (i == row) continue;
    const double f = t.m(i, col);
    if (f == 0.0) continue;
    t.m.row(i) -= f * t.m.row(row);
    t.rhs(i) -= f * t.rhs(row);
  }
  const double f = t.red(col);
  if (f != 0.0) {
    t.red -= f * t.m.row(row);
    t.objective += f * t.rhs(row);
  }
  t.basis[static_cast<std::size_t>(row)] = col;
}

/// Runs the simplex loop on a canonical tableau (maximization).
/// `allowed` restricts entering columns. Returns false on unboundedness.
bool iterate(Tableau& t, int allowed_cols) {
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    // Bland: first improving column.
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (t.red(j) > kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;  // optimal

    // Ratio test; Bland tie-break on smallest basis index.
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < t.m.rows(); ++i) {
      if (t.m(i, enter) > kPivotTol) {
        const double ratio = t.rhs(i) / t.m(i, enter);
        if (leave < 0 || ratio < best - kPivotTol ||
            (ratio < best + kPivotTol &&
             t.basis[static_cast<std::size_t>(i)] <
                 t.basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) return false;  // unbounded
    pivot_exact(t, leave, enter);
  }
  throw std::logic_error("lp_maximize: iteration limit exceeded");
}

}  // namespace

LpSolution lp_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n)
    throw std::invalid_argument("lp_maximize: inconsistent dimensions");

  LpSolution out;
  if (m == 0) {
    // No constraints: optimum is 0 at x = 0 unless some cost is positive.
    out.x = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
      if (c(j) > kPivotTol) {
        out.status = LpStatus::kUnbounded;
        return out;
      }
    }
    out.status = LpStatus::kOptimal;
    return out;
  }

  Tableau t;
  t.m.resize(m, n + m);
  t.m.leftCols(n) = A;
  t.m.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
  t.rhs = b;
  for (int i = 0; i < m; ++i) {
    if (t.rhs(i) < 0.0) {
      t.rhs(i) = -t.rhs(i);
      t.m.row(i) = -t.m.row(i);
    }
  }
  t.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) t.basis[static_cast<std::size_t>(i)] = n + i;

  // Phase 1: maximize -sum(artificials). Canonical reduced costs for the
  // artificial basis: red_j = sum_i m(i,j) on real columns, 0 on artificials.
  t.red.resize(n + m);
  for (int j = 0; j < n; ++j) t.red(j) = t.m.col(j).sum();
  t.red.tail(m).setZero();
  t.objective = -t.rhs.sum();

  if (!iterate(t, n + m))
    throw std::logic_error("lp_maximize: phase 1 unbounded");

  const double infeas = -t.objective;
  const double feas_tol = 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff());
  if (infeas > feas_tol) {
    out.status = LpStatus::kInfeasible;
    out.infeasibility = infeas;
    return out;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  std::vector<int> keep;
  for (int i = 0; i < m; ++i) {
    if (t.basis[static_cast<std::size_t>(i)] < n) {
      keep.push_back(i);
      continue;
    }
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t.m(i, j)) > kPivotTol) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      pivot_exact(t, i, col);
      keep.push_back(i);
    }
    // else: redundant row, silently dropped below
  }
  if (static_cast<int>(keep.size()) != m) {
    Tableau t2;
    const int m2 = static_cast<int>(keep.size());
    t2.m.resize(m2, n);
    t2.rhs.resize(m2);
    for (int i = 0; i < m2; ++i) {
      t2.m.row(i) = t.m.row(keep[static_cast<std::size_t>(i)]).head(n);
      t2.rhs(i) = t.rhs(keep[static_cast<std::size_t>(i)]);
      t2.basis.push_back(t.basis[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])]);
    }
    t = std::move(t2);
  } else {
    // Strip artificial columns.
    Eigen::MatrixXd real = t.m.leftCols(n);
    t.m = real;
  }

  // Phase 2: canonical reduced costs from the real objective.
  t.red.resize(n);
  t.red = c.transpose();
  t.objective = 0.0;
  for (int i = 0; i < t.m.rows(); ++i) {
    const int bj = t.basis[static_cast<std::size_t>(i)];
    const double cb = c(bj);
    if (cb != 0.0) {
      t.red -= cb * t.m.row(i);
      t.objective += cb * t.rhs(i);
    }
  }

  if (!iterate(t, n)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  out.status = LpStatus::kOptimal;
  out.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < t.m.rows(); ++i)
    out.x(t.basis[static_cast<std::size_t>(i)]) = t.rhs(i);
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace hadwiger
