#pragma once

#include <Eigen/Dense>
#include <optional>

namespace cgmc::strat {

/// One conjunction of linear constraints C s >= b over state-vector space.
struct LinearSystem {
  Eigen::MatrixXd C;  // rows x state-vector length
  Eigen::VectorXd b;
};

struct LpResult {
  enum class Status { Optimal, Infeasible, NumericFailure } status;
  double value = 0;    // minimal 1-norm distance ||s - q||_1
  Eigen::VectorXd s;   // a minimizer; canonical: smallest coordinate sum
};

/// Solves min sum_i x_i subject to C s >= b and -x_i <= s_i - q_i <= x_i,
/// i.e. the 1-norm projection of q onto the feasible region. `lo`/`hi`
/// optionally box-bound s (declared variable ranges). The relaxation is
/// continuous: s need not be integral. Among multiple minimizers the one with
/// the smallest coordinate sum is returned, which keeps results reproducible.
/// The objective is bounded below by zero, so an unbounded outcome is
/// impossible; numeric trouble is reported as NumericFailure.
LpResult lp_solve(const Eigen::MatrixXd& C, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& q, const Eigen::VectorXd* lo = nullptr,
                  const Eigen::VectorXd* hi = nullptr);

}  // namespace cgmc::strat
