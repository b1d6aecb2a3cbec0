#include "cgmc/strat/lp.hpp"

#include <cassert>
#include <vector>

namespace cgmc::strat {

namespace {

constexpr double kTol = 1e-9;
constexpr int kMaxPivots = 20000;

enum class St { Optimal, Infeasible, Unbounded, Fail };

/// Dense two-phase primal simplex with Bland's rule.
/// min c.z  s.t.  A z = rhs, z >= 0. rhs need not be nonnegative.
class Simplex {
 public:
  Simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs)
      : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())) {
    // Tableau [A | I_art | rhs] with rows normalized to rhs >= 0.
    T_.resize(m_, n_ + m_ + 1);
    T_.setZero();
    for (int i = 0; i < m_; ++i) {
      double sign = rhs(i) < 0 ? -1.0 : 1.0;
      T_.block(i, 0, 1, n_) = sign * A.row(i);
      T_(i, n_ + i) = 1.0;
      T_(i, n_ + m_) = sign * rhs(i);
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  St run(const Eigen::VectorXd& c) {
    // Phase 1: minimize the artificial sum.
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n_ + m_);
    for (int j = n_; j < n_ + m_; ++j) c1(j) = 1.0;
    St st = optimize(c1, n_ + m_);
    if (st != St::Optimal) return st == St::Unbounded ? St::Fail : st;
    if (objective(c1) > 1e-7) return St::Infeasible;
    drive_out_artificials();

    // Phase 2 over the original columns only.
    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n_ + m_);
    c2.head(n_) = c;
    return optimize(c2, n_);
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) z(basis_[i]) = T_(i, n_ + m_);
    return z;
  }

  double objective(const Eigen::VectorXd& c) const {
    double v = 0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < c.size()) v += c(basis_[i]) * T_(i, n_ + m_);
    return v;
  }

 private:
  int m_, n_;
  Eigen::MatrixXd T_;
  std::vector<int> basis_;

  void pivot(int row, int col) {
    T_.row(row) /= T_(row, col);
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double f = T_(i, col);
      if (f != 0.0) T_.row(i) -= f * T_.row(row);
    }
    basis_[row] = col;
  }

  St optimize(const Eigen::VectorXd& c, int allowed_cols) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      // Reduced costs d = c - cB' T; Bland: smallest improving index enters.
      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) cb(i) = c(basis_[i]);
      int entering = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        double d = c(j) - cb.dot(T_.col(j));
        if (d < -kTol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return St::Optimal;

      int leave = -1;
      double best = 0;
      for (int i = 0; i < m_; ++i) {
        double a = T_(i, entering);
        if (a > kTol) {
          double ratio = T_(i, n_ + m_) / a;
          if (leave < 0 || ratio < best - kTol ||
              (ratio < best + kTol && basis_[i] < basis_[leave]))
            leave = i, best = ratio;
        }
      }
      if (leave < 0) return St::Unbounded;
      pivot(leave, entering);
    }
    return St::Fail;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j)
        if (std::abs(T_(i, j)) > kTol) {
          col = j;
          break;
        }
      if (col >= 0) pivot(i, col);
      // Otherwise the row is redundant; the artificial stays basic at zero
      // and phase 2 never lets it re-enter.
    }
  }
};

struct GeRow {
  Eigen::VectorXd g;
  double h;
};

/// min c.z0 s.t. every row g.z0 >= h, z0 >= 0 (surplus added internally).
St solve_ge(const std::vector<GeRow>& rows, const Eigen::VectorXd& c,
            Eigen::VectorXd& out, double& obj) {
  int n0 = static_cast<int>(c.size());
  int m = static_cast<int>(rows.size());
  Eigen::MatrixXd A(m, n0 + m);
  Eigen::VectorXd rhs(m);
  A.setZero();
  for (int i = 0; i < m; ++i) {
    A.block(i, 0, 1, n0) = rows[i].g.transpose();
    A(i, n0 + i) = -1.0;  // surplus
    rhs(i) = rows[i].h;
  }
  Simplex sx(A, rhs);
  Eigen::VectorXd cz = Eigen::VectorXd::Zero(n0 + m);
  cz.head(n0) = c;
  St st = sx.run(cz);
  if (st != St::Optimal) return st;
  Eigen::VectorXd z = sx.solution();
  out = z.head(n0);
  obj = c.dot(out);
  return St::Optimal;
}

}  // namespace

LpResult lp_solve(const Eigen::MatrixXd& C, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& q, const Eigen::VectorXd* lo,
                  const Eigen::VectorXd* hi) {
  const int n = static_cast<int>(q.size());
  assert(C.rows() == b.size());
  assert(C.rows() == 0 || C.cols() == n);

  LpResult res;
  if (C.rows() == 0 && !lo && !hi) {
    res.status = LpResult::Status::Optimal;
    res.value = 0;
    res.s = q;
    return res;
  }

  // Stage 1: free s split into s+ - s-; z0 = (s+, s-, x).
  std::vector<GeRow> rows;
  auto add_row = [&](const Eigen::VectorXd& srow, double xcoef_i, int xi, double h) {
    GeRow r;
    r.g = Eigen::VectorXd::Zero(3 * n);
    r.g.head(n) = srow;
    r.g.segment(n, n) = -srow;
    if (xi >= 0) r.g(2 * n + xi) = xcoef_i;
    r.h = h;
    rows.push_back(std::move(r));
  };
  for (int i = 0; i < C.rows(); ++i) add_row(C.row(i), 0, -1, b(i));
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = 1.0;
    add_row(-e, 1.0, i, -q(i));  // x_i - s_i >= -q_i
    add_row(e, 1.0, i, q(i));    // s_i + x_i >= q_i
    if (lo) add_row(e, 0, -1, (*lo)(i));
    if (hi) add_row(-e, 0, -1, -(*hi)(i));
  }
  Eigen::VectorXd c1 = Eigen::VectorXd::Zero(3 * n);
  c1.tail(n).setOnes();
  Eigen::VectorXd z1;
  double v1 = 0;
  St st = solve_ge(rows, c1, z1, v1);
  if (st == St::Infeasible) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  if (st != St::Optimal) {
    res.status = LpResult::Status::NumericFailure;
    return res;
  }
  Eigen::VectorXd s1 = z1.head(n) - z1.segment(n, n);

  // Stage 2: canonical minimizer. The optimal face satisfies
  // |s_i - q_i| <= v1, so boxing s around q keeps it intact; substituting
  // u = s - LB >= 0 avoids the split and we minimize the coordinate sum.
  Eigen::VectorXd LB(n), UB(n);
  for (int i = 0; i < n; ++i) {
    LB(i) = q(i) - v1 - 1.0;
    UB(i) = q(i) + v1 + 1.0;
    if (lo) LB(i) = std::max(LB(i), (*lo)(i));
    if (hi) UB(i) = std::min(UB(i), (*hi)(i));
  }
  std::vector<GeRow> rows2;
  auto add2 = [&](const Eigen::VectorXd& urow, const Eigen::VectorXd& xrow, double h) {
    GeRow r;
    r.g = Eigen::VectorXd::Zero(2 * n);
    r.g.head(n) = urow;
    r.g.tail(n) = xrow;
    r.h = h;
    rows2.push_back(std::move(r));
  };
  for (int i = 0; i < C.rows(); ++i) {
    Eigen::VectorXd cr = C.row(i);
    add2(cr, Eigen::VectorXd::Zero(n), b(i) - cr.dot(LB));
  }
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = 1.0;
    add2(-e, e, LB(i) - q(i));   // x_i - u_i >= LB_i - q_i
    add2(e, e, q(i) - LB(i));    // u_i + x_i >= q_i - LB_i
    add2(-e, Eigen::VectorXd::Zero(n), LB(i) - UB(i));  // u_i <= UB_i - LB_i
  }
  add2(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Constant(n, -1.0),
       -(v1 + 1e-7));  // sum x <= v1
  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(2 * n);
  c2.head(n).setOnes();
  Eigen::VectorXd z2;
  double v2 = 0;
  res.status = LpResult::Status::Optimal;
  res.value = v1;
  if (solve_ge(rows2, c2, z2, v2) == St::Optimal)
    res.s = z2.head(n) + LB;
  else
    res.s = s1;  // canonicalization failed numerically; stage-1 point is valid
  return res;
}

}  // namespace cgmc::strat
