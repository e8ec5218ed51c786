#include "greedylab/simplex.hpp"

#include <cmath>
#include <vector>

#include "greedylab/errors.hpp"

namespace greedylab {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;

// Tableau over columns [structural | slacks | artificials | rhs].
// Rows with negative rhs are negated up front, so slacks enter with
// coefficient -1 there and an artificial carries the initial basis.
struct Tableau {
  Eigen::MatrixXd t;           // m x (cols + 1)
  std::vector<int> basis;      // basic variable per row
  int n_struct, n_slack, n_art;

  int cols() const { return n_struct + n_slack + n_art; }
  double& at(int r, int c) { return t(r, c); }
  double rhs(int r) const { return t(r, cols()); }
};

void pivot(Tableau& tab, int row, int col) {
  const int w = tab.cols() + 1;
  double p = tab.t(row, col);
  for (int j = 0; j < w; ++j) tab.t(row, j) /= p;
  for (int r = 0; r < tab.t.rows(); ++r) {
    if (r == row) continue;
    double f = tab.t(r, col);
    if (f == 0.0) continue;
    for (int j = 0; j < w; ++j) tab.t(r, j) -= f * tab.t(row, j);
  }
  tab.basis[row] = col;
}

// One simplex phase on the given objective row (min). Bland's rule:
// entering column is the lowest-index one with negative reduced cost;
// the ratio test breaks ties toward the lowest basic variable index.
// Returns false when unbounded.
bool run_phase(Tableau& tab, Eigen::RowVectorXd& z, double& zval, int allowed_cols, int max_pivots,
               int& pivots) {
  const int m = static_cast<int>(tab.t.rows());
  while (true) {
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (z(j) < -kCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      double a = tab.t(r, enter);
      if (a > kPivotTol) {
        double ratio = tab.rhs(r) / a;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::fabs(ratio - best_ratio) <= 1e-15 && tab.basis[r] < tab.basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) return false;  // unbounded direction
    if (++pivots > max_pivots) throw CyclingGuardError("solve_lp: pivot guard tripped");
    // update objective row along with the tableau
    double f = z(enter);
    pivot(tab, leave, enter);
    for (int j = 0; j < tab.cols(); ++j) z(j) -= f * tab.t(leave, j);
    zval -= f * tab.rhs(leave);
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& lp, int max_pivots) {
  const int m = static_cast<int>(lp.a.rows());
  const int n = static_cast<int>(lp.a.cols());

  Tableau tab;
  tab.n_struct = n;
  tab.n_slack = m;
  // artificials only where rhs < 0 after slack insertion
  std::vector<int> art_row;
  for (int r = 0; r < m; ++r)
    if (lp.b(r) < 0.0) art_row.push_back(r);
  tab.n_art = static_cast<int>(art_row.size());
  tab.t = Eigen::MatrixXd::Zero(m, tab.cols() + 1);
  tab.basis.assign(m, -1);

  for (int r = 0; r < m; ++r) {
    double s = lp.b(r) < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tab.t(r, j) = s * lp.a(r, j);
    tab.t(r, n + r) = s;  // slack
    tab.t(r, tab.cols()) = s * lp.b(r);
  }
  for (int k = 0; k < tab.n_art; ++k) {
    tab.t(art_row[k], n + m + k) = 1.0;
    tab.basis[art_row[k]] = n + m + k;
  }
  for (int r = 0; r < m; ++r)
    if (tab.basis[r] < 0) tab.basis[r] = n + r;

  LpSolution out;
  int pivots = 0;

  if (tab.n_art > 0) {
    // phase 1: min sum of artificials
    Eigen::RowVectorXd z = Eigen::RowVectorXd::Zero(tab.cols());
    double zval = 0.0;
    for (int k = 0; k < tab.n_art; ++k) z(n + m + k) = 1.0;
    for (int k = 0; k < tab.n_art; ++k) {  // price out the initial basis
      int r = art_row[k];
      for (int j = 0; j < tab.cols(); ++j) z(j) -= tab.t(r, j);
      zval -= tab.rhs(r);
    }
    if (!run_phase(tab, z, zval, tab.cols(), max_pivots, pivots))
      throw CyclingGuardError("solve_lp: unbounded phase-1");
    if (-zval > 1e-7) {  // achieved objective is -zval
      out.status = LpStatus::Infeasible;
      return out;
    }
    // drive any artificial still basic out of the basis
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] >= n + m) {
        int col = -1;
        for (int j = 0; j < n + m; ++j)
          if (std::fabs(tab.t(r, j)) > kPivotTol) {
            col = j;
            break;
          }
        if (col >= 0) {
          if (++pivots > max_pivots) throw CyclingGuardError("solve_lp: pivot guard tripped");
          pivot(tab, r, col);
        }
        // a fully-zero row is redundant; its artificial stays at level zero
      }
    }
  }

  // phase 2: min c.u over structural + slack columns
  Eigen::RowVectorXd z = Eigen::RowVectorXd::Zero(tab.cols());
  double zval = 0.0;
  for (int j = 0; j < n; ++j) z(j) = lp.c(j);
  for (int r = 0; r < m; ++r) {
    int b = tab.basis[r];
    if (b < n && z(b) != 0.0) {
      double f = z(b);
      for (int j = 0; j < tab.cols(); ++j) z(j) -= f * tab.t(r, j);
      zval -= f * tab.rhs(r);
    }
  }
  if (!run_phase(tab, z, zval, n + m, max_pivots, pivots)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.u = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r)
    if (tab.basis[r] < n) out.u(tab.basis[r]) = tab.rhs(r);
  out.objective = lp.c.dot(out.u);
  out.pivots = pivots;
  out.status = LpStatus::Optimal;
  return out;
}

}  // namespace greedylab
