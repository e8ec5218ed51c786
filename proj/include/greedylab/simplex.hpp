#pragma once

#include <Eigen/Dense>

namespace greedylab {

/// min c.u  subject to  A u <= b, u >= 0.
struct LpProblem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  Eigen::VectorXd u;
  double objective = 0.0;
  int pivots = 0;
};

/// Dense two-phase primal simplex with Bland's rule (anti-cycling).
/// Throws CyclingGuardError if the pivot guard trips.
LpSolution solve_lp(const LpProblem& lp, int max_pivots = 50000);

}  // namespace greedylab
