#pragma once

#include <string>
#include <vector>

#include "greedylab/system.hpp"

namespace greedylab {

/// Minimum-norm approximation over a fixed support.
///
/// Backends by ambient norm:
///  - l2 / weighted l2: closed-form least squares (SVD; rank-deficient
///    supports resolve to the least-norm solution),
///  - l1 / weighted l1 / linf: exact LP through the dense simplex,
///  - other lp: projected subgradient with diminishing steps and
///    best-iterate tracking; certificate_gap is a proven bound on
///    (error - optimum) from a dual feasible point.
/// Only the error value is contractual when minimizers are non-unique.
struct ChebSolution {
  std::vector<int> support;     // ascending positions
  std::vector<double> coeffs;   // one per support position
  double error = 0.0;
  std::string backend;          // "projection" | "least-squares" | "simplex-lp" | "subgradient"
  double certificate_gap = 0.0;
  int iterations = 0;
};

ChebSolution chebyshev_approximant(const MinimalSystem& sys, const CoeffVec& x,
                                   const std::vector<int>& support);

/// The iterative backend on its own, for any finite p (cross-checks the
/// closed-form and LP paths). Step schedule D/sqrt(k) with
/// D = 2||x|| / min_i ||x_i||, iterates projected onto the ball of radius
/// D/2, best iterate kept, 10^4 iteration cap.
ChebSolution chebyshev_subgradient(const MinimalSystem& sys, const CoeffVec& x,
                                   const std::vector<int>& support);

/// ||x - sum_{i in support} b_i x_i|| in the ambient norm.
double residual_norm(const MinimalSystem& sys, const CoeffVec& x, const std::vector<int>& support,
                     const std::vector<double>& b);

struct MTermError {
  int m = 0;
  double value = 0.0;
  std::vector<int> support;     // minimizing support (sigma) or set A (sigma-tilde)
  std::vector<double> coeffs;   // minimizing coefficients on the support
};

/// Best m-term approximation error: minimum Chebyshev error over all
/// supports of size m (smaller supports are dominated by span inclusion).
/// m = 0 gives ||x||. Enumeration capped at 10^6 supports.
MTermError sigma_m(const MinimalSystem& sys, const CoeffVec& x, int m);

/// Best projection error over index sets of size <= m; all cardinalities
/// are enumerated (projection error is not monotone in the set).
MTermError sigma_tilde_m(const MinimalSystem& sys, const CoeffVec& x, int m);

}  // namespace greedylab
