#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greedylab/corpus.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/system.hpp"

namespace greedylab {

/// Counterexample families over source indices i = 2..n, kept as labels:
///  - L1Alpha:   x_i = e_i + 2(alpha+1)(-1)^i e_1 in l1^n,
///  - SupNorm:   x_i = e_i + (-1)^i e_1 in linf^n,
///  - LpVariant: the SupNorm vectors in lp^n, 1 < p < inf.
/// Duals are the restricted coordinate functionals e_i'.
enum class ExampleFamily { L1Alpha, SupNorm, LpVariant };

struct ExampleSpec {
  ExampleFamily family = ExampleFamily::L1Alpha;
  double alpha = 1.0;  // L1Alpha only, > 0
  double p = 2.0;      // LpVariant only, in (1, inf)
  int n = 8;           // ambient dimension, >= 4
};

std::string to_string(ExampleFamily f);

/// System of size n-1 in ambient dimension n; validate_system passes exactly.
MinimalSystem build_example(const ExampleSpec& spec);

/// The guaranteed weak-Chebyshev factor of the family: 4/tau for L1Alpha,
/// 3/tau for SupNorm, 3*2^(1/p)/tau for LpVariant.
double transfer_bound_factor(const ExampleSpec& spec, double tau);

/// Rewrites scalars a on the set A as scalars b on the weak thresholding set
/// W (|W| = |A| = m): b_j = a_j on W intersect A, and along the
/// order-preserving bijection pi : W\A -> A\W, b_j = (-1)^(j+pi(j)) a_pi(j)
/// with parities taken from the source labels. The residual built from b
/// is guaranteed within transfer_bound_factor(spec, tau) times the residual
/// built from a. Throws if W is not a certified weak thresholding set for x
/// or on a cardinality mismatch.
std::vector<double> transfer_coefficients(const MinimalSystem& sys, const CoeffVec& x, int m,
                                          double tau, const std::vector<int>& w_set,
                                          const std::vector<int>& a_set,
                                          const std::vector<double>& a);

struct ClaimResult {
  std::string claim;
  std::string status;  // PASS | FAIL | INFO
  double observed = 0.0;
  double expected = 0.0;
  std::string detail;
};

struct ClaimOptions {
  int trials = 1000;
  std::vector<double> taus = {1.0, 0.5};
  std::uint64_t seed = 414243;
  CorpusSpec corpus_spec;  // empty -> a modest default
  int refine_rounds = 40;
};

/// Exact norm identities, witness lower bounds, constructive sweep bounds and
/// estimator cross-checks for the family. Claims that only make sense for the
/// infinite systems are reported INFO, never PASS/FAIL.
std::vector<ClaimResult> verify_example_claims(const ExampleSpec& spec,
                                               const ClaimOptions& options = {});

bool any_claim_failure(const std::vector<ClaimResult>& claims);

}  // namespace greedylab
