#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greedylab/corpus.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/system.hpp"

namespace greedylab {

enum class BoundDirection { LowerBound, ConstructiveUpperBound };

std::string to_string(BoundDirection d);

/// Data sufficient to recompute an estimate's value from scratch.
struct Witness {
  CoeffVec x;                     // vector-based witnesses
  int m = -1;
  double tau = -1.0;
  std::vector<int> set_a, set_b;  // set-based witnesses (democracy family, weak sets)
  std::vector<double> scalars_a, scalars_b;
  std::string selector_id;
  std::string note;
};

/// A named constant bracketed from one side, with a reproducible witness.
struct ConstantEstimate {
  std::string name;  // K_1q K_2q K_d K_sd K_hd K_a K_s K_g K_ws K_wag K_bsg K_bag
  double value = 0.0;
  BoundDirection direction = BoundDirection::LowerBound;
  double tau = -1.0;  // set for the weak/branch constants
  Witness witness;
  std::string corpus_descriptor;
  int skipped_ratios = 0;  // zero-denominator ratios that were skipped
};

/// Hill-climb sharpening of vector witnesses: coordinate-wise multiplicative
/// perturbations by 1 +- 10^-k, k = 1..4, first-improvement, up to `rounds`
/// passes, restarted from the best few corpus candidates.
struct RefineOptions {
  int rounds = 200;
  int top_candidates = 4;
};

/// Worst ratios ||G_m x||/||x|| and ||x - G_m x||/||x|| over the corpus.
std::pair<ConstantEstimate, ConstantEstimate> estimate_quasi_greedy(
    const MinimalSystem& sys, const Corpus& corpus, const RefineOptions& refine = {});

struct DemocracyEstimates {
  ConstantEstimate k_d, k_sd, k_hd;
};

/// Exhaustive over index sets of cardinality <= max_card (and all sign
/// patterns for the superdemocracy constant); the hyperdemocracy amplitude
/// grids {1,1/2,1/4} and {1,2,4} are sampled, seeded for determinism, and
/// always include the superdemocratic patterns so K_d <= K_sd <= K_hd.
DemocracyEstimates estimate_democracy_family(const MinimalSystem& sys, int max_card,
                                             std::uint64_t seed = 0, int amp_samples = 16);

ConstantEstimate estimate_almost_greedy(const MinimalSystem& sys, const Corpus& corpus,
                                        const RefineOptions& refine = {});

ConstantEstimate estimate_semi_greedy(const MinimalSystem& sys, const Corpus& corpus,
                                      const RefineOptions& refine = {});

/// (K_ws(tau), K_wag(tau)): the minimum over enumerated weak thresholding
/// sets realizes the existential in the defining conditions.
std::pair<ConstantEstimate, ConstantEstimate> estimate_weak_constants(
    const MinimalSystem& sys, const Corpus& corpus, double tau, const RefineOptions& refine = {});

std::pair<ConstantEstimate, ConstantEstimate> estimate_branch_constants(
    const MinimalSystem& sys, const Corpus& corpus, double tau, const BranchSelector& sel,
    const RefineOptions& refine = {});

ConstantEstimate estimate_greedy_constant(const MinimalSystem& sys, const Corpus& corpus,
                                          const RefineOptions& refine = {});

/// Recomputes the estimate's value from its witness alone.
double reevaluate_witness(const MinimalSystem& sys, const ConstantEstimate& est);

/// Upper bounds supplied from outside the search (constructions, closed forms).
struct Known {
  std::string name;
  double value = 0.0;
  BoundDirection direction = BoundDirection::ConstructiveUpperBound;
  double tau = -1.0;
  std::string note;
};

enum class CheckStatus { Pass, Fail, NotCheckable };

std::string to_string(CheckStatus s);

struct InequalityCheck {
  std::string id;
  std::string statement;
  CheckStatus status = CheckStatus::NotCheckable;
  double lhs = 0.0, rhs = 0.0;
  std::string detail;
};

/// Checks each quantitative inequality in the valid direction only:
/// a lower-bound estimate on the left against an upper bound assembled
/// from knowns (and exact system quantities) on the right. Anything
/// else is reported NOT-CHECKABLE, never guessed.
std::vector<InequalityCheck> check_inequalities(const MinimalSystem& sys,
                                                const std::vector<ConstantEstimate>& estimates,
                                                const std::vector<Known>& knowns);

}  // namespace greedylab
