#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "greedylab/norms.hpp"

namespace greedylab {

/// Permutation of {0..N-1} sorting coefficients by decreasing modulus,
/// ties broken toward the smaller index. Zero coefficients participate
/// (they tie at modulus zero and appear last, ascending).
struct GreedyOrdering {
  std::vector<int> perm;
};

GreedyOrdering greedy_ordering(const CoeffVec& c);

/// First m entries of the greedy ordering, returned ascending.
std::vector<int> greedy_set(const CoeffVec& c, int m);

/// m-term thresholding approximation in coefficient space:
/// project(c, greedy_set(c, m)); m = 0 gives the zero vector.
CoeffVec greedy_sum(const CoeffVec& c, int m);

/// min_{i in s} |c_i| >= tau * max_{j not in s} |c_j| (non-strict, as defined).
bool is_weak_thresholding_set(const CoeffVec& c, const std::vector<int>& s, double tau);

/// An index set certified to satisfy the weak thresholding inequality
/// for the coefficient vector it was enumerated from.
struct ThresholdingSet {
  std::vector<int> indices;  // ascending
  double tau = 1.0;
  int m() const { return static_cast<int>(indices.size()); }
};

/// Exactly the m-subsets satisfying the weak thresholding inequality,
/// in lexicographic order. Nonempty (the greedy set always qualifies).
/// Caps enumeration at C(N,m) <= 10^6.
std::vector<ThresholdingSet> enumerate_weak_sets(const CoeffVec& c, int m, double tau);

/// { i : |c_i| >= tau * max_j |c_j| }. Requires c != 0.
std::vector<int> branch_active_set(const CoeffVec& c, double tau);

/// One-index selector for the branch algorithm. Contract (checked by
/// validate_branch_selector): picks inside the active set, is scale
/// invariant, and depends only on the restriction to the active set.
struct BranchSelector {
  std::string id;
  std::function<int(const CoeffVec&, double tau)> pick;
};

const BranchSelector& default_branch_selector();    // greedy-ordering head
const BranchSelector& max_index_branch_selector();  // largest active index

struct SelectorCheck {
  bool in_active_set = false;
  bool scale_invariant = false;
  bool active_restriction = false;
  bool ok() const { return in_active_set && scale_invariant && active_restriction; }
};

SelectorCheck validate_branch_selector(const BranchSelector& sel, int n, std::uint64_t seed,
                                       int trials = 200);

/// Registers a selector after it passes the property suite; throws otherwise.
void register_branch_selector(const BranchSelector& sel, int n, std::uint64_t seed);
const BranchSelector& find_branch_selector(const std::string& id);

/// Recursive branch ordering: repeatedly applies the selector to the residual
/// with already-picked coordinates removed. Length |supp(c)|; requires c != 0.
std::vector<int> branch_ordering(const CoeffVec& c, double tau, const BranchSelector& sel);

/// Projection of c onto the first min(m, |supp(c)|) branch-ordering indices;
/// positions beyond the support contribute zero, and m = 0 gives zero.
CoeffVec branch_greedy_sum(const CoeffVec& c, double tau, int m, const BranchSelector& sel);

}  // namespace greedylab
