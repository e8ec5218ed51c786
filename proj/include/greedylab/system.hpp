#pragma once

#include <utility>
#include <vector>

#include "greedylab/norms.hpp"

namespace greedylab {

/// Finite biorthogonal system: N basis vectors x_i and N dual covectors x_i'
/// inside an n-dimensional ambient normed space (N <= n). The duals act by the
/// standard pairing; elements of the spanned subspace are carried as CoeffVecs
/// of length N, and ambient coordinates are derived on demand via synthesize().
struct MinimalSystem {
  int ambient_dim = 0;
  NormSpec norm_spec;
  std::vector<AmbientVec> basis;
  std::vector<AmbientVec> duals;
  std::vector<int> labels;  // optional annotations (e.g. source indices); size N or empty

  int size() const { return static_cast<int>(basis.size()); }
  double vec_norm(const AmbientVec& v) const { return norm(norm_spec, v); }
  int label_of(int pos) const { return labels.empty() ? pos + 1 : labels[pos]; }
};

/// Shape-checks only; structural invariants are reported by validate_system.
MinimalSystem make_system(int ambient_dim, NormSpec norm_spec, std::vector<AmbientVec> basis,
                          std::vector<AmbientVec> duals, std::vector<int> labels = {});

/// Unit vector basis of the given norm in dimension n (duals = coordinate functionals).
MinimalSystem unit_vector_system(int n, NormSpec norm_spec);

struct SystemValidation {
  double biorth_residual = 0.0;  // max_ij |<x_i', x_j> - delta_ij|
  bool biorth_ok = false;
  int numeric_rank = 0;
  bool rank_ok = false;
  double min_basis_norm = 0.0;
  double max_basis_norm = 0.0;
  std::vector<double> dual_upper_bounds;  // ambient dual norms of the x_i'
  bool ok() const { return biorth_ok && rank_ok; }
};

/// Reports biorthogonality residual (tolerance 1e-10), numeric rank
/// (tolerance 1e-9), seminormalization bounds and ambient dual norms.
SystemValidation validate_system(const MinimalSystem& sys);

/// x = sum_i c_i x_i in ambient coordinates.
AmbientVec synthesize(const MinimalSystem& sys, const CoeffVec& c);

/// Applies all duals to an ambient vector: (x_i'(v))_i.
CoeffVec analyze(const MinimalSystem& sys, const AmbientVec& v);

/// ||synthesize(c)|| in the system's ambient norm.
double coeff_norm(const MinimalSystem& sys, const CoeffVec& c);

/// P_A in coefficient space: keeps entries of c with index in a, zeroes the rest.
/// Indices are 0-based positions; throws std::out_of_range on bad indices.
CoeffVec project(const CoeffVec& c, const std::vector<int>& a);

/// (lower, upper) bracket of ||x_i'|| as a functional on the spanned subspace:
/// lower from maximizing |x_i'(x)|/||x|| over the corpus, upper the exact
/// ambient dual norm. Throws std::invalid_argument on an empty corpus.
std::pair<double, double> dual_norm_bounds(const MinimalSystem& sys, int i,
                                           const std::vector<CoeffVec>& corpus);

/// (lower, upper) bracket of the basis constant max_k ||P_{1..k}||.
/// lower = max over corpus and k of ||S_k x||/||x||; upper = the
/// triangle-inequality bound max_k sum_{i<=k} ||x_i|| * dual_norm(x_i').
std::pair<double, double> basis_constant_bounds(const MinimalSystem& sys,
                                                const std::vector<CoeffVec>& corpus);

/// Adjoins an apex vector in a fresh ambient coordinate: x_0 = s e_{n+1} with
/// s = max_i ||x_i|| and x_0' = e_{n+1}'/s, placed first. By construction
/// ||x_0|| ||x_0'|| = 1 and ||x_0|| = max_i ||x_i||. Requires an unweighted
/// ambient norm (the new coordinate has no defined weight otherwise).
MinimalSystem extend_with_apex(const MinimalSystem& sys);

}  // namespace greedylab
