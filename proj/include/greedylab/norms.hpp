#pragma once

#include <string>
#include <vector>

namespace greedylab {

enum class NormKind { Lp, Linf, WeightedLp };

/// Ambient norm descriptor: lp(p) with p >= 1, linf(), or weighted_lp(p, w)
/// with p >= 1 and all weights positive. Weighted norms are
/// ||v|| = (sum_i w_i |v_i|^p)^(1/p); the weight count must match the
/// ambient dimension wherever the norm is evaluated.
struct NormSpec {
  NormKind kind = NormKind::Lp;
  double p = 2.0;
  std::vector<double> weights;

  static NormSpec lp(double p);
  static NormSpec linf();
  static NormSpec weighted_lp(double p, std::vector<double> weights);

  bool is_weighted() const { return kind == NormKind::WeightedLp; }
  std::string to_string() const;
};

using AmbientVec = std::vector<double>;
using CoeffVec = std::vector<double>;

/// ||v|| in the ambient norm. Throws std::invalid_argument on dimension mismatch.
double norm(const NormSpec& spec, const AmbientVec& v);

/// Exact dual norm of a covector under the standard pairing:
/// lq for lp (1/p + 1/q = 1), l1 for linf, and the matching weighted dual.
double dual_norm(const NormSpec& spec, const AmbientVec& f);

/// A covector g with dual_norm(g) = 1 and <g, r> = norm(r). Requires r != 0.
AmbientVec norming_functional(const NormSpec& spec, const AmbientVec& r);

}  // namespace greedylab
