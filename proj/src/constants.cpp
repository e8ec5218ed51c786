#include "greedylab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "greedylab/chebyshev.hpp"
#include "greedylab/rng.hpp"
#include "greedylab/subsets.hpp"

namespace greedylab {

namespace {

constexpr double kDenomTol = 1e-9;

std::string canonical_name(const std::string& name) {
  auto p = name.find('(');
  return p == std::string::npos ? name : name.substr(0, p);
}

// Ratio behind each vector-witness constant; nullopt when the denominator
// vanishes (skipped by contract).
std::optional<double> constant_ratio(const MinimalSystem& sys, const std::string& name,
                                     const CoeffVec& x, int m, double tau,
                                     const std::string& selector_id) {
  const std::string key = canonical_name(name);
  const double nx = coeff_norm(sys, x);
  if (key == "K_1q") {
    if (nx <= kDenomTol) return std::nullopt;
    return coeff_norm(sys, greedy_sum(x, m)) / nx;
  }
  if (key == "K_2q") {
    if (nx <= kDenomTol) return std::nullopt;
    CoeffVec r(x);
    CoeffVec g = greedy_sum(x, m);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
    return coeff_norm(sys, r) / nx;
  }
  if (key == "K_a" || key == "K_wag" || key == "K_bag") {
    double denom = sigma_tilde_m(sys, x, m).value;
    if (denom <= kDenomTol) return std::nullopt;
    if (key == "K_a") {
      CoeffVec r(x);
      CoeffVec g = greedy_sum(x, m);
      for (size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
      return coeff_norm(sys, r) / denom;
    }
    if (key == "K_wag") {
      if (m == 0) return nx / denom;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : enumerate_weak_sets(x, m, tau)) {
        CoeffVec r(x);
        for (int i : w.indices) r[i] = 0.0;
        best = std::min(best, coeff_norm(sys, r));
      }
      return best / denom;
    }
    // K_bag
    CoeffVec r(x);
    CoeffVec g = branch_greedy_sum(x, tau, m, find_branch_selector(selector_id));
    for (size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
    return coeff_norm(sys, r) / denom;
  }
  if (key == "K_g" || key == "K_s" || key == "K_ws" || key == "K_bsg") {
    double denom = sigma_m(sys, x, m).value;
    if (denom <= kDenomTol) return std::nullopt;
    if (key == "K_g") {
      CoeffVec r(x);
      CoeffVec g = greedy_sum(x, m);
      for (size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
      return coeff_norm(sys, r) / denom;
    }
    if (key == "K_s") return chebyshev_approximant(sys, x, greedy_set(x, m)).error / denom;
    if (key == "K_ws") {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : enumerate_weak_sets(x, m, tau))
        best = std::min(best, chebyshev_approximant(sys, x, w.indices).error);
      return best / denom;
    }
    // K_bsg: chebyshev over the first m branch-ordering indices
    auto order = branch_ordering(x, tau, find_branch_selector(selector_id));
    int take = std::min<int>(m, static_cast<int>(order.size()));
    std::vector<int> support(order.begin(), order.begin() + take);
    std::sort(support.begin(), support.end());
    return chebyshev_approximant(sys, x, support).error / denom;
  }
  throw std::invalid_argument("constant_ratio: unknown constant '" + name + "'");
}

struct Candidate {
  double value;
  Witness witness;
};

// Max-by-value reduction keeping a handful of top candidates for refinement.
struct Accumulator {
  double best = -std::numeric_limits<double>::infinity();
  Witness best_witness;
  std::vector<Candidate> top;
  int skipped = 0;
  size_t cap = 4;

  void consider(double v, Witness w) {
    if (top.size() < cap || v > top.back().value) {
      top.push_back({v, w});
      std::stable_sort(top.begin(), top.end(),
                       [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
      if (top.size() > cap) top.pop_back();
    }
    if (v > best) {
      best = v;
      best_witness = std::move(w);
    }
  }
};

void hill_climb(const MinimalSystem& sys, const std::string& name, Witness& w, double& value,
                const RefineOptions& opt) {
  if (opt.rounds <= 0 || w.x.empty()) return;
  static const double kFactors[] = {1.1,    0.9,    1.01,   0.99,
                                    1.001,  0.999,  1.0001, 0.9999};
  for (int round = 0; round < opt.rounds; ++round) {
    bool improved = false;
    for (size_t i = 0; i < w.x.size() && !improved; ++i) {
      if (w.x[i] == 0.0) continue;
      for (double f : kFactors) {
        Witness cand = w;
        cand.x[i] *= f;
        auto v = constant_ratio(sys, name, cand.x, cand.m, cand.tau, cand.selector_id);
        if (v && *v > value) {
          value = *v;
          w = std::move(cand);
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
  }
}

ConstantEstimate reduce_over_corpus(const MinimalSystem& sys, const Corpus& corpus,
                                    const std::string& name, int m_lo, double tau,
                                    const std::string& selector_id, const RefineOptions& refine) {
  if (corpus.items.empty()) throw std::invalid_argument(name + ": empty corpus");
  const int n = sys.size();
  Accumulator acc;
  acc.cap = static_cast<size_t>(std::max(1, refine.top_candidates));
  for (const auto& item : corpus.items) {
    for (int m = m_lo; m <= n; ++m) {
      auto v = constant_ratio(sys, name, item.coeffs, m, tau, selector_id);
      if (!v) {
        ++acc.skipped;
        continue;
      }
      Witness w;
      w.x = item.coeffs;
      w.m = m;
      w.tau = tau;
      w.selector_id = selector_id;
      w.note = item.note.empty() ? to_string(item.tag) : item.note;
      acc.consider(*v, std::move(w));
    }
  }

  ConstantEstimate est;
  est.name = name;
  est.direction = BoundDirection::LowerBound;
  est.tau = (canonical_name(name) == "K_ws" || canonical_name(name) == "K_wag" ||
             canonical_name(name) == "K_bsg" || canonical_name(name) == "K_bag")
                ? tau
                : -1.0;
  est.corpus_descriptor = corpus.spec.to_string() + ";seed=" + std::to_string(corpus.seed);
  est.skipped_ratios = acc.skipped;
  if (acc.top.empty()) {
    // every ratio had a vanishing denominator; report the trivial floor
    est.value = 1.0;
    est.witness.note = "trivial floor (all ratios skipped)";
    return est;
  }
  double best_value = -std::numeric_limits<double>::infinity();
  Witness best_witness;
  for (auto& cand : acc.top) {
    double v = cand.value;
    Witness w = cand.witness;
    hill_climb(sys, name, w, v, refine);
    if (v > best_value) {
      best_value = v;
      best_witness = std::move(w);
    }
  }
  est.value = best_value;
  est.witness = std::move(best_witness);
  return est;
}

}  // namespace

std::string to_string(BoundDirection d) {
  return d == BoundDirection::LowerBound ? "lower-bound" : "constructive-upper-bound";
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::NotCheckable: return "NOT-CHECKABLE";
  }
  return "?";
}

std::pair<ConstantEstimate, ConstantEstimate> estimate_quasi_greedy(const MinimalSystem& sys,
                                                                    const Corpus& corpus,
                                                                    const RefineOptions& refine) {
  return {reduce_over_corpus(sys, corpus, "K_1q", 0, -1.0, "", refine),
          reduce_over_corpus(sys, corpus, "K_2q", 0, -1.0, "", refine)};
}

ConstantEstimate estimate_almost_greedy(const MinimalSystem& sys, const Corpus& corpus,
                                        const RefineOptions& refine) {
  return reduce_over_corpus(sys, corpus, "K_a", 0, -1.0, "", refine);
}

ConstantEstimate estimate_semi_greedy(const MinimalSystem& sys, const Corpus& corpus,
                                      const RefineOptions& refine) {
  return reduce_over_corpus(sys, corpus, "K_s", 1, -1.0, "", refine);
}

ConstantEstimate estimate_greedy_constant(const MinimalSystem& sys, const Corpus& corpus,
                                          const RefineOptions& refine) {
  return reduce_over_corpus(sys, corpus, "K_g", 0, -1.0, "", refine);
}

std::pair<ConstantEstimate, ConstantEstimate> estimate_weak_constants(const MinimalSystem& sys,
                                                                      const Corpus& corpus,
                                                                      double tau,
                                                                      const RefineOptions& refine) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("estimate_weak_constants: tau in (0,1]");
  return {reduce_over_corpus(sys, corpus, "K_ws", 1, tau, "", refine),
          reduce_over_corpus(sys, corpus, "K_wag", 0, tau, "", refine)};
}

std::pair<ConstantEstimate, ConstantEstimate> estimate_branch_constants(
    const MinimalSystem& sys, const Corpus& corpus, double tau, const BranchSelector& sel,
    const RefineOptions& refine) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("estimate_branch_constants: tau in (0,1]");
  find_branch_selector(sel.id);  // must be registered
  return {reduce_over_corpus(sys, corpus, "K_bsg", 1, tau, sel.id, refine),
          reduce_over_corpus(sys, corpus, "K_bag", 0, tau, sel.id, refine)};
}

namespace {

struct SideTable {
  // per cardinality: extreme signed-sum norms and their witnesses
  std::vector<double> max_norm, min_norm;
  std::vector<std::vector<int>> max_set, min_set;
  std::vector<std::vector<double>> max_scalars, min_scalars;

  explicit SideTable(int max_card)
      : max_norm(max_card + 1, -std::numeric_limits<double>::infinity()),
        min_norm(max_card + 1, std::numeric_limits<double>::infinity()),
        max_set(max_card + 1),
        min_set(max_card + 1),
        max_scalars(max_card + 1),
        min_scalars(max_card + 1) {}

  void consider(int card, double v, const std::vector<int>& s, const std::vector<double>& sc) {
    if (v > max_norm[card]) {
      max_norm[card] = v;
      max_set[card] = s;
      max_scalars[card] = sc;
    }
    if (v < min_norm[card]) {
      min_norm[card] = v;
      min_set[card] = s;
      min_scalars[card] = sc;
    }
  }
};

ConstantEstimate pair_off(const std::string& name, const SideTable& num_side,
                          const SideTable& den_side, int max_card,
                          const std::string& descriptor) {
  ConstantEstimate est;
  est.name = name;
  est.direction = BoundDirection::LowerBound;
  est.corpus_descriptor = descriptor;
  est.value = -std::numeric_limits<double>::infinity();
  for (int a = 1; a <= max_card; ++a) {
    for (int b = a; b <= max_card; ++b) {
      if (!std::isfinite(num_side.max_norm[a]) || !std::isfinite(den_side.min_norm[b])) continue;
      if (den_side.min_norm[b] <= 0.0) continue;
      double v = num_side.max_norm[a] / den_side.min_norm[b];
      if (v > est.value) {
        est.value = v;
        est.witness.set_a = num_side.max_set[a];
        est.witness.scalars_a = num_side.max_scalars[a];
        est.witness.set_b = den_side.min_set[b];
        est.witness.scalars_b = den_side.min_scalars[b];
      }
    }
  }
  return est;
}

}  // namespace

DemocracyEstimates estimate_democracy_family(const MinimalSystem& sys, int max_card,
                                             std::uint64_t seed, int amp_samples) {
  const int n = sys.size();
  if (max_card < 1 || max_card > n)
    throw std::invalid_argument("estimate_democracy_family: max_card out of range");
  std::uint64_t signed_total = 0;
  for (int k = 1; k <= max_card; ++k) signed_total += binomial(n, k) << k;
  if (signed_total > kEnumerationCap)
    throw EnumerationCapError("estimate_democracy_family: signed subset count exceeds cap");

  SideTable plain(max_card), sgn(max_card), hd_num(max_card), hd_den(max_card);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  static const double kNumAmps[] = {1.0, 0.5, 0.25};
  static const double kDenAmps[] = {1.0, 2.0, 4.0};

  std::vector<double> scal;
  for (int card = 1; card <= max_card; ++card) {
    for_each_subset(n, card, [&](const std::vector<int>& s) {
      // all-ones
      CoeffVec c(n, 0.0);
      for (int i : s) c[i] = 1.0;
      scal.assign(card, 1.0);
      double v = coeff_norm(sys, c);
      plain.consider(card, v, s, scal);
      // exhaustive sign patterns
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << card); ++mask) {
        for (int j = 0; j < card; ++j) {
          double sv = (mask >> j) & 1 ? -1.0 : 1.0;
          c[s[j]] = sv;
          scal[j] = sv;
        }
        double vs = mask == 0 ? v : coeff_norm(sys, c);
        sgn.consider(card, vs, s, scal);
        hd_num.consider(card, vs, s, scal);
        hd_den.consider(card, vs, s, scal);
      }
      // sampled amplitude grids, numerator amplitudes <= 1 <= denominator amplitudes
      for (int t = 0; t < amp_samples; ++t) {
        for (int j = 0; j < card; ++j) {
          double amp = kNumAmps[rng.uniform_int(0, 2)];
          scal[j] = rng.sign() * amp;
          c[s[j]] = scal[j];
        }
        hd_num.consider(card, coeff_norm(sys, c), s, scal);
        for (int j = 0; j < card; ++j) {
          double amp = kDenAmps[rng.uniform_int(0, 2)];
          scal[j] = rng.sign() * amp;
          c[s[j]] = scal[j];
        }
        hd_den.consider(card, coeff_norm(sys, c), s, scal);
      }
      for (int i : s) c[i] = 0.0;
    });
  }

  char desc[128];
  std::snprintf(desc, sizeof(desc), "democracy:max_card=%d,amp_samples=%d,seed=%llu", max_card,
                amp_samples, static_cast<unsigned long long>(seed));
  // the amplitude grids extend the sign search, so K_d <= K_sd <= K_hd by inclusion
  return DemocracyEstimates{pair_off("K_d", plain, plain, max_card, desc),
                            pair_off("K_sd", sgn, sgn, max_card, desc),
                            pair_off("K_hd", hd_num, hd_den, max_card, desc)};
}

double reevaluate_witness(const MinimalSystem& sys, const ConstantEstimate& est) {
  const std::string key = canonical_name(est.name);
  if (key == "K_d" || key == "K_sd" || key == "K_hd") {
    const Witness& w = est.witness;
    CoeffVec a(sys.size(), 0.0), b(sys.size(), 0.0);
    for (size_t i = 0; i < w.set_a.size(); ++i) a[w.set_a[i]] = w.scalars_a[i];
    for (size_t i = 0; i < w.set_b.size(); ++i) b[w.set_b[i]] = w.scalars_b[i];
    return coeff_norm(sys, a) / coeff_norm(sys, b);
  }
  auto v = constant_ratio(sys, est.name, est.witness.x, est.witness.m, est.witness.tau,
                          est.witness.selector_id);
  if (!v) throw std::runtime_error("reevaluate_witness: witness denominator vanished");
  return *v;
}

namespace {

const ConstantEstimate* find_lower(const std::vector<ConstantEstimate>& ests,
                                   const std::string& name, double tau = -1.0) {
  for (const auto& e : ests) {
    if (e.name != name) continue;
    if (e.direction != BoundDirection::LowerBound) continue;
    if (tau >= 0.0 && std::fabs(e.tau - tau) > 1e-12) continue;
    return &e;
  }
  return nullptr;
}

const Known* find_upper(const std::vector<Known>& knowns, const std::string& name,
                        double tau = -1.0) {
  for (const auto& k : knowns) {
    if (k.name != name) continue;
    if (k.direction != BoundDirection::ConstructiveUpperBound) continue;
    if (tau >= 0.0 && std::fabs(k.tau - tau) > 1e-12) continue;
    return &k;
  }
  return nullptr;
}

InequalityCheck simple_check(const std::string& id, const std::string& statement,
                             const ConstantEstimate* lhs, std::optional<double> rhs,
                             const std::string& missing) {
  InequalityCheck c;
  c.id = id;
  c.statement = statement;
  if (!lhs || !rhs) {
    c.status = CheckStatus::NotCheckable;
    c.detail = "missing " + missing;
    return c;
  }
  c.lhs = lhs->value;
  c.rhs = *rhs;
  c.status = c.lhs <= c.rhs + 1e-9 ? CheckStatus::Pass : CheckStatus::Fail;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "lhs=%.12g (lower est.) rhs=%.12g (from knowns)", c.lhs, c.rhs);
  c.detail = buf;
  return c;
}

}  // namespace

std::vector<InequalityCheck> check_inequalities(const MinimalSystem& sys,
                                                const std::vector<ConstantEstimate>& estimates,
                                                const std::vector<Known>& knowns) {
  std::vector<InequalityCheck> out;

  // almost greedy dominates the second quasi-greedy and democracy constants
  {
    const Known* ka = find_upper(knowns, "K_a");
    out.push_back(simple_check(
        "T2.2a.K2q", "K_2q <= K_a", find_lower(estimates, "K_2q"),
        ka ? std::optional<double>(ka->value) : std::nullopt, "K_2q estimate or K_a upper bound"));
    out.push_back(simple_check(
        "T2.2a.Kd", "K_d <= K_a", find_lower(estimates, "K_d"),
        ka ? std::optional<double>(ka->value) : std::nullopt, "K_d estimate or K_a upper bound"));
  }
  // almost greedy from quasi-greedy plus democratic
  {
    const Known* kd = find_upper(knowns, "K_d");
    const Known* k1q = find_upper(knowns, "K_1q");
    std::optional<double> rhs;
    if (kd && k1q) rhs = 32.0 * kd->value * std::pow(1.0 + k1q->value, 4.0);
    out.push_back(simple_check("T2.2b", "K_a <= 32 K_d (1+K_1q)^4", find_lower(estimates, "K_a"),
                               rhs, "K_a estimate or K_d/K_1q upper bounds"));
  }
  // weak almost greedy implies hyperdemocratic
  {
    bool emitted = false;
    for (const auto& k : knowns) {
      if (k.name != "K_wag" || k.direction != BoundDirection::ConstructiveUpperBound) continue;
      if (!(k.tau > 0.0)) continue;
      double rhs = k.value * k.value / (k.tau * k.tau);
      char id[64];
      std::snprintf(id, sizeof(id), "P2.3(tau=%g)", k.tau);
      out.push_back(simple_check(id, "K_hd <= M^2 tau^-2", find_lower(estimates, "K_hd"),
                                 std::optional<double>(rhs), "K_hd estimate"));
      emitted = true;
    }
    if (!emitted)
      out.push_back(simple_check("P2.3", "K_hd <= M^2 tau^-2", nullptr, std::nullopt,
                                 "K_wag(tau) upper bound"));
  }
  // seminormalization bound for weak semi-greedy systems
  {
    bool emitted = false;
    for (const auto& k : knowns) {
      if (k.name != "K_ws" || k.direction != BoundDirection::ConstructiveUpperBound) continue;
      if (!(k.tau > 0.0)) continue;
      double lhs = 0.0;
      double inf_term = std::numeric_limits<double>::infinity();
      for (int j = 0; j < sys.size(); ++j) {
        double nb = sys.vec_norm(sys.basis[j]);
        double nd = dual_norm(sys.norm_spec, sys.duals[j]);
        lhs = std::max(lhs, nb);
        inf_term = std::min(inf_term, (1.0 + nd * nb) * nb);
      }
      double rhs = 2.0 * k.value / k.tau * inf_term;
      InequalityCheck c;
      char id[64];
      std::snprintf(id, sizeof(id), "L4.1(tau=%g)", k.tau);
      c.id = id;
      c.statement = "sup_i ||x_i|| <= 2 K tau^-1 inf_j (1+||x_j'|| ||x_j||) ||x_j||";
      c.lhs = lhs;
      c.rhs = rhs;
      c.status = lhs <= rhs + 1e-9 ? CheckStatus::Pass : CheckStatus::Fail;
      char buf[200];
      std::snprintf(buf, sizeof(buf),
                    "lhs=%.12g (exact) rhs=%.12g (K upper + ambient dual norms)", lhs, rhs);
      c.detail = buf;
      out.push_back(c);
      emitted = true;
    }
    if (!emitted)
      out.push_back(simple_check("L4.1",
                                 "sup_i ||x_i|| <= 2 K tau^-1 inf_j (1+||x_j'|| ||x_j||) ||x_j||",
                                 nullptr, std::nullopt, "K_ws(tau) upper bound"));
  }
  // apex extension: constants of the extended system against the base system
  {
    const ConstantEstimate* q2 = find_lower(estimates, "K_1q(B2)");
    const ConstantEstimate* sd2 = find_lower(estimates, "K_sd(B2)");
    if (q2 || sd2) {
      const Known* q1 = find_upper(knowns, "K_1q(B1)");
      const Known* sd1 = find_upper(knowns, "K_sd(B1)");
      out.push_back(simple_check("L4.6.K1q", "K_1q(B2) <= 2 K_1q(B1) + 1", q2,
                                 q1 ? std::optional<double>(2.0 * q1->value + 1.0) : std::nullopt,
                                 "K_1q(B1) upper bound"));
      out.push_back(simple_check("L4.6.Ksd", "K_sd(B2) <= 4 K_sd(B1)", sd2,
                                 sd1 ? std::optional<double>(4.0 * sd1->value) : std::nullopt,
                                 "K_sd(B1) upper bound"));
    }
  }
  // finite-dimensional second quasi-greedy bound
  {
    bool emitted = false;
    const Known* kb_known = find_upper(knowns, "K_b");
    double kb = kb_known ? kb_known->value
                         : basis_constant_bounds(sys, std::vector<CoeffVec>{}).second;
    for (const auto& k : knowns) {
      if (k.name != "K_ws" || k.direction != BoundDirection::ConstructiveUpperBound) continue;
      if (!(k.tau > 0.0)) continue;
      double rhs = 5.0 * kb * kb * k.value + 6.0 * kb * kb * kb * k.value * k.value / (k.tau * k.tau);
      char id[64];
      std::snprintf(id, sizeof(id), "T5.5(tau=%g)", k.tau);
      out.push_back(simple_check(id, "K_2q <= 5 K_b^2 K_ws + 6 K_b^3 K_ws^2 tau^-2",
                                 find_lower(estimates, "K_2q"), std::optional<double>(rhs),
                                 "K_2q estimate"));
      emitted = true;
    }
    if (!emitted)
      out.push_back(simple_check("T5.5", "K_2q <= 5 K_b^2 K_ws + 6 K_b^3 K_ws^2 tau^-2", nullptr,
                                 std::nullopt, "K_ws(tau) upper bound"));
  }
  return out;
}

}  // namespace greedylab
