#include "greedylab/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "greedylab/rng.hpp"
#include "greedylab/subsets.hpp"

namespace greedylab {

GreedyOrdering greedy_ordering(const CoeffVec& c) {
  GreedyOrdering out;
  out.perm.resize(c.size());
  std::iota(out.perm.begin(), out.perm.end(), 0);
  std::stable_sort(out.perm.begin(), out.perm.end(), [&](int a, int b) {
    double fa = std::fabs(c[a]), fb = std::fabs(c[b]);
    if (fa != fb) return fa > fb;
    return a < b;
  });
  return out;
}

std::vector<int> greedy_set(const CoeffVec& c, int m) {
  if (m < 0 || static_cast<size_t>(m) > c.size())
    throw std::invalid_argument("greedy_set: m out of range");
  auto ord = greedy_ordering(c);
  std::vector<int> s(ord.perm.begin(), ord.perm.begin() + m);
  std::sort(s.begin(), s.end());
  return s;
}

CoeffVec greedy_sum(const CoeffVec& c, int m) {
  if (m < 0 || static_cast<size_t>(m) > c.size())
    throw std::invalid_argument("greedy_sum: m out of range");
  CoeffVec out(c.size(), 0.0);
  auto ord = greedy_ordering(c);
  for (int k = 0; k < m; ++k) out[ord.perm[k]] = c[ord.perm[k]];
  return out;
}

bool is_weak_thresholding_set(const CoeffVec& c, const std::vector<int>& s, double tau) {
  std::vector<char> in(c.size(), 0);
  for (int i : s) {
    if (i < 0 || static_cast<size_t>(i) >= c.size()) return false;
    in[i] = 1;
  }
  double inside_min = std::numeric_limits<double>::infinity();
  double outside_max = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    double f = std::fabs(c[i]);
    if (in[i])
      inside_min = std::min(inside_min, f);
    else
      outside_max = std::max(outside_max, f);
  }
  if (s.empty()) return outside_max == 0.0;
  return inside_min >= tau * outside_max;
}

std::vector<ThresholdingSet> enumerate_weak_sets(const CoeffVec& c, int m, double tau) {
  const int n = static_cast<int>(c.size());
  if (m < 1 || m > n) throw std::invalid_argument("enumerate_weak_sets: m out of range");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("enumerate_weak_sets: tau in (0,1]");
  require_enumerable(n, m, "enumerate_weak_sets");
  std::vector<ThresholdingSet> out;
  for_each_subset(n, m, [&](const std::vector<int>& s) {
    if (is_weak_thresholding_set(c, s, tau)) out.push_back(ThresholdingSet{s, tau});
  });
  return out;  // lexicographic by construction
}

std::vector<int> branch_active_set(const CoeffVec& c, double tau) {
  double mx = 0.0;
  for (double x : c) mx = std::max(mx, std::fabs(x));
  if (mx == 0.0) throw std::invalid_argument("branch_active_set: zero vector");
  std::vector<int> out;
  for (size_t i = 0; i < c.size(); ++i)
    if (std::fabs(c[i]) >= tau * mx) out.push_back(static_cast<int>(i));
  return out;
}

const BranchSelector& default_branch_selector() {
  static const BranchSelector sel{
      "greedy", [](const CoeffVec& c, double) { return greedy_ordering(c).perm[0]; }};
  return sel;
}

const BranchSelector& max_index_branch_selector() {
  static const BranchSelector sel{
      "max-index", [](const CoeffVec& c, double tau) { return branch_active_set(c, tau).back(); }};
  return sel;
}

SelectorCheck validate_branch_selector(const BranchSelector& sel, int n, std::uint64_t seed,
                                       int trials) {
  SelectorCheck out;
  out.in_active_set = out.scale_invariant = out.active_restriction = true;
  Rng rng(seed);
  const double taus[] = {1.0, 0.7, 0.3};
  for (int t = 0; t < trials; ++t) {
    CoeffVec c(n);
    for (auto& x : c) x = rng.normal();
    if (t % 3 == 0) {  // inject ties and zeros
      for (auto& x : c)
        x = std::round(2.0 * x) / 2.0;
      if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) c[0] = 1.0;
    }
    for (double tau : taus) {
      auto active = branch_active_set(c, tau);
      int pick = sel.pick(c, tau);
      if (!std::binary_search(active.begin(), active.end(), pick)) out.in_active_set = false;
      for (int e = -2; e <= 2; ++e) {
        double lambda = rng.sign() * std::pow(10.0, e);
        CoeffVec scaled(c);
        for (auto& x : scaled) x *= lambda;
        if (sel.pick(scaled, tau) != pick) out.scale_invariant = false;
      }
      // perturb strictly below the active threshold; the selection must not move
      double mx = 0.0;
      for (double x : c) mx = std::max(mx, std::fabs(x));
      CoeffVec tweaked(c);
      bool changed = false;
      for (size_t i = 0; i < tweaked.size(); ++i) {
        if (std::fabs(tweaked[i]) < tau * mx) {
          double cap = 0.49 * tau * mx;
          tweaked[i] = std::min(std::fabs(tweaked[i]) * 0.5, cap) * rng.sign();
          changed = true;
        }
      }
      if (changed && branch_active_set(tweaked, tau) == active) {
        if (sel.pick(tweaked, tau) != pick) out.active_restriction = false;
      }
    }
  }
  return out;
}

namespace {
std::map<std::string, BranchSelector>& selector_registry() {
  static std::map<std::string, BranchSelector> reg = {
      {default_branch_selector().id, default_branch_selector()},
      {max_index_branch_selector().id, max_index_branch_selector()},
  };
  return reg;
}
std::mutex& selector_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void register_branch_selector(const BranchSelector& sel, int n, std::uint64_t seed) {
  auto check = validate_branch_selector(sel, n, seed);
  if (!check.ok())
    throw std::invalid_argument("register_branch_selector: '" + sel.id +
                                "' fails the selector property suite");
  std::lock_guard<std::mutex> lock(selector_mutex());
  selector_registry()[sel.id] = sel;
}

const BranchSelector& find_branch_selector(const std::string& id) {
  std::lock_guard<std::mutex> lock(selector_mutex());
  auto it = selector_registry().find(id);
  if (it == selector_registry().end())
    throw std::invalid_argument("find_branch_selector: unknown selector '" + id + "'");
  return it->second;
}

std::vector<int> branch_ordering(const CoeffVec& c, double tau, const BranchSelector& sel) {
  int support = 0;
  for (double x : c)
    if (x != 0.0) ++support;
  if (support == 0) throw std::invalid_argument("branch_ordering: zero vector");
  std::vector<int> order;
  order.reserve(support);
  CoeffVec residual(c);
  for (int step = 0; step < support; ++step) {
    int pick = sel.pick(residual, tau);
    order.push_back(pick);
    residual[pick] = 0.0;
  }
  return order;
}

CoeffVec branch_greedy_sum(const CoeffVec& c, double tau, int m, const BranchSelector& sel) {
  if (m < 0 || static_cast<size_t>(m) > c.size())
    throw std::invalid_argument("branch_greedy_sum: m out of range");
  CoeffVec out(c.size(), 0.0);
  if (m == 0) return out;
  bool all_zero = std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
  if (all_zero) return out;
  auto order = branch_ordering(c, tau, sel);
  int take = std::min<int>(m, static_cast<int>(order.size()));
  for (int k = 0; k < take; ++k) out[order[k]] = c[order[k]];
  return out;
}

}  // namespace greedylab
