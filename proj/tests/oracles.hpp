#pragma once

// Test-only oracles, kept independent of the library's solver paths:
// a staged dense grid search for minimum-norm coefficients and closed
// forms for the unit vector bases.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "greedylab/system.hpp"

namespace greedylab::testing {

inline double grid_eval(const MinimalSystem& sys, const CoeffVec& x, const std::vector<int>& s,
                        const std::vector<double>& z) {
  CoeffVec r(x);
  for (size_t j = 0; j < s.size(); ++j) r[s[j]] -= z[j];
  return coeff_norm(sys, r);
}

namespace detail {

// 1-d minimization of a convex function by interval thirds. The comparison
// f(m1) <= f(m2) keeps a minimizer inside the retained interval even on
// flat pieces, so the value converges for any convex objective.
template <class F>
double ternary_min(F&& f, double lo, double hi, int iters = 200) {
  double best = std::min(f(lo), f(hi));
  for (int i = 0; i < iters; ++i) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    double f1 = f(m1), f2 = f(m2);
    best = std::min({best, f1, f2});
    if (f1 <= f2)
      hi = m2;
    else
      lo = m1;
  }
  return best;
}

}  // namespace detail

/// Minimum of ||x - sum_{j in s} z_j x_j|| over z, for |s| <= 2: a dense
/// coarse grid over [-6,6]^k, a refined dense grid (step 1e-3) around the
/// incumbent, then a nested ternary pass over the full box (exact for the
/// convex objective, flat valleys included). Returns the best value seen.
inline double grid_oracle(const MinimalSystem& sys, const CoeffVec& x, const std::vector<int>& s) {
  const int k = static_cast<int>(s.size());
  if (k == 0) return coeff_norm(sys, x);
  if (k > 2) throw std::invalid_argument("grid_oracle: supports of size <= 2 only");
  const double box = 6.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_z(k, 0.0);
  std::vector<double> z(k);

  auto dense_scan = [&](const std::vector<double>& center, double half, double step) {
    int count = static_cast<int>(std::floor(2.0 * half / step)) + 1;
    if (k == 1) {
      for (int i = 0; i < count; ++i) {
        z[0] = center[0] - half + i * step;
        double v = grid_eval(sys, x, s, z);
        if (v < best) {
          best = v;
          best_z = z;
        }
      }
    } else {
      for (int i = 0; i < count; ++i) {
        z[0] = center[0] - half + i * step;
        for (int j = 0; j < count; ++j) {
          z[1] = center[1] - half + j * step;
          double v = grid_eval(sys, x, s, z);
          if (v < best) {
            best = v;
            best_z = z;
          }
        }
      }
    }
  };

  dense_scan(std::vector<double>(k, 0.0), box, 0.1);
  dense_scan(best_z, 0.3, 1e-3);
  dense_scan(best_z, 3e-3, 1e-5);

  if (k == 1) {
    best = std::min(best, detail::ternary_min(
                              [&](double a) {
                                std::vector<double> p{a};
                                return grid_eval(sys, x, s, p);
                              },
                              -box, box));
  } else {
    best = std::min(best, detail::ternary_min(
                              [&](double a) {
                                return detail::ternary_min(
                                    [&](double b) {
                                      std::vector<double> p{a, b};
                                      return grid_eval(sys, x, s, p);
                                    },
                                    -box, box, 120);
                              },
                              -box, box, 120));
  }
  return best;
}

/// Closed form for the unit vector basis of l1^n: best m-term error is the
/// sum of the n-m smallest moduli.
inline double l1_tail_sum(const CoeffVec& c, int m) {
  std::vector<double> mods;
  mods.reserve(c.size());
  for (double v : c) mods.push_back(std::fabs(v));
  std::sort(mods.begin(), mods.end());
  double s = 0.0;
  for (size_t i = 0; i + m < mods.size(); ++i) s += mods[i];
  return s;
}

}  // namespace greedylab::testing
