#pragma once

#include <cstdint>
#include <vector>

#include "greedylab/errors.hpp"

namespace greedylab {

inline constexpr std::uint64_t kEnumerationCap = 1000000;

/// C(n, k), saturating at 2^63 to avoid overflow for nonsense inputs.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (r > (std::uint64_t{1} << 63) / num) return std::uint64_t{1} << 63;
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

/// Visits every size-k subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline void require_enumerable(int n, int k, const char* where) {
  if (binomial(n, k) > kEnumerationCap)
    throw EnumerationCapError(std::string(where) + ": subset count exceeds cap");
}

}  // namespace greedylab
