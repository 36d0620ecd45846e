#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace elrc {

/// C(n, k), saturating at `cap`.
[[nodiscard]] inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k,
                                            std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  // C(n, i) is increasing for i <= n/2, so saturating early never undercounts.
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    acc = acc * (n - i) / (i + 1);
    if (acc > cap) {
      return cap;
    }
  }
  return static_cast<std::uint64_t>(acc);
}

/// Σ_{s=lo..hi} C(n, s), saturating at `cap`.
[[nodiscard]] inline std::uint64_t binomial_sum(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                                                std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
  std::uint64_t total = 0;
  for (std::uint64_t s = lo; s <= hi; ++s) {
    const std::uint64_t c = binomial(n, s, cap);
    if (c >= cap - total) {
      return cap;
    }
    total += c;
  }
  return total;
}

/// Visits the size-s subsets of {offset, ..., n-1} in lexicographic order.
/// `fn` receives the sorted members and returns false to stop early.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t s, Fn&& fn, std::size_t offset = 0) {
  if (offset > n || s > n - offset) {
    return true;
  }
  std::vector<std::size_t> c(s);
  std::iota(c.begin(), c.end(), offset);
  while (true) {
    if (!fn(std::span<const std::size_t>(c))) {
      return false;
    }
    std::size_t i = s;
    while (i > 0 && c[i - 1] == n - s + (i - 1)) {
      --i;
    }
    if (i == 0) {
      return true;
    }
    ++c[i - 1];
    for (std::size_t j = i; j < s; ++j) {
      c[j] = c[j - 1] + 1;
    }
  }
}

/// Same as for_each_combination but restricted to subsets whose smallest member is `first`.
template <typename Fn>
bool for_each_combination_starting_at(std::size_t n, std::size_t s, std::size_t first, Fn&& fn) {
  if (s == 0 || first >= n) {
    return true;
  }
  std::vector<std::size_t> full(s);
  full[0] = first;
  return for_each_combination(
      n, s - 1,
      [&](std::span<const std::size_t> tail) {
        std::copy(tail.begin(), tail.end(), full.begin() + 1);
        return fn(std::span<const std::size_t>(full));
      },
      first + 1);
}

}  // namespace elrc
