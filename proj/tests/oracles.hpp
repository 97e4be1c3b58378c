#pragma once

// Independent reference computations used only by the tests. Each one is a
// brute-force enumeration or a textbook closed form, never the library code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace brwsim::oracle {

// Comparisons made by Quicksort (first element as pivot) on one permutation.
inline std::uint64_t quicksort_comparisons(const std::vector<int>& a) {
  if (a.size() <= 1) return 0;
  std::vector<int> lo, hi;
  for (std::size_t i = 1; i < a.size(); ++i) (a[i] < a[0] ? lo : hi).push_back(a[i]);
  return a.size() - 1 + quicksort_comparisons(lo) + quicksort_comparisons(hi);
}

// E K_n averaged over all n! permutations.
inline double quicksort_mean_bruteforce(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  double total = 0.0, count = 0.0;
  do {
    total += static_cast<double>(quicksort_comparisons(p));
    count += 1.0;
  } while (std::next_permutation(p.begin(), p.end()));
  return total / count;
}

// Var K_n = 7n^2 - 4(n+1)^2 H_n^(2) - 2(n+1) H_n + 13n.
inline double quicksort_variance(std::size_t n) {
  double h1 = 0.0, h2 = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    h1 += 1.0 / static_cast<double>(k);
    h2 += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  }
  const double nd = static_cast<double>(n);
  return 7.0 * nd * nd - 4.0 * (nd + 1) * (nd + 1) * h2 - 2.0 * (nd + 1) * h1 + 13.0 * nd;
}

struct Moments {
  double mean = 0;
  double variance = 0;
};

// EPL over every equally likely sequence of external-node choices.
inline Moments bst_epl_enumeration(int n) {
  double s1 = 0, s2 = 0, weight = 0;
  std::function<void(std::vector<int>&, int, int)> rec = [&](std::vector<int>& ext, int k,
                                                            int epl) {
    if (k == n) {
      s1 += epl;
      s2 += static_cast<double>(epl) * epl;
      weight += 1;
      return;
    }
    for (std::size_t i = 0; i < ext.size(); ++i) {
      const int d = ext[i];
      ext[i] = d + 1;
      ext.push_back(d + 1);
      rec(ext, k + 1, epl + d + 2);
      ext.pop_back();
      ext[i] = d;
    }
  };
  std::vector<int> ext{0};
  rec(ext, 0, 0);
  const double mean = s1 / weight;
  return {mean, s2 / weight - mean * mean};
}

inline Moments rrt_ipl_enumeration(int n) {
  double s1 = 0, s2 = 0, weight = 0;
  std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& depth, int ipl) {
    if (static_cast<int>(depth.size()) == n) {
      s1 += ipl;
      s2 += static_cast<double>(ipl) * ipl;
      weight += 1;
      return;
    }
    const std::size_t size = depth.size();
    for (std::size_t i = 0; i < size; ++i) {
      depth.push_back(depth[i] + 1);
      rec(depth, ipl + depth.back());
      depth.pop_back();
    }
  };
  std::vector<int> depth{0};
  rec(depth, 0);
  const double mean = s1 / weight;
  return {mean, s2 / weight - mean * mean};
}

// Law of B_n over all 2^n colour sequences, entry k = P(B_n = b + k c).
inline std::vector<double> polya_sequence_enumeration(int b, int r, int c, int n) {
  std::vector<double> law(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double p = 1.0;
    int black = b, red = r;
    for (int i = 0; i < n; ++i) {
      const double total = black + red;
      if (mask & (1u << i)) {
        p *= black / total;
        black += c;
      } else {
        p *= red / total;
        red += c;
      }
    }
    law[static_cast<std::size_t>((black - b) / c)] += p;
  }
  return law;
}

}  // namespace brwsim::oracle
