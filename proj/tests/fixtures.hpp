#pragma once

#include <vector>

#include "brwsim/cluster_law.hpp"

namespace brwsim::testing {

// delta_0 + delta_1: two children at fixed offsets, no randomness at all.
inline ClusterLaw binary_lattice() { return ClusterLaw::deterministic({0.0, 1.0}); }

// Same intensity 1 + e^beta as binary_lattice, but with random sizes 1 or 3
// and fair coin shifts, so sigma^2 = 1/2 > 0.
inline ClusterLaw coin_cluster() {
  return ClusterLaw::count_and_shift(FinitePmf::from_pairs({{1.0, 0.5}, {3.0, 0.5}}),
                                     FinitePmf::from_pairs({{0.0, 0.5}, {1.0, 0.5}}));
}

inline ClusterLaw spread_cluster() {
  return ClusterLaw::count_and_shift(FinitePmf::from_pairs({{1.0, 0.3}, {2.0, 0.4}, {4.0, 0.3}}),
                                     FinitePmf::from_pairs({{-1.0, 0.25}, {0.5, 0.5}, {2.0, 0.25}}));
}

inline std::vector<ClusterLaw> builtin_laws() {
  return {binary_lattice(), coin_cluster(), spread_cluster(), ClusterLaw::bst_split(),
          ClusterLaw::rrt_split(), ClusterLaw::deterministic({-0.7, 0.2, 1.3})};
}

}  // namespace brwsim::testing
