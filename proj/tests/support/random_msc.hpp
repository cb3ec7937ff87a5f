// Random multi-scale data for property tests.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "mstab/multiscale.hpp"

namespace mstab::testing {

inline Heart random_heart(int n, int depth, std::mt19937& rng) {
  Heart h = standard_heart(n);
  std::uniform_int_distribution<int> pick(1, n);
  std::bernoulli_distribution fwd(0.5);
  for (int k = 0; k < depth; ++k) {
    int s = pick(rng);
    h = fwd(rng) ? forward_tilt(h, s) : backward_tilt(h, s);
  }
  return h;
}

// A Gaussian rational in the semi-closed upper half-plane with small
// numerators and denominators.
inline CNum random_upper(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), pos(1, 6);
  if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) return CNum(Q(-pos(rng), den(rng)), Q(0));
  return CNum(Q(num(rng), den(rng)), Q(pos(rng), den(rng)));
}

// Nested proper subsets with depth <= max_depth; retries until validate_msc
// accepts.
inline MultiScaleStab random_msc(int n, int max_depth, std::mt19937& rng, int heart_depth = 3) {
  while (true) {
    Heart h = random_heart(n, heart_depth, rng);
    std::vector<std::vector<int>> chain{h.labels()};
    int depth = std::uniform_int_distribution<int>(0, max_depth)(rng);
    for (int i = 0; i < depth; ++i) {
      std::vector<int> prev = chain.back(), next;
      for (int l : prev)
        if (std::bernoulli_distribution(0.5)(rng)) next.push_back(l);
      if (next.empty() || next.size() == prev.size()) break;
      chain.push_back(next);
    }
    std::vector<CentralCharge> zs;
    for (size_t i = 0; i < chain.size(); ++i) {
      CentralCharge z;
      for (int l : chain[i]) {
        bool deeper = i + 1 < chain.size() &&
                      std::find(chain[i + 1].begin(), chain[i + 1].end(), l) != chain[i + 1].end();
        z[l] = deeper ? CNum(0) : random_upper(rng);
      }
      zs.push_back(z);
    }
    try {
      return validate_msc(h, zs);
    } catch (const ValidationError&) {
    }
  }
}

}  // namespace mstab::testing
