// K(D) = Z^n, spherical twists acting on it, and simple twist group data.
#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "mstab/anquiver.hpp"

namespace mstab {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct BraidLetter {
  int index;     // vertex label of the ambient quiver
  int exponent;  // +1 or -1
  bool operator==(const BraidLetter&) const = default;
};
using BraidWord = std::vector<BraidLetter>;

// Matrix of gamma -> gamma - sign * chi(e_i, gamma) e_i on column vectors.
IntMatrix twist_matrix(const Quiver& q, int i, int sign);
IntMatrix word_matrix(const Quiver& q, const BraidWord& w);

// Twist along an arbitrary spherical class s (e.g. a simple of a tilted heart):
// gamma -> gamma - sign * chi(s, gamma) s, with chi taken from the ambient quiver.
IntMatrix class_twist_matrix(const Quiver& ambient, const KClass& s, int sign);

BraidWord inverse_word(const BraidWord& w);
BraidWord power_word(const BraidWord& w, int k);

// (tau_{i_1} ... tau_{i_r})^{r+1} for the vertices of interval in path order.
// The vertices must induce a connected path in q.
BraidWord theta_word(const Quiver& q, const std::vector<int>& interval);

// Parses words such as "1 2 -1", "(1 2)^3", "1^-1 (2 3)^-2".
BraidWord parse_braid_word(const std::string& text);

struct ComponentTwist {
  int size;       // n_j
  int kappa;      // n_j + 3
  int kappa_hat;  // (n_j + 3)/2 for odd n_j, n_j + 3 otherwise
  long exponent;  // ell / kappa_hat
  int theta_power;  // c_{i,j} = theta^theta_power: 1 for odd n_j, 2 for even
};

struct LevelTwist {
  std::vector<ComponentTwist> components;
  long ell;
};

struct TwistGroupData {
  std::vector<LevelTwist> levels;
};

using Rho = std::vector<std::vector<int>>;  // per level i >= 1, component sizes

TwistGroupData simple_twist_data(const Rho& rho);

}  // namespace mstab
