// Quivers with potential of A_n type.
//
// Convention used everywhere: an arrow v -> w records dim Ext^1(S_v, S_w) = 1,
// and the Euler pairing on simple classes is chi(e_i, e_j) = a_ji - a_ij.
#pragma once

#include <array>
#include <utility>
#include <vector>

#include "mstab/error.hpp"

namespace mstab {

using KClass = std::vector<long long>;

struct Arrow {
  int src, dst;
  auto operator<=>(const Arrow&) const = default;
};

// Oriented 3-cycle v0 -> v1 -> v2 -> v0, stored with its smallest vertex first.
using Cycle = std::array<int, 3>;

class Quiver {
 public:
  Quiver() = default;
  // Throws ValidationError on loops, 2-cycles, multiple arrows, cycles that are
  // not oriented triangles of arrows, or arrows shared by two cycles.
  Quiver(std::vector<int> vertices, std::vector<Arrow> arrows, std::vector<Cycle> cycles = {});

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<Cycle>& cycles() const { return cycles_; }
  int size() const { return static_cast<int>(vertices_.size()); }

  bool has_vertex(int v) const;
  int index_of(int v) const;  // position in vertices(), throws if absent
  int arrows_between(int from, int to) const;
  bool adjacent(int a, int b) const { return arrows_between(a, b) + arrows_between(b, a) > 0; }
  bool has_cycle(int a, int b, int c) const;  // a -> b -> c -> a in the potential

  // Connected components of the underlying graph, each sorted, ordered by first vertex.
  std::vector<std::vector<int>> components() const;

  bool operator==(const Quiver& o) const = default;

 private:
  std::vector<int> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<Cycle> cycles_;
};

Cycle normalize_cycle(int a, int b, int c);

Quiver make_linear(int n);
Quiver mutate(const Quiver& q, int k);
Quiver restrict_to(const Quiver& q, const std::vector<int>& subset);
Quiver relabel(const Quiver& q, const std::vector<int>& new_labels);  // i-th vertex -> new_labels[i]
bool isomorphic(const Quiver& a, const Quiver& b);

// chi(a, b) with a, b given in the vertex order of q.
long long euler_pairing(const Quiver& q, const KClass& a, const KClass& b);

// A string: an alternating walk of letters; a letter is an arrow traversed
// forwards (inverse = false) or backwards.
struct Letter {
  Arrow arrow;
  bool inverse;
  auto operator<=>(const Letter&) const = default;
};

struct StringObject {
  int start;  // first vertex of the walk
  std::vector<Letter> walk;
  KClass dimension_vector;  // in the vertex order of the quiver
};

// All strings up to inversion, trivial ones included. Aborts with a
// ValidationError after 10*n^2 strings.
std::vector<StringObject> enumerate_strings(const Quiver& q);

}  // namespace mstab
