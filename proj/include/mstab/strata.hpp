// Enhanced level graphs for the genus-zero strata of quadratic differentials
// with n+1 simple zeros and one pole, and their combinatorics.
#pragma once

#include <string>
#include <vector>

#include "mstab/multiscale.hpp"

namespace mstab {

struct GraphVertex {
  int level = 0;           // <= 0
  std::vector<int> zeros;  // labels of the simple zeros on this vertex
  bool pole = false;
  int parent = -1;         // upper neighbour; -1 for the top vertex
};

struct GraphEdge {
  int upper, lower;
  int kappa;
};

// A tree hanging from the vertex carrying the pole. Edges point from a vertex
// to its parent; enhancements are forced by the degree count at each vertex.
class EnhancedLevelGraph {
 public:
  EnhancedLevelGraph() = default;
  // Computes the enhancements and checks every invariant.
  EnhancedLevelGraph(int n, std::vector<GraphVertex> vertices);

  int n() const { return n_; }
  int depth() const;  // number of levels below zero
  int pole_order() const { return -(n_ + 5); }
  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  std::vector<GraphEdge> edges() const;
  int root() const;
  // Marked zeros in the subtree of v, v included.
  int zeros_below(int v) const;
  // Orders at the marked points and edge ends of v; sums to -4.
  std::vector<int> vertex_orders(int v) const;

  // Canonical text form; the unlabeled one forgets which zeros sit where.
  std::string canonical(bool labeled = true) const;
  std::string to_dot() const;

 private:
  std::string canonical_at(int v, bool labeled) const;
  int n_ = 0;
  std::vector<GraphVertex> vertices_;
};

EnhancedLevelGraph smooth_graph(int n);

// All graphs with 1 <= L <= max_levels levels below zero, sorted by canonical
// form; labeled keeps the zero labels, unlabeled lists one graph per class.
std::vector<EnhancedLevelGraph> enumerate_graphs(int n, int max_levels, bool labeled = true);

// Removes the level passages in I (passage p lies between levels -(p-1) and
// -p) and contracts the edges that become horizontal.
EnhancedLevelGraph undegenerate(const EnhancedLevelGraph& g, const std::vector<int>& passages);

struct PosetRelation {
  int lower, upper;            // indices: lower degenerates to upper's closure
  std::vector<int> passages;   // upper = undegenerate(lower, passages)
};
// Relations between the given graphs, matched by canonical form (labeled or
// not, matching how the list was produced).
std::vector<PosetRelation> adjacency_poset(const std::vector<EnhancedLevelGraph>& graphs, bool labeled = true);

struct CoverVertex {
  int base;
  int sheet;  // 0 or 1; a single preimage has sheet 0
  int genus;
  std::vector<int> orders;  // orders of the abelian differential
};
struct CoverEdge {
  int base_upper, base_lower;
  int kappa_hat;
  int upper, lower;  // indices into the cover vertices
};
struct DoubleCover {
  std::vector<CoverVertex> vertices;
  std::vector<CoverEdge> edges;
};
DoubleCover double_cover(const EnhancedLevelGraph& g);

long prong_count(const EnhancedLevelGraph& g);

// Component sizes of the simples vanishing at each level, read off the graph:
// for every passage the subtrees hanging across it.
Rho graph_rho(const EnhancedLevelGraph& g);

EnhancedLevelGraph from_msc(const MultiScaleStab& m);

// All types (n_1 <= ... <= n_J) with sum (n_j + 1) <= n + 1, equality only
// for J >= 2.
std::vector<std::vector<int>> admissible_types(int n);

// Counts per level and type, plus the codimension-two incidences, as text.
std::string census_report(int n, int max_levels);

}  // namespace mstab
