#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "mstab/strata.hpp"

using namespace mstab;

namespace {

std::map<Rho, int> count_by_rho(const std::vector<EnhancedLevelGraph>& gs) {
  std::map<Rho, int> out;
  for (auto& g : gs) out[graph_rho(g)]++;
  return out;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// The A2 boundary graph: zeros 1, 2 collide below the pole vertex.
EnhancedLevelGraph a2_boundary() {
  return EnhancedLevelGraph(2, {{0, {3}, true, -1}, {-1, {1, 2}, false, 0}});
}

}  // namespace

TEST_CASE("smooth graph and enhancements") {
  EnhancedLevelGraph s = smooth_graph(3);
  CHECK(s.depth() == 0);
  CHECK(s.edges().empty());
  CHECK(s.pole_order() == -8);
  EnhancedLevelGraph b = a2_boundary();
  REQUIRE(b.edges().size() == 1);
  CHECK(b.edges()[0].kappa == 4);
  for (int v = 0; v < 2; ++v) {
    auto o = b.vertex_orders(v);
    long sum = 0;
    for (int x : o) sum += x;
    CHECK(sum == -4);
  }
  CHECK(b.zeros_below(1) == 2);
  CHECK(b.zeros_below(0) == 3);
}

TEST_CASE("invalid graphs are rejected") {
  // a lower vertex with a single zero is unstable
  CHECK_THROWS_AS(EnhancedLevelGraph(2, {{0, {2, 3}, true, -1}, {-1, {1}, false, 0}}), ValidationError);
  // missing zero label
  CHECK_THROWS_AS(EnhancedLevelGraph(2, {{0, {}, true, -1}, {-1, {1, 2}, false, 0}}), ValidationError);
  // level gap
  CHECK_THROWS_AS(EnhancedLevelGraph(2, {{0, {3}, true, -1}, {-2, {1, 2}, false, 0}}), ValidationError);
}

TEST_CASE("boundary counts for A2 and A3") {
  CHECK(enumerate_graphs(2, 1, false).size() == 1);
  CHECK(enumerate_graphs(2, 1, true).size() == 3);
  auto l1 = enumerate_graphs(3, 1, true);
  auto by = count_by_rho(l1);
  CHECK(by.size() == 3);
  CHECK(by[Rho{{2}}] == 4);
  CHECK(by[Rho{{1}}] == 6);
  CHECK(by[Rho{{1, 1}}] == 3);
  CHECK(enumerate_graphs(3, 1, false).size() == 3);
}

TEST_CASE("three-level A3 graphs") {
  auto all = enumerate_graphs(3, 2, true);
  int chains = 0, cherries = 0;
  for (auto& g : all) {
    if (g.depth() != 2) continue;
    // a chain has one vertex per level; a slanted cherry has two lower vertices
    // on different levels hanging from the top
    int children_of_top = 0;
    for (auto& v : g.vertices()) children_of_top += v.parent == g.root();
    (children_of_top == 1 ? chains : cherries)++;
    CHECK(g.vertices().size() == 3);
  }
  CHECK(cherries == 6);
  CHECK(chains == 12);
}

TEST_CASE("undegeneration") {
  CHECK(undegenerate(a2_boundary(), {1}).canonical() == smooth_graph(2).canonical());
  for (auto& g : enumerate_graphs(3, 2, true)) {
    if (g.depth() != 2) continue;
    std::string both = undegenerate(g, {1, 2}).canonical();
    CHECK(undegenerate(undegenerate(g, {2}), {1}).canonical() == both);
    CHECK(undegenerate(undegenerate(g, {1}), {1}).canonical() == both);
    CHECK(undegenerate(g, {2}).depth() == 1);
    bool cherry = std::count_if(g.vertices().begin(), g.vertices().end(),
                                [&](const GraphVertex& v) { return v.parent == g.root(); }) == 2;
    if (cherry) {
      // removing the lower passage puts both lower vertices on one level
      CHECK(graph_rho(undegenerate(g, {2})) == Rho{{1, 1}});
      CHECK(graph_rho(undegenerate(g, {1})) == Rho{{1}});
    }
  }
  CHECK_THROWS(undegenerate(a2_boundary(), {2}));
}

TEST_CASE("double covers") {
  DoubleCover c = double_cover(a2_boundary());
  REQUIRE(c.edges.size() == 2);
  for (auto& e : c.edges) CHECK(e.kappa_hat == 2);
  int bottoms = 0;
  for (auto& v : c.vertices)
    if (v.base == 1) {
      ++bottoms;
      CHECK(v.genus == 0);
      CHECK(sorted(v.orders) == std::vector<int>{-3, -3, 2, 2});
    }
  CHECK(bottoms == 1);

  EnhancedLevelGraph triple(3, {{0, {4}, true, -1}, {-1, {1, 2, 3}, false, 0}});
  CHECK(triple.edges()[0].kappa == 5);
  DoubleCover d = double_cover(triple);
  REQUIRE(d.edges.size() == 1);
  CHECK(d.edges[0].kappa_hat == 5);
  for (auto& v : d.vertices)
    if (v.base == 1) {
      CHECK(v.genus == 1);
      CHECK(sorted(v.orders) == std::vector<int>{-6, 2, 2, 2});
    }
}

TEST_CASE("prongs and types") {
  EnhancedLevelGraph triple(3, {{0, {4}, true, -1}, {-1, {1, 2, 3}, false, 0}});
  CHECK(prong_count(triple) == 5);
  CHECK(prong_count(a2_boundary()) == 4);
  EnhancedLevelGraph cherry(3, {{0, {}, true, -1}, {-1, {1, 2}, false, 0}, {-1, {3, 4}, false, 0}});
  CHECK(prong_count(cherry) == 16);
  CHECK(graph_rho(cherry) == Rho{{1, 1}});
  for (int n = 2; n <= 6; ++n) CHECK(admissible_types(n).size() == enumerate_graphs(n, 1, false).size());
}

TEST_CASE("graphs of multi-scale data") {
  Heart top = forward_tilt(standard_heart(2), 2);
  auto m = validate_msc(top, {{{2, CNum(-1)}, {1, CNum(0)}}, {{1, CNum::i()}}});
  EnhancedLevelGraph g = from_msc(m);
  CHECK(g.canonical(false) == a2_boundary().canonical(false));

  auto honest_m = validate_msc(standard_heart(3), {{{1, CNum::i()}, {2, CNum::i()}, {3, CNum::i()}}});
  CHECK(from_msc(honest_m).depth() == 0);

  auto ch = validate_msc(standard_heart(3),
                         {{{1, CNum(0)}, {2, CNum::i()}, {3, CNum(0)}}, {{1, CNum::i()}, {3, CNum(-1)}}});
  EnhancedLevelGraph cg = from_msc(ch);
  CHECK(graph_rho(cg) == Rho{{1, 1}});
  EnhancedLevelGraph cherry(3, {{0, {}, true, -1}, {-1, {1, 2}, false, 0}, {-1, {3, 4}, false, 0}});
  CHECK(cg.canonical(false) == cherry.canonical(false));
}

TEST_CASE("poset of A3 strata") {
  auto gs = enumerate_graphs(3, 2, false);
  auto rel = adjacency_poset(gs, false);
  for (auto& r : rel) CHECK(undegenerate(gs[r.lower], r.passages).canonical(false) == gs[r.upper].canonical(false));
  CHECK_FALSE(rel.empty());
}

TEST_CASE("A3 census matches the golden file") {
  std::ifstream in(std::string(MSTAB_GOLDEN_DIR) + "/census_n3.txt");
  REQUIRE(in.good());
  std::stringstream want;
  want << in.rdbuf();
  CHECK(census_report(3, 3) == want.str());
}
