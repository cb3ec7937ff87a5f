#include "mstab/strata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mstab {

EnhancedLevelGraph::EnhancedLevelGraph(int n, std::vector<GraphVertex> vertices)
    : n_(n), vertices_(std::move(vertices)) {
  if (n < 1) throw ValidationError("level graphs need n >= 1");
  const int V = static_cast<int>(vertices_.size());
  int roots = 0;
  for (int v = 0; v < V; ++v) {
    const GraphVertex& x = vertices_[v];
    std::sort(vertices_[v].zeros.begin(), vertices_[v].zeros.end());
    if (x.parent < 0) {
      ++roots;
      if (!x.pole || x.level != 0) throw ValidationError("the top vertex must carry the pole at level 0");
      continue;
    }
    if (x.pole) throw ValidationError("the pole must sit on the top vertex");
    if (x.parent >= V) throw ValidationError("parent index out of range");
    if (vertices_[x.parent].level <= x.level)
      throw ValidationError("edge " + std::to_string(x.parent) + "-" + std::to_string(v) + " is not vertical downwards");
  }
  if (roots != 1) throw ValidationError("a level graph has exactly one top vertex");
  for (int v = 0; v < V; ++v) {  // acyclic: the parent chain reaches the root
    int cur = v;
    for (int steps = 0; vertices_[cur].parent >= 0; ++steps) {
      if (steps > V) throw ValidationError("parent pointers contain a cycle");
      cur = vertices_[cur].parent;
    }
  }
  std::vector<int> all;
  for (const auto& x : vertices_) all.insert(all.end(), x.zeros.begin(), x.zeros.end());
  std::sort(all.begin(), all.end());
  std::vector<int> expected(n + 1);
  std::iota(expected.begin(), expected.end(), 1);
  if (all != expected) throw ValidationError("zeros must be labeled 1..n+1, each exactly once");
  std::set<int> levels;
  for (const auto& x : vertices_) levels.insert(x.level);
  if (*levels.begin() != -static_cast<int>(levels.size()) + 1)
    throw ValidationError("occupied levels must be 0, -1, ..., -L without gaps");
  for (int v = 0; v < V; ++v) {
    int children = 0;
    for (const auto& y : vertices_) children += y.parent == v;
    if (static_cast<int>(vertices_[v].zeros.size()) + children + 1 < 3)
      throw ValidationError("vertex " + std::to_string(v) + " is unstable");
    auto o = vertex_orders(v);
    if (std::accumulate(o.begin(), o.end(), 0) != -4)
      throw InternalError("vertex " + std::to_string(v) + " orders do not sum to -4");
  }
}

int EnhancedLevelGraph::depth() const {
  int d = 0;
  for (const auto& x : vertices_) d = std::max(d, -x.level);
  return d;
}

int EnhancedLevelGraph::root() const {
  for (size_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].parent < 0) return static_cast<int>(v);
  throw InternalError("level graph without root");
}

int EnhancedLevelGraph::zeros_below(int v) const {
  int z = static_cast<int>(vertices_[v].zeros.size());
  for (size_t w = 0; w < vertices_.size(); ++w)
    if (vertices_[w].parent == v) z += zeros_below(static_cast<int>(w));
  return z;
}

std::vector<GraphEdge> EnhancedLevelGraph::edges() const {
  std::vector<GraphEdge> out;
  for (size_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].parent >= 0)
      out.push_back({vertices_[v].parent, static_cast<int>(v), zeros_below(static_cast<int>(v)) + 2});
  return out;
}

std::vector<int> EnhancedLevelGraph::vertex_orders(int v) const {
  std::vector<int> o(vertices_[v].zeros.size(), 1);
  if (vertices_[v].pole) o.push_back(pole_order());
  for (const GraphEdge& e : edges()) {
    if (e.upper == v) o.push_back(e.kappa - 2);
    if (e.lower == v) o.push_back(-e.kappa - 2);
  }
  return o;
}

std::string EnhancedLevelGraph::canonical_at(int v, bool labeled) const {
  std::ostringstream os;
  const GraphVertex& x = vertices_[v];
  os << "(" << x.level << ":";
  if (labeled) {
    for (size_t k = 0; k < x.zeros.size(); ++k) os << (k ? "," : "") << x.zeros[k];
  } else {
    os << "z" << x.zeros.size();
  }
  std::vector<std::string> kids;
  for (size_t w = 0; w < vertices_.size(); ++w)
    if (vertices_[w].parent == v) kids.push_back(canonical_at(static_cast<int>(w), labeled));
  std::sort(kids.begin(), kids.end());
  os << "[";
  for (const auto& k : kids) os << k;
  os << "])";
  return os.str();
}

std::string EnhancedLevelGraph::canonical(bool labeled) const { return canonical_at(root(), labeled); }

std::string EnhancedLevelGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph levelgraph {\n  rankdir=TB;\n";
  for (size_t v = 0; v < vertices_.size(); ++v) {
    os << "  v" << v << " [label=\"";
    for (size_t k = 0; k < vertices_[v].zeros.size(); ++k) os << (k ? "," : "") << "z" << vertices_[v].zeros[k];
    if (vertices_[v].pole) os << (vertices_[v].zeros.empty() ? "" : ",") << "p" << pole_order();
    os << "\"];\n";
  }
  for (int l = 0; l >= -depth(); --l) {
    os << "  { rank=same;";
    for (size_t v = 0; v < vertices_.size(); ++v)
      if (vertices_[v].level == l) os << " v" << v << ";";
    os << " }\n";
  }
  for (const GraphEdge& e : edges()) os << "  v" << e.upper << " -> v" << e.lower << " [label=\"" << e.kappa << "\"];\n";
  os << "}\n";
  return os.str();
}

EnhancedLevelGraph smooth_graph(int n) {
  GraphVertex r;
  r.pole = true;
  for (int z = 1; z <= n + 1; ++z) r.zeros.push_back(z);
  return EnhancedLevelGraph(n, {r});
}

namespace {

struct Shape {
  std::vector<int> zeros;  // labels, or placeholders counted only
  std::vector<Shape> children;
};

// Set partitions of items into blocks of size >= 2.
void partitions(const std::vector<int>& items, std::vector<std::vector<int>>& cur,
                std::vector<std::vector<std::vector<int>>>& out) {
  if (items.empty()) {
    out.push_back(cur);
    return;
  }
  int first = items[0];
  std::vector<int> rest(items.begin() + 1, items.end());
  const int m = static_cast<int>(rest.size());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> block{first}, left;
    for (int k = 0; k < m; ++k) (mask >> k & 1 ? block : left).push_back(rest[k]);
    cur.push_back(block);
    partitions(left, cur, out);
    cur.pop_back();
  }
}

std::vector<Shape> labeled_shapes(const std::vector<int>& zs, bool root, std::map<std::vector<int>, std::vector<Shape>>& memo) {
  if (!root) {
    auto it = memo.find(zs);
    if (it != memo.end()) return it->second;
  }
  std::vector<Shape> out;
  const int m = static_cast<int>(zs.size());
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> own, rest;
    for (int k = 0; k < m; ++k) (mask >> k & 1 ? own : rest).push_back(zs[k]);
    std::vector<std::vector<std::vector<int>>> parts;
    std::vector<std::vector<int>> cur;
    partitions(rest, cur, parts);
    for (const auto& p : parts) {
      if (static_cast<int>(own.size() + p.size()) + 1 < 3) continue;
      std::vector<std::vector<Shape>> options;
      for (const auto& block : p) options.push_back(labeled_shapes(block, false, memo));
      // cartesian product
      std::vector<Shape> partial{Shape{own, {}}};
      for (const auto& opt : options) {
        std::vector<Shape> next;
        for (const Shape& s : partial)
          for (const Shape& c : opt) {
            Shape t = s;
            t.children.push_back(c);
            next.push_back(t);
          }
        partial = std::move(next);
      }
      out.insert(out.end(), partial.begin(), partial.end());
    }
  }
  if (!root) memo[zs] = out;
  return out;
}

// Integer partitions of m into parts >= 2, non-increasing.
void int_partitions(int m, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(m, maxpart); p >= 2; --p) {
    cur.push_back(p);
    int_partitions(m - p, p, cur, out);
    cur.pop_back();
  }
}

// Shapes with anonymous zeros (all placeholders 0).
std::vector<Shape> unlabeled_shapes(int m, bool root, std::map<int, std::vector<Shape>>& memo) {
  if (!root) {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
  }
  std::vector<Shape> out;
  for (int own = 0; own <= m; ++own) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    int_partitions(m - own, m - own, cur, parts);
    for (const auto& p : parts) {
      if (own + static_cast<int>(p.size()) + 1 < 3) continue;
      std::vector<Shape> partial{Shape{std::vector<int>(own, 0), {}}};
      std::vector<int> last_index;  // non-decreasing choice among equal sizes
      std::vector<std::pair<Shape, std::vector<int>>> acc{{partial[0], {}}};
      for (size_t k = 0; k < p.size(); ++k) {
        auto opts = unlabeled_shapes(p[k], false, memo);
        std::vector<std::pair<Shape, std::vector<int>>> next;
        for (const auto& [s, idx] : acc) {
          int lo = (k > 0 && p[k] == p[k - 1]) ? idx.back() : 0;
          for (int o = lo; o < static_cast<int>(opts.size()); ++o) {
            Shape t = s;
            t.children.push_back(opts[o]);
            auto ni = idx;
            ni.push_back(o);
            next.push_back({t, ni});
          }
        }
        acc = std::move(next);
      }
      for (auto& [s, idx] : acc) out.push_back(s);
    }
  }
  if (!root) memo[m] = out;
  return out;
}

// Flattens a shape, parents first.
void flatten(const Shape& s, int parent, std::vector<GraphVertex>& out) {
  GraphVertex v;
  v.zeros = s.zeros;
  v.parent = parent;
  v.pole = parent < 0;
  int me = static_cast<int>(out.size());
  out.push_back(v);
  for (const Shape& c : s.children) flatten(c, me, out);
}

void assign_levels(std::vector<GraphVertex>& vs, size_t k, int max_levels, int n, bool labeled,
                   std::map<std::string, EnhancedLevelGraph>& found) {
  if (k == vs.size()) {
    std::set<int> used;
    for (const auto& v : vs) used.insert(v.level);
    int L = -*used.begin();
    if (L < 1 || static_cast<int>(used.size()) != L + 1) return;
    std::vector<GraphVertex> copy = vs;
    if (!labeled) {  // hand out labels in vertex order
      int z = 1;
      for (auto& v : copy)
        for (auto& x : v.zeros) x = z++;
    }
    EnhancedLevelGraph g(n, copy);
    found.emplace(g.canonical(labeled), g);
    return;
  }
  int top = vs[vs[k].parent].level - 1;
  for (int l = top; l >= -max_levels; --l) {
    vs[k].level = l;
    assign_levels(vs, k + 1, max_levels, n, labeled, found);
  }
}

}  // namespace

std::vector<EnhancedLevelGraph> enumerate_graphs(int n, int max_levels, bool labeled) {
  if (n < 1) throw ValidationError("n must be positive");
  std::vector<Shape> shapes;
  if (labeled) {
    std::vector<int> zs(n + 1);
    std::iota(zs.begin(), zs.end(), 1);
    std::map<std::vector<int>, std::vector<Shape>> memo;
    shapes = labeled_shapes(zs, true, memo);
  } else {
    std::map<int, std::vector<Shape>> memo;
    shapes = unlabeled_shapes(n + 1, true, memo);
  }
  std::map<std::string, EnhancedLevelGraph> found;
  for (const Shape& s : shapes) {
    if (s.children.empty()) continue;
    std::vector<GraphVertex> vs;
    flatten(s, -1, vs);
    vs[0].level = 0;
    assign_levels(vs, 1, max_levels, n, labeled, found);
  }
  std::vector<EnhancedLevelGraph> out;
  for (auto& [k, g] : found) out.push_back(g);
  return out;
}

EnhancedLevelGraph undegenerate(const EnhancedLevelGraph& g, const std::vector<int>& passages) {
  const int L = g.depth();
  std::set<int> drop(passages.begin(), passages.end());
  if (drop.empty()) throw UsageError("no level passage given");
  for (int p : drop)
    if (p < 1 || p > L) throw UsageError("level passage " + std::to_string(p) + " out of range");
  auto new_level = [&](int l) {
    int kept = 0;
    for (int p = 1; p <= -l; ++p) kept += !drop.count(p);
    return -kept;
  };
  const auto& vs = g.vertices();
  const int V = static_cast<int>(vs.size());
  // representative of each vertex after contracting horizontal edges
  std::vector<int> rep(V);
  std::function<int(int)> find = [&](int v) {
    int p = vs[v].parent;
    if (p >= 0 && new_level(vs[p].level) == new_level(vs[v].level)) return find(p);
    return v;
  };
  for (int v = 0; v < V; ++v) rep[v] = find(v);
  std::map<int, int> index;
  std::vector<GraphVertex> out;
  for (int v = 0; v < V; ++v)
    if (rep[v] == v) {
      index[v] = static_cast<int>(out.size());
      GraphVertex x;
      x.level = new_level(vs[v].level);
      x.pole = vs[v].pole;
      out.push_back(x);
    }
  for (int v = 0; v < V; ++v) {
    GraphVertex& x = out[index[rep[v]]];
    x.zeros.insert(x.zeros.end(), vs[v].zeros.begin(), vs[v].zeros.end());
    if (rep[v] == v) x.parent = vs[v].parent < 0 ? -1 : index[rep[vs[v].parent]];
  }
  return EnhancedLevelGraph(g.n(), out);
}

std::vector<PosetRelation> adjacency_poset(const std::vector<EnhancedLevelGraph>& graphs, bool labeled) {
  std::map<std::string, int> where;
  for (size_t k = 0; k < graphs.size(); ++k) where.emplace(graphs[k].canonical(labeled), static_cast<int>(k));
  std::vector<PosetRelation> out;
  for (size_t k = 0; k < graphs.size(); ++k) {
    int L = graphs[k].depth();
    for (unsigned mask = 1; mask < (1u << L); ++mask) {
      std::vector<int> I;
      for (int p = 1; p <= L; ++p)
        if (mask >> (p - 1) & 1) I.push_back(p);
      auto it = where.find(undegenerate(graphs[k], I).canonical(labeled));
      if (it != where.end()) out.push_back({static_cast<int>(k), it->second, I});
    }
  }
  return out;
}

DoubleCover double_cover(const EnhancedLevelGraph& g) {
  DoubleCover dc;
  const auto& vs = g.vertices();
  std::vector<std::vector<int>> cover_of(vs.size());
  for (size_t v = 0; v < vs.size(); ++v) {
    auto orders = g.vertex_orders(static_cast<int>(v));
    bool branched = std::any_of(orders.begin(), orders.end(), [](int k) { return k % 2 != 0; });
    if (branched) {
      CoverVertex c{static_cast<int>(v), 0, 0, {}};
      int sum = 0;
      for (int k : orders) {
        if (k % 2 != 0) {
          c.orders.push_back(k + 1);
          sum += k + 1;
        } else {
          c.orders.push_back(k / 2);
          c.orders.push_back(k / 2);
          sum += k;
        }
      }
      c.genus = (sum + 2) / 2;
      cover_of[v].push_back(static_cast<int>(dc.vertices.size()));
      dc.vertices.push_back(c);
    } else {
      for (int sheet = 0; sheet < 2; ++sheet) {
        CoverVertex c{static_cast<int>(v), sheet, 0, {}};
        int sum = 0;
        for (int k : orders) {
          c.orders.push_back(k / 2);
          sum += k / 2;
        }
        c.genus = (sum + 2) / 2;
        cover_of[v].push_back(static_cast<int>(dc.vertices.size()));
        dc.vertices.push_back(c);
      }
    }
  }
  for (const GraphEdge& e : g.edges()) {
    const auto& up = cover_of[e.upper];
    const auto& lo = cover_of[e.lower];
    if (e.kappa % 2 != 0) {
      dc.edges.push_back({e.upper, e.lower, e.kappa, up[0], lo[0]});
    } else {
      for (int k = 0; k < 2; ++k)
        dc.edges.push_back({e.upper, e.lower, e.kappa / 2, up[std::min<int>(k, up.size() - 1)],
                            lo[std::min<int>(k, lo.size() - 1)]});
    }
  }
  return dc;
}

long prong_count(const EnhancedLevelGraph& g) {
  long p = 1;
  for (const GraphEdge& e : g.edges()) p *= e.kappa;
  return p;
}

Rho graph_rho(const EnhancedLevelGraph& g) {
  Rho out;
  const auto& vs = g.vertices();
  for (int p = 1; p <= g.depth(); ++p) {
    std::vector<int> sizes;
    for (size_t v = 0; v < vs.size(); ++v) {
      if (vs[v].parent < 0) continue;
      if (vs[v].level <= -p && vs[vs[v].parent].level > -p) sizes.push_back(g.zeros_below(static_cast<int>(v)) - 1);
    }
    std::sort(sizes.begin(), sizes.end());
    out.push_back(sizes);
  }
  return out;
}

EnhancedLevelGraph from_msc(const MultiScaleStab& m) {
  const int n = m.top.rank();
  struct Node {
    std::vector<int> simples;
    int level;
  };
  std::vector<Node> nodes{{m.top.labels(), 0}};
  auto comps = level_components(m);
  for (int i = 1; i <= m.depth(); ++i)
    for (const auto& c : comps[i - 1]) {
      bool persists = i < m.depth() && std::find(comps[i].begin(), comps[i].end(), c) != comps[i].end();
      if (!persists) nodes.push_back({c, -i});
    }
  std::vector<GraphVertex> vs(nodes.size());
  for (size_t a = 0; a < nodes.size(); ++a) {
    vs[a].level = nodes[a].level;
    vs[a].pole = a == 0;
    vs[a].parent = -1;
    if (a == 0) continue;
    size_t best = 0;
    for (size_t b = 0; b < nodes.size(); ++b) {
      if (b == a || nodes[b].simples.size() <= nodes[a].simples.size()) continue;
      if (!std::includes(nodes[b].simples.begin(), nodes[b].simples.end(), nodes[a].simples.begin(),
                         nodes[a].simples.end()))
        continue;
      if (nodes[b].simples.size() < nodes[best].simples.size()) best = b;
    }
    vs[a].parent = static_cast<int>(best);
  }
  // own zeros: |C| + 1 minus what the children take
  int next = 1;
  for (size_t a = 0; a < nodes.size(); ++a) {
    int own = static_cast<int>(nodes[a].simples.size()) + 1;
    for (size_t b = 0; b < nodes.size(); ++b)
      if (vs[b].parent == static_cast<int>(a)) own -= static_cast<int>(nodes[b].simples.size()) + 1;
    if (own < 0) throw InternalError("vanishing components do not fit in their parent");
    for (int k = 0; k < own; ++k) vs[a].zeros.push_back(next++);
  }
  return EnhancedLevelGraph(n, vs);
}

std::vector<std::vector<int>> admissible_types(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int budget, int minpart) {
    if (!cur.empty()) {
      int used = 0;
      for (int x : cur) used += x + 1;
      if (used < n + 1 || cur.size() >= 2) out.push_back(cur);
    }
    for (int p = minpart; p + 1 <= budget; ++p) {
      cur.push_back(p);
      rec(budget - p - 1, p);
      cur.pop_back();
    }
  };
  rec(n + 1, 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::string census_report(int n, int max_levels) {
  std::ostringstream os;
  os << "census n=" << n << " max_levels=" << max_levels << " pole_order=" << -(n + 5) << "\n";
  auto labeled = enumerate_graphs(n, max_levels, true);
  auto unlabeled = enumerate_graphs(n, max_levels, false);
  std::map<std::string, int> labeled_count;
  for (const auto& g : labeled) ++labeled_count[g.canonical(false)];
  for (int L = 1; L <= max_levels; ++L) {
    int u = 0, l = 0;
    for (const auto& g : unlabeled)
      if (g.depth() == L) {
        ++u;
        l += labeled_count[g.canonical(false)];
      }
    os << "L=" << L << " unlabeled=" << u << " labeled=" << l << "\n";
    for (const auto& g : unlabeled) {
      if (g.depth() != L) continue;
      os << "  " << g.canonical(false) << " rho=";
      for (const auto& r : graph_rho(g)) {
        os << "(";
        for (size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k];
        os << ")";
      }
      os << " kappa=";
      auto es = g.edges();
      std::vector<int> ks;
      for (const auto& e : es) ks.push_back(e.kappa);
      std::sort(ks.begin(), ks.end());
      for (size_t k = 0; k < ks.size(); ++k) os << (k ? "," : "") << ks[k];
      os << " prongs=" << prong_count(g) << " labeled=" << labeled_count[g.canonical(false)] << "\n";
    }
  }
  std::vector<EnhancedLevelGraph> all = unlabeled;
  all.push_back(smooth_graph(n));
  os << "undegenerations:\n";
  for (const auto& rel : adjacency_poset(all, false)) {
    os << "  " << all[rel.lower].canonical(false) << " -{";
    for (size_t k = 0; k < rel.passages.size(); ++k) os << (k ? "," : "") << rel.passages[k];
    os << "}-> " << all[rel.upper].canonical(false) << "\n";
  }
  return os.str();
}

}  // namespace mstab
