#include "mstab/anquiver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace mstab {

Cycle normalize_cycle(int a, int b, int c) {
  if (b < a && b < c) return {b, c, a};
  if (c < a && c < b) return {c, a, b};
  return {a, b, c};
}

Quiver::Quiver(std::vector<int> vertices, std::vector<Arrow> arrows, std::vector<Cycle> cycles)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw ValidationError("repeated vertex label");
  std::sort(arrows_.begin(), arrows_.end());
  for (size_t k = 0; k < arrows_.size(); ++k) {
    const Arrow& a = arrows_[k];
    if (!has_vertex(a.src) || !has_vertex(a.dst))
      throw ValidationError("arrow " + std::to_string(a.src) + "->" + std::to_string(a.dst) +
                            " uses an unknown vertex");
    if (a.src == a.dst) throw ValidationError("loop at vertex " + std::to_string(a.src));
    if (k > 0 && arrows_[k - 1] == a)
      throw ValidationError("multiple arrows " + std::to_string(a.src) + "->" + std::to_string(a.dst));
  }
  for (const Arrow& a : arrows_)
    if (arrows_between(a.dst, a.src) > 0)
      throw ValidationError("2-cycle between " + std::to_string(a.src) + " and " + std::to_string(a.dst));
  std::map<Arrow, int> used;
  for (const Cycle& c : cycles) {
    Cycle n = normalize_cycle(c[0], c[1], c[2]);
    for (int k = 0; k < 3; ++k) {
      Arrow a{n[k], n[(k + 1) % 3]};
      if (arrows_between(a.src, a.dst) != 1)
        throw ValidationError("potential cycle uses a missing arrow " + std::to_string(a.src) + "->" +
                              std::to_string(a.dst));
      if (++used[a] > 1) throw ValidationError("arrow lies in two potential cycles");
    }
    cycles_.push_back(n);
  }
  std::sort(cycles_.begin(), cycles_.end());
  if (std::adjacent_find(cycles_.begin(), cycles_.end()) != cycles_.end())
    throw ValidationError("repeated potential cycle");
}

bool Quiver::has_vertex(int v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

int Quiver::index_of(int v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) throw ValidationError("unknown vertex " + std::to_string(v));
  return static_cast<int>(it - vertices_.begin());
}

int Quiver::arrows_between(int from, int to) const {
  return std::binary_search(arrows_.begin(), arrows_.end(), Arrow{from, to}) ? 1 : 0;
}

bool Quiver::has_cycle(int a, int b, int c) const {
  return std::binary_search(cycles_.begin(), cycles_.end(), normalize_cycle(a, b, c));
}

std::vector<std::vector<int>> Quiver::components() const {
  std::map<int, int> parent;
  for (int v : vertices_) parent[v] = v;
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const Arrow& a : arrows_) parent[find(a.src)] = find(a.dst);
  std::map<int, std::vector<int>> groups;
  for (int v : vertices_) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

Quiver make_linear(int n) {
  if (n < 1) throw ValidationError("linear quiver needs n >= 1");
  std::vector<int> v;
  std::vector<Arrow> a;
  for (int i = 1; i <= n; ++i) {
    v.push_back(i);
    if (i < n) a.push_back({i, i + 1});
  }
  return Quiver(v, a);
}

Quiver mutate(const Quiver& q, int k) {
  if (!q.has_vertex(k)) throw ValidationError("mutation at unknown vertex " + std::to_string(k));
  std::vector<int> ins, outs;
  std::set<Arrow> arrows;
  for (const Arrow& a : q.arrows()) {
    if (a.dst == k)
      ins.push_back(a.src);
    else if (a.src == k)
      outs.push_back(a.dst);
    else
      arrows.insert(a);
  }
  for (int i : ins) arrows.insert({k, i});
  for (int j : outs) arrows.insert({j, k});

  std::vector<Cycle> cycles;
  for (const Cycle& c : q.cycles())
    if (c[0] != k && c[1] != k && c[2] != k) cycles.push_back(c);

  for (int i : ins) {
    for (int j : outs) {
      if (arrows.count({i, j}))
        throw ValidationError("mutation would create a double arrow " + std::to_string(i) + "->" +
                              std::to_string(j) + " (input is not of A_n type)");
      if (arrows.count({j, i})) {
        // the 2-cycle [ab], c cancels only if a*b*c is a term of the potential
        if (!q.has_cycle(i, k, j))
          throw ValidationError("uncancellable 2-cycle between " + std::to_string(i) + " and " +
                                std::to_string(j) + " (input is not of A_n type)");
        arrows.erase({j, i});
        continue;
      }
      arrows.insert({i, j});
      cycles.push_back(normalize_cycle(i, j, k));
    }
  }
  return Quiver(q.vertices(), std::vector<Arrow>(arrows.begin(), arrows.end()), cycles);
}

Quiver restrict_to(const Quiver& q, const std::vector<int>& subset) {
  std::set<int> keep(subset.begin(), subset.end());
  for (int v : keep)
    if (!q.has_vertex(v)) throw ValidationError("restriction to unknown vertex " + std::to_string(v));
  std::vector<Arrow> a;
  for (const Arrow& x : q.arrows())
    if (keep.count(x.src) && keep.count(x.dst)) a.push_back(x);
  std::vector<Cycle> c;
  for (const Cycle& x : q.cycles())
    if (keep.count(x[0]) && keep.count(x[1]) && keep.count(x[2])) c.push_back(x);
  return Quiver(std::vector<int>(keep.begin(), keep.end()), a, c);
}

Quiver relabel(const Quiver& q, const std::vector<int>& new_labels) {
  if (static_cast<int>(new_labels.size()) != q.size()) throw InternalError("relabel size mismatch");
  std::map<int, int> m;
  for (int k = 0; k < q.size(); ++k) m[q.vertices()[k]] = new_labels[k];
  std::vector<Arrow> a;
  for (const Arrow& x : q.arrows()) a.push_back({m[x.src], m[x.dst]});
  std::vector<Cycle> c;
  for (const Cycle& x : q.cycles()) c.push_back({m[x[0]], m[x[1]], m[x[2]]});
  return Quiver(new_labels, a, c);
}

bool isomorphic(const Quiver& a, const Quiver& b) {
  int n = a.size();
  if (n != b.size() || a.arrows().size() != b.arrows().size() || a.cycles().size() != b.cycles().size())
    return false;
  auto degrees = [](const Quiver& q, int v) {
    int in = 0, out = 0;
    for (const Arrow& x : q.arrows()) {
      in += x.dst == v;
      out += x.src == v;
    }
    return std::pair{in, out};
  };
  std::vector<int> image(n, -1);
  std::vector<bool> taken(n, false);
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  std::function<bool(int)> extend = [&](int pos) -> bool {
    if (pos == n) {
      std::vector<int> labels(n);
      for (int k = 0; k < n; ++k) labels[k] = vb[image[k]];
      // relabel a into b's labels and compare verbatim
      std::vector<Arrow> arr;
      for (const Arrow& x : a.arrows()) arr.push_back({labels[a.index_of(x.src)], labels[a.index_of(x.dst)]});
      std::sort(arr.begin(), arr.end());
      if (arr != b.arrows()) return false;
      std::vector<Cycle> cyc;
      for (const Cycle& x : a.cycles())
        cyc.push_back(normalize_cycle(labels[a.index_of(x[0])], labels[a.index_of(x[1])], labels[a.index_of(x[2])]));
      std::sort(cyc.begin(), cyc.end());
      return cyc == b.cycles();
    }
    auto da = degrees(a, va[pos]);
    for (int c = 0; c < n; ++c) {
      if (taken[c] || degrees(b, vb[c]) != da) continue;
      // adjacency to already placed vertices must agree
      bool ok = true;
      for (int p = 0; p < pos && ok; ++p) {
        ok = a.arrows_between(va[pos], va[p]) == b.arrows_between(vb[c], vb[image[p]]) &&
             a.arrows_between(va[p], va[pos]) == b.arrows_between(vb[image[p]], vb[c]);
      }
      if (!ok) continue;
      taken[c] = true;
      image[pos] = c;
      if (extend(pos + 1)) return true;
      taken[c] = false;
    }
    return false;
  };
  return extend(0);
}

long long euler_pairing(const Quiver& q, const KClass& a, const KClass& b) {
  if (static_cast<int>(a.size()) != q.size() || static_cast<int>(b.size()) != q.size())
    throw ValidationError("class length does not match the quiver rank");
  long long s = 0;
  for (const Arrow& x : q.arrows()) {
    int i = q.index_of(x.src), j = q.index_of(x.dst);
    // an arrow i -> j contributes -1 to chi(e_i, e_j) and +1 to chi(e_j, e_i)
    s += -a[i] * b[j] + a[j] * b[i];
  }
  return s;
}

namespace {

int letter_from(const Letter& l) { return l.inverse ? l.arrow.dst : l.arrow.src; }
int letter_to(const Letter& l) { return l.inverse ? l.arrow.src : l.arrow.dst; }

std::vector<Letter> inverted(const std::vector<Letter>& w) {
  std::vector<Letter> r(w.rbegin(), w.rend());
  for (Letter& l : r) l.inverse = !l.inverse;
  return r;
}

bool allowed_after(const Quiver& q, const Letter& prev, const Letter& next) {
  if (prev.arrow == next.arrow) return false;  // backtracking (a then a^-1 or a^-1 then a)
  if (!prev.inverse && !next.inverse)
    return !q.has_cycle(prev.arrow.src, prev.arrow.dst, next.arrow.dst);
  if (prev.inverse && next.inverse)
    return !q.has_cycle(next.arrow.src, next.arrow.dst, prev.arrow.dst);
  return true;
}

}  // namespace

std::vector<StringObject> enumerate_strings(const Quiver& q) {
  const size_t cap = 10 * static_cast<size_t>(q.size()) * static_cast<size_t>(q.size());
  std::vector<StringObject> out;
  std::set<std::pair<int, std::vector<Letter>>> seen;

  auto record = [&](int start, const std::vector<Letter>& w) {
    int end = w.empty() ? start : letter_to(w.back());
    std::pair<int, std::vector<Letter>> key{start, w}, alt{end, inverted(w)};
    if (alt < key) key = alt;
    if (!seen.insert(key).second) return;
    StringObject s;
    s.start = key.first;
    s.walk = key.second;
    s.dimension_vector.assign(q.size(), 0);
    s.dimension_vector[q.index_of(s.start)] += 1;
    for (const Letter& l : s.walk) s.dimension_vector[q.index_of(letter_to(l))] += 1;
    out.push_back(std::move(s));
    if (out.size() > cap)
      throw ValidationError("string enumeration exceeded the cap of " + std::to_string(cap) +
                            " (input is not of A_n type)");
  };

  std::function<void(int, std::vector<Letter>&)> grow = [&](int start, std::vector<Letter>& w) {
    record(start, w);
    if (w.size() > cap) throw ValidationError("string walk exceeded the cap (input is not of A_n type)");
    int here = w.empty() ? start : letter_to(w.back());
    for (const Arrow& a : q.arrows()) {
      for (bool inv : {false, true}) {
        Letter l{a, inv};
        if (letter_from(l) != here) continue;
        if (!w.empty() && !allowed_after(q, w.back(), l)) continue;
        w.push_back(l);
        grow(start, w);
        w.pop_back();
      }
    }
  };
  for (int v : q.vertices()) {
    std::vector<Letter> w;
    grow(v, w);
  }
  std::sort(out.begin(), out.end(), [](const StringObject& x, const StringObject& y) {
    return std::pair(x.walk.size(), x.dimension_vector) < std::pair(y.walk.size(), y.dimension_vector);
  });
  return out;
}

}  // namespace mstab
