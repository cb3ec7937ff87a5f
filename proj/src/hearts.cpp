#include "mstab/hearts.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace mstab {

namespace {

// Solves C x = b over Q where the columns of C are the given vectors; returns
// false if C is singular.
bool solve_rational(const std::vector<KClass>& cols, const KClass& b, std::vector<mpq_class>& x) {
  int n = static_cast<int>(cols.size());
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a[r][c] = static_cast<long>(cols[c][r]);
    a[r][n] = static_cast<long>(b[r]);
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(a[c], a[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[c][c];
      for (int k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  x.assign(n, 0);
  for (int r = 0; r < n; ++r) x[r] = a[r][n] / a[r][r];
  return true;
}

std::string class_str(const KClass& c) {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
  os << ")";
  return os.str();
}

}  // namespace

Heart::Heart(std::vector<Simple> simples, Quiver extquiver, Provenance provenance)
    : simples_(std::move(simples)), extquiver_(std::move(extquiver)), provenance_(std::move(provenance)) {
  std::sort(simples_.begin(), simples_.end(), [](const Simple& a, const Simple& b) { return a.label < b.label; });
  int n = rank();
  std::vector<int> labs = labels();
  if (labs != extquiver_.vertices()) throw ValidationError("ext-quiver vertices differ from the simple labels");
  if (std::adjacent_find(labs.begin(), labs.end()) != labs.end()) throw ValidationError("repeated simple label");
  std::vector<KClass> cols;
  for (const Simple& s : simples_) {
    if (static_cast<int>(s.cls.size()) != n)
      throw ValidationError("class of simple " + std::to_string(s.label) + " has the wrong length");
    cols.push_back(s.cls);
  }
  // Z-basis: every standard basis vector has integral coordinates
  for (int j = 0; j < n; ++j) {
    KClass e(n, 0);
    e[j] = 1;
    std::vector<mpq_class> x;
    if (!solve_rational(cols, e, x)) throw ValidationError("simple classes are linearly dependent");
    for (const auto& v : x)
      if (v.get_den() != 1) throw ValidationError("simple classes do not form a Z-basis");
  }
  for (int v : labs) {
    int in = 0, out = 0;
    for (const Arrow& a : extquiver_.arrows()) {
      in += a.dst == v;
      out += a.src == v;
    }
    if (in > 2 || out > 2)
      throw ValidationError("simple " + std::to_string(v) + " has more than two ext^1 neighbours on one side");
  }
}

std::vector<int> Heart::labels() const {
  std::vector<int> l;
  for (const Simple& s : simples_) l.push_back(s.label);
  return l;
}

bool Heart::has_label(int l) const {
  return std::any_of(simples_.begin(), simples_.end(), [&](const Simple& s) { return s.label == l; });
}

const KClass& Heart::class_of(int label) const {
  for (const Simple& s : simples_)
    if (s.label == label) return s.cls;
  throw ValidationError("unknown simple label " + std::to_string(label));
}

Heart Heart::restricted(const std::vector<int>& labs) const {
  Heart h;
  for (int l : labs) h.simples_.push_back({l, class_of(l)});
  std::sort(h.simples_.begin(), h.simples_.end(), [](const Simple& a, const Simple& b) { return a.label < b.label; });
  h.extquiver_ = restrict_to(extquiver_, labs);
  return h;
}

std::vector<long long> Heart::coordinates(const KClass& gamma) const {
  std::vector<KClass> cols;
  for (const Simple& s : simples_) cols.push_back(s.cls);
  std::vector<mpq_class> x;
  if (static_cast<int>(gamma.size()) != rank() || !solve_rational(cols, gamma, x))
    throw ValidationError("class " + class_str(gamma) + " cannot be expressed in the simple basis");
  std::vector<long long> out;
  for (const auto& v : x) {
    if (v.get_den() != 1) throw InternalError("non-integral simple coordinates");
    out.push_back(v.get_num().get_si());
  }
  return out;
}

Heart standard_heart(int n) {
  if (n < 1) throw ValidationError("standard heart needs n >= 1");
  std::vector<Simple> s;
  for (int i = 1; i <= n; ++i) {
    KClass e(n, 0);
    e[i - 1] = 1;
    s.push_back({i, e});
  }
  return Heart(s, make_linear(n));
}

Heart forward_tilt(const Heart& h, int s) {
  const KClass cs = h.class_of(s);
  Heart out = h;
  for (Simple& t : out.simples_) {
    if (t.label == s) {
      for (auto& x : t.cls) x = -x;
    } else if (int e = h.ext1(t.label, s)) {
      for (size_t k = 0; k < cs.size(); ++k) t.cls[k] += e * cs[k];
    }
  }
  out.extquiver_ = mutate(h.extquiver(), s);
  out.provenance_.word.push_back(s);
  return out;
}

Heart backward_tilt(const Heart& h, int s) {
  const KClass cs = h.class_of(s);
  Heart out = h;
  for (Simple& t : out.simples_) {
    if (t.label == s) {
      for (auto& x : t.cls) x = -x;
    } else if (int e = h.ext1(s, t.label)) {
      for (size_t k = 0; k < cs.size(); ++k) t.cls[k] += e * cs[k];
    }
  }
  out.extquiver_ = mutate(h.extquiver(), s);
  out.provenance_.word.push_back(-s);
  return out;
}

Heart apply_tilt_word(const Heart& h, const std::vector<int>& signed_labels) {
  Heart cur = h;
  for (int l : signed_labels) {
    if (l == 0) throw UsageError("tilt word contains label 0");
    cur = l > 0 ? forward_tilt(cur, l) : backward_tilt(cur, -l);
  }
  return cur;
}

Heart shift(const Heart& h, long k) {
  Heart out = h;
  if (k % 2 != 0)
    for (Simple& t : out.simples_)
      for (auto& x : t.cls) x = -x;
  out.provenance_.shift += k;
  return out;
}

Heart tilt_torsion_free(const Heart& h, const std::vector<KClass>& gens) {
  Heart cur = h;
  for (size_t k = 0; k < gens.size(); ++k) {
    int found = 0;
    for (const Simple& s : cur.simples())
      if (s.cls == gens[k]) found = s.label;
    if (!found)
      throw ValidationError("torsion-free generator " + std::to_string(k + 1) + " " + class_str(gens[k]) +
                            " is not simple at its step");
    cur = forward_tilt(cur, found);
  }
  return cur;
}

std::vector<int> convenient_chain(const Heart& h, const std::vector<int>& vlist, int s0, bool forward) {
  std::set<int> v(vlist.begin(), vlist.end());
  auto ext = [&](int a, int b) { return forward ? h.ext1(a, b) : h.ext1(b, a); };
  std::vector<int> chain;
  for (int t : v)
    if (ext(t, s0)) {
      chain.push_back(t);
      break;
    }
  if (chain.empty()) return chain;
  while (true) {
    int cur = chain.back();
    int prev = chain.size() >= 2 ? chain[chain.size() - 2] : s0;
    int next = 0;
    for (int t : v) {
      if (std::find(chain.begin(), chain.end(), t) != chain.end()) continue;
      if (ext(t, cur) == 1 && ext(t, prev) == 0) {
        next = t;
        break;
      }
    }
    if (!next) return chain;
    chain.push_back(next);
  }
}

ConvenientResult convenient_representative(const Heart& h, const std::vector<int>& v, int s0, bool forward) {
  std::set<int> vs(v.begin(), v.end());
  if (vs.count(s0)) throw ValidationError("the quotient simple lies in the Serre subset");
  for (int t : vs) h.class_of(t);
  h.class_of(s0);
  ConvenientResult r{h, {}, {}};
  auto attached = [&](const Heart& cur) {
    for (int t : vs)
      if (forward ? cur.ext1(t, s0) : cur.ext1(s0, t)) return true;
    return false;
  };
  int rounds = 0;
  while (attached(r.heart)) {
    if (++rounds > 2 * h.rank() + 2) throw InternalError("convenient representative did not converge");
    for (int t : convenient_chain(r.heart, v, s0, forward)) {
      r.generators.push_back(r.heart.class_of(t));
      r.word.push_back(forward ? t : -t);
      r.heart = forward ? forward_tilt(r.heart, t) : backward_tilt(r.heart, t);
    }
  }
  return r;
}

std::string CanonicalForm::str() const {
  std::ostringstream os;
  for (size_t k = 0; k < classes.size(); ++k) os << (k ? " " : "") << class_str(classes[k]);
  os << " |";
  for (const Arrow& a : arrows) os << " " << a.src << ">" << a.dst;
  if (!cycles.empty()) {
    os << " |";
    for (const Cycle& c : cycles) os << " " << c[0] << c[1] << c[2];
  }
  return os.str();
}

CanonicalForm canonical_form(const Heart& h) {
  std::vector<std::pair<KClass, int>> order;
  for (const Simple& s : h.simples()) order.push_back({s.cls, s.label});
  std::sort(order.begin(), order.end());
  std::map<int, int> pos;
  CanonicalForm cf;
  for (size_t k = 0; k < order.size(); ++k) {
    pos[order[k].second] = static_cast<int>(k);
    cf.classes.push_back(order[k].first);
  }
  for (const Arrow& a : h.extquiver().arrows()) cf.arrows.push_back({pos[a.src], pos[a.dst]});
  std::sort(cf.arrows.begin(), cf.arrows.end());
  for (const Cycle& c : h.extquiver().cycles()) cf.cycles.push_back(normalize_cycle(pos[c[0]], pos[c[1]], pos[c[2]]));
  std::sort(cf.cycles.begin(), cf.cycles.end());
  return cf;
}

bool heart_equal(const Heart& a, const Heart& b) { return canonical_form(a) == canonical_form(b); }

bool sign_coherent(const Heart& h, const Heart& base) {
  for (const Simple& s : h.simples()) {
    auto c = base.coordinates(s.cls);
    bool pos = std::all_of(c.begin(), c.end(), [](long long x) { return x >= 0; });
    bool neg = std::all_of(c.begin(), c.end(), [](long long x) { return x <= 0; });
    if (!pos && !neg) return false;
  }
  return true;
}

ExchangeGraph exchange_graph(const Heart& h0, int radius) {
  if (radius < 0) throw ValidationError("radius must be nonnegative");
  ExchangeGraph g;
  std::map<CanonicalForm, int> index;
  std::vector<int> depth;
  std::deque<int> queue;
  g.vertices.push_back(h0);
  depth.push_back(0);
  index[canonical_form(h0)] = 0;
  queue.push_back(0);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (depth[u] >= radius) continue;
    Heart src = g.vertices[u];
    for (int l : src.labels()) {
      Heart t = forward_tilt(src, l);
      auto cf = canonical_form(t);
      auto it = index.find(cf);
      int v;
      if (it == index.end()) {
        v = static_cast<int>(g.vertices.size());
        index[cf] = v;
        g.vertices.push_back(t);
        depth.push_back(depth[u] + 1);
        queue.push_back(v);
      } else {
        v = it->second;
      }
      g.edges.push_back({u, v, l});
    }
  }
  return g;
}

std::string ExchangeGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph exchange {\n";
  for (size_t k = 0; k < vertices.size(); ++k)
    os << "  v" << k << " [label=\"" << canonical_form(vertices[k]).str() << "\"];\n";
  for (const Edge& e : edges) os << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.label << "\"];\n";
  os << "}\n";
  return os.str();
}

std::vector<Heart> intermediate_hearts(const Heart& h0) {
  std::vector<Heart> out{h0};
  std::set<CanonicalForm> seen{canonical_form(h0)};
  for (size_t k = 0; k < out.size(); ++k) {
    Heart cur = out[k];
    for (const Simple& s : cur.simples()) {
      auto c = h0.coordinates(s.cls);
      if (!std::all_of(c.begin(), c.end(), [](long long x) { return x >= 0; })) continue;
      Heart t = forward_tilt(cur, s.label);
      if (seen.insert(canonical_form(t)).second) out.push_back(t);
    }
  }
  return out;
}

}  // namespace mstab
