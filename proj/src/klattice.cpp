#include "mstab/klattice.hpp"

#include <cctype>
#include <numeric>
#include <set>

namespace mstab {

IntMatrix class_twist_matrix(const Quiver& ambient, const KClass& s, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("twist sign must be +1 or -1");
  int n = ambient.size();
  if (static_cast<int>(s.size()) != n) throw ValidationError("class length does not match the quiver rank");
  IntMatrix m = IntMatrix::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    KClass e(n, 0);
    e[j] = 1;
    long long c = euler_pairing(ambient, s, e);
    for (int r = 0; r < n; ++r) m(r, j) -= sign * c * s[r];
  }
  return m;
}

IntMatrix twist_matrix(const Quiver& q, int i, int sign) {
  KClass e(q.size(), 0);
  e[q.index_of(i)] = 1;
  return class_twist_matrix(q, e, sign);
}

IntMatrix word_matrix(const Quiver& q, const BraidWord& w) {
  IntMatrix m = IntMatrix::Identity(q.size(), q.size());
  for (const BraidLetter& l : w) m = m * twist_matrix(q, l.index, l.exponent);
  return m;
}

BraidWord inverse_word(const BraidWord& w) {
  BraidWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->index, -it->exponent});
  return r;
}

BraidWord power_word(const BraidWord& w, int k) {
  BraidWord base = k < 0 ? inverse_word(w) : w;
  BraidWord r;
  for (int t = 0; t < std::abs(k); ++t) r.insert(r.end(), base.begin(), base.end());
  return r;
}

BraidWord theta_word(const Quiver& q, const std::vector<int>& interval) {
  if (interval.empty()) throw ValidationError("theta word of an empty vertex set");
  Quiver sub = restrict_to(q, interval);
  if (sub.components().size() != 1) throw ValidationError("theta word needs a connected vertex set");
  if (!sub.cycles().empty() || sub.arrows().size() + 1 != interval.size())
    throw ValidationError("theta word needs the vertex set to induce a path");
  // walk the path from an end vertex
  std::vector<int> order;
  int start = sub.vertices().front();
  for (int v : sub.vertices()) {
    int deg = 0;
    for (int w : sub.vertices()) deg += sub.adjacent(v, w);
    if (deg <= 1) {
      start = v;
      break;
    }
  }
  std::set<int> seen{start};
  order.push_back(start);
  while (order.size() < interval.size()) {
    int here = order.back(), next = -1;
    for (int w : sub.vertices())
      if (!seen.count(w) && sub.adjacent(here, w)) next = w;
    if (next < 0) throw ValidationError("theta word needs the vertex set to induce a path");
    seen.insert(next);
    order.push_back(next);
  }
  BraidWord once;
  for (int v : order) once.push_back({v, 1});
  return power_word(once, static_cast<int>(interval.size()) + 1);
}

namespace {

class WordParser {
 public:
  explicit WordParser(const std::string& s) : s_(s) {}

  BraidWord parse() {
    BraidWord w = sequence();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw UsageError("braid word: " + what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ','))
      ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  long integer() {
    skip();
    size_t begin = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == begin || (pos_ == begin + 1 && !std::isdigit(static_cast<unsigned char>(s_[begin]))))
      fail("expected an integer");
    return std::stol(s_.substr(begin, pos_ - begin));
  }
  int exponent() {
    if (!peek('^')) return 1;
    ++pos_;
    return static_cast<int>(integer());
  }
  BraidWord sequence() {
    BraidWord w;
    while (true) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')') return w;
      BraidWord item;
      if (s_[pos_] == '(') {
        ++pos_;
        item = sequence();
        if (!peek(')')) fail("missing ')'");
        ++pos_;
      } else {
        long g = integer();
        if (g == 0) fail("generator index 0");
        item.push_back({static_cast<int>(std::labs(g)), g < 0 ? -1 : 1});
      }
      BraidWord p = power_word(item, exponent());
      w.insert(w.end(), p.begin(), p.end());
    }
  }

  std::string s_;
  size_t pos_ = 0;
};

}  // namespace

BraidWord parse_braid_word(const std::string& text) { return WordParser(text).parse(); }

TwistGroupData simple_twist_data(const Rho& rho) {
  TwistGroupData out;
  for (const auto& level : rho) {
    if (level.empty()) throw ValidationError("a vanishing level has no components");
    LevelTwist lt;
    lt.ell = 1;
    for (int nj : level) {
      if (nj < 1) throw ValidationError("component size must be positive");
      ComponentTwist c;
      c.size = nj;
      c.kappa = nj + 3;
      c.kappa_hat = nj % 2 == 1 ? (nj + 3) / 2 : nj + 3;
      c.theta_power = nj % 2 == 1 ? 1 : 2;
      lt.ell = std::lcm(lt.ell, static_cast<long>(c.kappa_hat));
      lt.components.push_back(c);
    }
    for (auto& c : lt.components) {
      if (lt.ell % c.kappa_hat != 0) throw InternalError("non-integral twist exponent");
      c.exponent = lt.ell / c.kappa_hat;
    }
    out.levels.push_back(lt);
  }
  return out;
}

}  // namespace mstab
