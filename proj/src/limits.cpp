#include "mstab/limits.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace mstab {

namespace {

CNum to_cnum(const QComplex& q) { return CNum(q.re, q.im); }

bool is_zero(const QComplex& q) { return q.re == 0 && q.im == 0; }

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

// One term such as "-3/4", "+it", "2i*t^-1", "(1+2i)t^2".
void parse_term(std::string term, LaurentPoly& out, const std::string& whole) {
  bool neg = false;
  if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
    neg = term[0] == '-';
    term = term.substr(1);
  }
  if (term.empty()) throw UsageError("empty term in '" + whole + "'");
  int power = 0;
  std::string coeff = term;
  size_t tpos = term.find('t');
  if (tpos != std::string::npos) {
    coeff = term.substr(0, tpos);
    std::string rest = term.substr(tpos + 1);
    power = 1;
    if (!rest.empty()) {
      if (rest[0] != '^') throw UsageError("bad power of t in '" + whole + "'");
      try {
        size_t used = 0;
        power = std::stoi(rest.substr(1), &used);
        if (used != rest.size() - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UsageError("bad power of t in '" + whole + "'");
      }
    }
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  }
  QComplex c{Q(1), Q(0)};
  if (coeff.empty()) {
  } else if (coeff == "i") {
    c = {Q(0), Q(1)};
  } else if (coeff.front() == '(' && coeff.back() == ')') {
    c = parse_qcomplex(coeff.substr(1, coeff.size() - 2));
  } else {
    c = parse_qcomplex(coeff);
  }
  if (neg) c = {-c.re, -c.im};
  LaurentPoly single{{power, c}};
  out = laurent_add(out, single);
}

}  // namespace

LaurentPoly laurent_add(const LaurentPoly& a, const LaurentPoly& b, long factor) {
  LaurentPoly out = a;
  for (const auto& [p, c] : b) {
    QComplex& x = out[p];
    x = {x.re + factor * c.re, x.im + factor * c.im};
    x.re.canonicalize();
    x.im.canonicalize();
    if (is_zero(x)) out.erase(p);
  }
  return out;
}

int valuation(const LaurentPoly& p) {
  if (p.empty()) throw ValidationError("family is identically zero");
  return p.begin()->first;
}

CNum leading(const LaurentPoly& p) {
  if (p.empty()) throw ValidationError("family is identically zero");
  return to_cnum(p.begin()->second);
}

LaurentPoly parse_laurent(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw UsageError("empty Laurent polynomial");
  LaurentPoly out;
  int depth = 0;
  size_t start = 0;
  for (size_t k = 0; k < s.size(); ++k) {
    char c = s[k];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw UsageError("unbalanced parentheses in '" + raw + "'");
    bool sign = (c == '+' || c == '-') && depth == 0 && k > 0 && s[k - 1] != '^' && s[k - 1] != '/';
    if (sign) {
      parse_term(s.substr(start, k - start), out, raw);
      start = k;
    }
  }
  if (depth != 0) throw UsageError("unbalanced parentheses in '" + raw + "'");
  parse_term(s.substr(start), out, raw);
  return out;
}

std::vector<LaurentPoly> parse_family(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw UsageError("a family is written as (Z(S_1), ..., Z(S_n))");
  s = s.substr(1, s.size() - 2);
  std::vector<LaurentPoly> out;
  int depth = 0;
  size_t start = 0;
  for (size_t k = 0; k <= s.size(); ++k) {
    if (k < s.size() && s[k] == '(') ++depth;
    if (k < s.size() && s[k] == ')') --depth;
    if (k == s.size() || (s[k] == ',' && depth == 0)) {
      out.push_back(parse_laurent(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  return out;
}

std::string admissibility_problem(const Heart& h, const LaurentCharge& zc) {
  for (int l : h.labels()) {
    auto it = zc.find(l);
    if (it == zc.end()) return "no family on simple " + std::to_string(l);
    const LaurentPoly& p = it->second;
    if (p.empty()) return "family on simple " + std::to_string(l) + " is identically zero";
    // sign of Im for small t is the sign of the lowest nonzero imaginary
    // coefficient; with Im identically zero the real part must be negative
    int im_sign = 0;
    for (const auto& [e, c] : p)
      if (c.im != 0) {
        im_sign = sgn(c.im);
        break;
      }
    if (im_sign < 0) return "family on simple " + std::to_string(l) + " enters the lower half-plane";
    if (im_sign == 0 && p.begin()->second.re > 0)
      return "family on simple " + std::to_string(l) + " lies on the positive real axis";
  }
  for (const auto& [l, p] : zc)
    if (!h.has_label(l)) return "family given on unknown label " + std::to_string(l);
  return "";
}

LevelAssignment order_relation(const Heart& h, const LaurentCharge& zc) {
  std::string why = admissibility_problem(h, zc);
  if (!why.empty()) throw ValidationError("inadmissible family: " + why);
  std::set<int> vals;
  for (const auto& [l, p] : zc) vals.insert(valuation(p));
  LevelAssignment a;
  a.valuations.assign(vals.begin(), vals.end());
  for (const auto& [l, p] : zc)
    a.level[l] = static_cast<int>(std::find(a.valuations.begin(), a.valuations.end(), valuation(p)) -
                                  a.valuations.begin());
  return a;
}

namespace {

// Transport of the family along a simple tilt (K-linear, like tilt_charges).
LaurentCharge tilt_family(const Heart& h, const LaurentCharge& z, int s, bool forward) {
  LaurentCharge out = z;
  const LaurentPoly& zs = z.at(s);
  for (auto& [t, p] : out) {
    if (t == s) {
      p = laurent_add({}, zs, -1);
      continue;
    }
    int e = forward ? h.ext1(t, s) : h.ext1(s, t);
    if (e) p = laurent_add(p, zs, e);
  }
  return out;
}

LaurentPoly family_of_class(const Heart& h, const LaurentCharge& z, const KClass& gamma) {
  auto c = h.coordinates(gamma);
  auto labs = h.labels();
  LaurentPoly out;
  for (size_t k = 0; k < labs.size(); ++k)
    if (c[k]) out = laurent_add(out, z.at(labs[k]), static_cast<long>(c[k]));
  return out;
}

bool on_positive_axis(const CNum& c) { return c.sign_im() == 0 && c.sign_re() > 0; }

}  // namespace

LimitResult extract_limit(const Heart& h0, const LaurentCharge& zc0) {
  order_relation(h0, zc0);  // admissibility
  Heart h = h0;
  LaurentCharge zc = zc0;
  LimitResult r;

  bool rotate = false;
  for (const auto& [l, p] : zc) rotate |= on_positive_axis(leading(p));

  if (rotate) {
    // Walls: phases in (0, 1] of leading terms of indecomposables, ignoring
    // the positive real axis which the rotation is meant to leave.
    std::vector<long double> walls;
    std::vector<CNum> wall_leads;
    for (const KClass& g : indecomposable_classes(h)) {
      LaurentPoly p = family_of_class(h, zc, g);
      if (p.empty()) continue;
      CNum c = leading(p);
      if (on_positive_axis(c)) continue;
      walls.push_back(phase_of(c).value);
      wall_leads.push_back(c);
    }
    std::optional<Q> lambda;
    for (int q = 64; q >= 2; q /= 2) {
      Q cand(1, q);
      bool hits = false;
      CNum rot = rotation(cand);
      for (const CNum& c : wall_leads) {
        CNum v = rot * c;
        try {
          hits |= on_positive_axis(v);
        } catch (const PrecisionError&) {
          hits = true;
        }
      }
      if (!hits) {
        lambda = cand;
        break;
      }
    }
    if (!lambda) throw ValidationError("no rotation in the schedule avoids the walls (horizontal degeneration)");
    r.lambda = lambda;
    long double lam = lambda->get_d();
    r.exact_decisions = std::all_of(walls.begin(), walls.end(), [&](long double w) { return w > lam + 1e-12L; });
    CNum rot = rotation(*lambda);

    // Below every wall a rotated leading term leaves the closed upper
    // half-plane exactly when the leading term itself is outside it.
    auto outside = [&](const CNum& lead) { return r.exact_decisions ? !in_upper(lead) : !in_upper(rot * lead); };
    const int n = h.rank();
    const int cap = 4 * n * (n + 1) + 8;
    for (int step = 0;; ++step) {
      int pick = 0;
      for (const auto& [l, p] : zc) {
        CNum c = leading(p);
        if (!outside(c)) continue;
        if (!pick || compare_phase(c, leading(zc.at(pick))) < 0) pick = l;
      }
      if (!pick) break;
      if (step >= cap) throw ValidationError("wall hit: rotated family did not settle");
      zc = tilt_family(h, zc, pick, true);
      h = forward_tilt(h, pick);
    }
  }

  LevelAssignment a;
  {
    std::set<int> vals;
    for (const auto& [l, p] : zc) vals.insert(valuation(p));
    a.valuations.assign(vals.begin(), vals.end());
  }
  CNum rot = r.lambda ? rotation(*r.lambda) : CNum(1);
  std::vector<CentralCharge> rotated;
  for (int v : a.valuations) {
    CentralCharge lead, rz;
    for (const auto& [l, p] : zc) {
      if (valuation(p) < v) continue;
      lead[l] = valuation(p) == v ? leading(p) : CNum(0);
      rz[l] = lead[l] * rot;
    }
    r.leads.push_back(lead);
    rotated.push_back(rz);
  }
  r.family = zc;
  try {
    r.msc = validate_msc(h, rotated);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("limit is not a multi-scale stability condition: ") + e.what());
  }
  return r;
}

MultiScaleStab unrotated_limit(const LimitResult& r) { return validate_msc(r.msc.top, r.leads); }

LaurentCharge plumbing_ray(const MultiScaleStab& m, const std::vector<int>& exponents, const std::vector<Q>& scalars,
                           const LaurentPoly& noise) {
  if (static_cast<int>(exponents.size()) != m.depth() + 1 || scalars.size() != exponents.size())
    throw UsageError("one exponent and one scalar per level expected");
  for (size_t k = 0; k < exponents.size(); ++k) {
    if (k == 0 ? exponents[0] != 0 : exponents[k] <= exponents[k - 1])
      throw UsageError("level exponents must start at 0 and increase");
    if (scalars[k] <= 0) throw UsageError("level scalars must be positive");
  }
  for (const auto& [p, c] : noise)
    if (p < 1) throw UsageError("noise terms must have positive order");
  LaurentCharge out;
  for (int k = 0; k <= m.depth(); ++k) {
    for (int l : m.quotient_simples(k)) {
      const CNum& z = m.levels[k].charge.at(l);
      if (!z.gaussian_rational()) throw UsageError("plumbing rays need Gaussian rational charges");
      LaurentPoly p{{0, QComplex{scalars[k] * z.re_q(), scalars[k] * z.im_q()}}};
      p = laurent_add(p, noise);
      LaurentPoly shifted;
      for (const auto& [e, c] : p) shifted[e + exponents[k]] = c;
      out[l] = shifted;
    }
  }
  return out;
}

}  // namespace mstab
