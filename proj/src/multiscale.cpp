#include "mstab/multiscale.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace mstab {

namespace {

using cld = std::complex<long double>;

std::string label_list(const std::vector<int>& v) {
  std::ostringstream os;
  os << "{";
  for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << "}";
  return os.str();
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Rank of a list of integer vectors over Q.
int rational_rank(const std::vector<KClass>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<mpq_class>> a;
  for (const KClass& r : rows) {
    std::vector<mpq_class> row;
    for (long long x : r) row.emplace_back(static_cast<long>(x));
    a.push_back(row);
  }
  int m = static_cast<int>(a.size()), n = static_cast<int>(a[0].size()), rank = 0;
  for (int c = 0; c < n && rank < m; ++c) {
    int piv = -1;
    for (int r = rank; r < m; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[rank][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<KClass> classes_of(const Heart& h, const std::vector<int>& labels) {
  std::vector<KClass> out;
  for (int l : labels) out.push_back(h.class_of(l));
  return out;
}

bool same_span(const std::vector<KClass>& a, const std::vector<KClass>& b) {
  int ra = rational_rank(a), rb = rational_rank(b);
  if (ra != rb) return false;
  std::vector<KClass> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rational_rank(both) == ra;
}

// Equality for charges that may be balls: exact values compare exactly,
// otherwise within the radii plus a relative slack.
bool charge_close(const CNum& a, const CNum& b) {
  if (a.exact() && b.exact()) return a == b;
  cld x = a.approx(), y = b.approx();
  long double scale = std::max({1.0L, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= a.radius() + b.radius() + 1e-12L * scale;
}

// Components of the restricted ext-quiver on labels, each sorted, ordered by
// their minimal label.
std::vector<std::vector<int>> components_on(const Heart& h, const std::vector<int>& labels) {
  auto comps = restrict_to(h.extquiver(), labels).components();
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end());
  return comps;
}

MultiScaleStab scale_levels(MultiScaleStab m, int j, const CNum& f) {
  for (int i = j; i <= m.depth(); ++i)
    for (auto& [l, v] : m.levels[i].charge) v = v * f;
  return m;
}

// Tilts at quotient simples outside the closed upper half-plane, deepest level
// first, until every quotient charge of the levels j..L is back in it.
MultiScaleStab settle(MultiScaleStab m, int j, bool forward) {
  const int n = m.top.rank();
  const int cap = 4 * n * (n + 1) + 8;
  for (int i = m.depth(); i >= j; --i) {
    for (int step = 0;; ++step) {
      int pick = 0;
      const CentralCharge& z = m.levels[i].charge;
      for (int l : m.quotient_simples(i)) {
        const CNum& v = z.at(l);
        if (in_upper(v)) continue;
        if (!pick) {
          pick = l;
          continue;
        }
        int c = compare_phase(v, z.at(pick));
        if (forward ? c < 0 : c > 0) pick = l;
      }
      if (!pick) break;
      if (step >= cap) throw ValidationError("wall hit: level " + std::to_string(i) + " did not settle");
      m = lifted_tilt(m, pick, forward);
    }
  }
  return m;
}

}  // namespace

int MultiScaleStab::level_of(int label) const {
  int k = -1;
  for (int i = 0; i <= depth(); ++i)
    if (contains(levels[i].simples, label)) k = i;
  if (k < 0) throw ValidationError("unknown simple label " + std::to_string(label));
  return k;
}

std::vector<int> MultiScaleStab::quotient_simples(int i) const {
  if (i == depth()) return levels[i].simples;
  std::vector<int> out;
  for (int l : levels[i].simples)
    if (!contains(levels[i + 1].simples, l)) out.push_back(l);
  return out;
}

MultiScaleStab validate_msc(const Heart& top, const std::vector<CentralCharge>& level_charges) {
  if (level_charges.empty()) throw ValidationError("no level charges given");
  MultiScaleStab m{top, {}};
  std::vector<int> expected = top.labels();
  for (size_t i = 0; i < level_charges.size(); ++i) {
    const CentralCharge& z = level_charges[i];
    std::vector<int> keys;
    for (const auto& [l, v] : z) keys.push_back(l);
    std::string lvl = "level " + std::to_string(i);
    if (keys != expected)
      throw ValidationError(lvl + " charge must be given on exactly the simples " + label_list(expected) +
                            ", got " + label_list(keys));
    std::vector<int> zeros;
    std::ostringstream bad;
    for (const auto& [l, v] : z) {
      if (v.is_zero())
        zeros.push_back(l);
      else if (!in_upper(v))
        bad << " S" << l << " (" << v.str() << ")";
    }
    if (!bad.str().empty()) throw ValidationError(lvl + " charge outside the upper half-plane on" + bad.str());
    if (zeros.size() == keys.size()) throw ValidationError(lvl + " charge is identically zero");
    m.levels.push_back({keys, z});
    bool last = i + 1 == level_charges.size();
    if (zeros.empty() && !last)
      throw ValidationError(lvl + " charge vanishes nowhere but deeper levels are given");
    if (!zeros.empty() && last)
      throw ValidationError(lvl + " charge vanishes on " + label_list(zeros) + " but no level " +
                            std::to_string(i + 1) + " charge is given");
    expected = zeros;
  }
  // Each vanishing level, inside each component of the level above it, has
  // component sizes n_j with sum (n_j + 1) <= n + 1, equality only for two or
  // more components.
  for (int i = 1; i <= m.depth(); ++i) {
    for (const auto& amb : components_on(top, m.levels[i - 1].simples)) {
      std::vector<int> inside;
      for (int l : m.levels[i].simples)
        if (contains(amb, l)) inside.push_back(l);
      if (inside.empty()) continue;
      auto comps = components_on(top, inside);
      size_t sum = 0;
      for (const auto& c : comps) sum += c.size() + 1;
      size_t cap = amb.size() + 1;
      if (sum > cap || (sum == cap && comps.size() < 2))
        throw ValidationError("level " + std::to_string(i) + " vanishing simples " + label_list(inside) +
                              " do not form an admissible subcategory type");
    }
  }
  return m;
}

MultiScaleStab honest(const StabilityCondition& s) { return validate_msc(s.heart, {s.z}); }

StabilityCondition as_honest(const MultiScaleStab& m) {
  if (m.depth() != 0) throw UsageError("multi-scale datum has " + std::to_string(m.depth()) + " lower levels");
  return {m.top, m.levels[0].charge};
}

Rho type_rho(const MultiScaleStab& m) {
  Rho out;
  for (const auto& level : level_components(m)) {
    std::vector<int> sizes;
    for (const auto& c : level) sizes.push_back(static_cast<int>(c.size()));
    out.push_back(sizes);
  }
  return out;
}

std::vector<std::vector<std::vector<int>>> level_components(const MultiScaleStab& m) {
  std::vector<std::vector<std::vector<int>>> out;
  for (int i = 1; i <= m.depth(); ++i) out.push_back(components_on(m.top, m.levels[i].simples));
  return out;
}

namespace {

bool equivalent_impl(const MultiScaleStab& a, const MultiScaleStab& b, bool projective_top) {
  if (a.depth() != b.depth() || canonical_form(a.top) != canonical_form(b.top)) return false;
  // Match labels through equal classes.
  std::map<int, int> to_b;
  for (const Simple& s : a.top.simples())
    for (const Simple& t : b.top.simples())
      if (s.cls == t.cls) to_b[s.label] = t.label;
  if (to_b.size() != a.top.simples().size()) return false;
  for (int i = 0; i <= a.depth(); ++i) {
    std::vector<int> mapped;
    for (int l : a.levels[i].simples) mapped.push_back(to_b.at(l));
    std::sort(mapped.begin(), mapped.end());
    if (mapped != b.levels[i].simples) return false;
    const CentralCharge& za = a.levels[i].charge;
    const CentralCharge& zb = b.levels[i].charge;
    auto q = a.quotient_simples(i);
    if (i == 0 && !projective_top) {
      for (int l : q)
        if (!charge_close(za.at(l), zb.at(to_b.at(l)))) return false;
      continue;
    }
    // one scalar c with zb = c * za on the quotient simples
    CNum c = zb.at(to_b.at(q.front())) / za.at(q.front());
    for (int l : q)
      if (!charge_close(zb.at(to_b.at(l)), c * za.at(l))) return false;
  }
  return true;
}

}  // namespace

bool equivalent(const MultiScaleStab& a, const MultiScaleStab& b) { return equivalent_impl(a, b, false); }
bool projectively_equivalent(const MultiScaleStab& a, const MultiScaleStab& b) {
  return equivalent_impl(a, b, true);
}

MultiScaleStab tilt_msc(const MultiScaleStab& m, int s, bool forward) {
  int k = m.level_of(s);
  if (k < m.depth()) {
    for (int t : m.levels[k + 1].simples)
      if (forward ? m.top.ext1(t, s) : m.top.ext1(s, t))
        throw ValidationError("simple " + std::to_string(s) + " is not convenient: level " + std::to_string(k + 1) +
                              " simple " + std::to_string(t) + " extends it");
  }
  MultiScaleStab out = m;
  out.top = forward ? forward_tilt(m.top, s) : backward_tilt(m.top, s);
  for (int i = 0; i <= k; ++i) out.levels[i].charge = tilt_charges(m.top, m.levels[i].charge, s, forward);
  return out;
}

MultiScaleStab lifted_tilt(const MultiScaleStab& m, int s, bool forward) {
  int k = m.level_of(s);
  if (k == m.depth()) return tilt_msc(m, s, forward);
  const std::vector<int>& deeper = m.levels[k + 1].simples;
  auto attached = [&](const Heart& h) {
    for (int t : deeper)
      if (forward ? h.ext1(t, s) : h.ext1(s, t)) return true;
    return false;
  };
  if (!attached(m.top)) return tilt_msc(m, s, forward);

  const std::vector<KClass> before = classes_of(m.top, deeper);
  MultiScaleStab cur = m;
  std::vector<int> word;
  const int cap = 4 * static_cast<int>(deeper.size()) + 4;
  for (int round = 0; attached(cur.top); ++round) {
    if (round >= cap) throw InternalError("convenient representative did not converge");
    for (int t : convenient_chain(cur.top, deeper, s, forward)) {
      cur = lifted_tilt(cur, t, forward);
      word.push_back(t);
    }
  }
  cur = tilt_msc(cur, s, forward);
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = lifted_tilt(cur, *it, !forward);
  if (classes_of(cur.top, deeper) != before)
    throw InternalError("lifting the tilt at " + std::to_string(s) + " did not restore level " +
                        std::to_string(k + 1));
  return cur;
}

MultiScaleStab c_act_levels(const MultiScaleStab& m, const Lambda& lambda, int j) {
  if (j < 0 || j > m.depth()) throw UsageError("level index out of range");
  long k = lambda.floor_re();
  MultiScaleStab cur = m;
  if (j == 0) {
    cur.top = shift(m.top, k);
  } else {
    for (long step = 0; step < std::labs(k); ++step) cur = settle(scale_levels(cur, j, CNum(-1)), j, k > 0);
  }
  cur = scale_levels(cur, j, lambda.minus_integer(k).rotation());
  return settle(cur, j, true);
}

MultiScaleStab c_act_msc(const MultiScaleStab& m, const Lambda& lambda) { return c_act_levels(m, lambda, 0); }

MultiScaleStab plumb(const MultiScaleStab& m, const PlumbingParams& tau) {
  if (static_cast<int>(tau.size()) != m.depth())
    throw UsageError("plumbing needs " + std::to_string(m.depth()) + " parameters, got " +
                     std::to_string(tau.size()));
  MultiScaleStab cur = m;
  for (int j = m.depth(); j >= 1; --j) {
    if (!tau[j - 1]) continue;
    const Lambda& t = *tau[j - 1];
    if (!(t.exact ? t.exact->im < 0 : t.im < 0))
      throw ValidationError("plumbing parameter " + std::to_string(j) + " must have negative imaginary part");
    cur = c_act_levels(cur, t, j);
    // merge level j into level j-1
    CentralCharge merged = cur.levels[j - 1].charge;
    for (const auto& [l, v] : cur.levels[j].charge) merged[l] = v;
    cur.levels[j - 1].charge = merged;
    cur.levels.erase(cur.levels.begin() + j);
  }
  std::vector<CentralCharge> zs;
  for (const Level& l : cur.levels) zs.push_back(l.charge);
  try {
    return validate_msc(cur.top, zs);
  } catch (const ValidationError& e) {
    throw InternalError(std::string("plumbing produced an invalid datum: ") + e.what());
  }
}

CNum level_charge(const MultiScaleStab& m, int i, const KClass& gamma) {
  auto c = m.top.coordinates(gamma);
  auto labs = m.top.labels();
  CNum out;
  for (size_t k = 0; k < labs.size(); ++k) {
    if (c[k] == 0) continue;
    auto it = m.levels[i].charge.find(labs[k]);
    if (it == m.levels[i].charge.end())
      throw ValidationError("class is not in the level " + std::to_string(i) + " lattice");
    out += CNum(static_cast<long>(c[k])) * it->second;
  }
  return out;
}

long quotient_indecomposable_count(const MultiScaleStab& m) {
  auto labs = m.top.labels();
  auto q = m.quotient_simples(0);
  std::set<std::vector<long long>> seen;
  for (const KClass& c : indecomposable_classes(m.top)) {
    auto x = m.top.coordinates(c);
    std::vector<long long> proj;
    bool nonzero = false;
    for (size_t k = 0; k < labs.size(); ++k)
      if (contains(q, labs[k])) {
        proj.push_back(x[k]);
        nonzero |= x[k] != 0;
      }
    if (nonzero) seen.insert(proj);
  }
  return static_cast<long>(seen.size());
}

DefectResult commutation_defect(const MultiScaleStab& m, const Lambda& lambda, const Lambda& tau) {
  if (m.depth() != 1) throw UsageError("the commutation defect needs exactly one lower level");
  auto re = [](const Lambda& x) { return x.exact ? x.exact->re.get_d() : static_cast<double>(x.re); };
  Lambda sum = lambda + tau;
  if (re(lambda) < 0 || re(tau) < 0 || (sum.exact ? sum.exact->re >= 1 : sum.re >= 1))
    throw ValidationError("need 0 <= Re lambda, 0 <= Re tau and Re(lambda + tau) < 1");

  DefectResult r;
  r.sigma_tilde = c_act(as_honest(plumb(m, {tau})), lambda);
  r.sigma_hat = as_honest(plumb(c_act_msc(m, lambda), {tau}));
  r.max_simple_defect = 0;
  r.max_defect_radius = 0;
  r.zero_certified = true;
  for (const Simple& s : m.top.simples()) {
    CNum d = charge_of(r.sigma_hat.heart, r.sigma_hat.z, s.cls) - charge_of(r.sigma_tilde.heart, r.sigma_tilde.z, s.cls);
    long double v = std::abs(d.approx());
    r.max_simple_defect = std::max(r.max_simple_defect, v);
    r.max_defect_radius = std::max(r.max_defect_radius, d.radius());
    if (v > d.radius()) r.zero_certified = false;
  }
  long double mass1 = 0;
  for (int l : m.levels[1].simples) mass1 += std::abs(m.levels[1].charge.at(l).approx());
  r.ell = quotient_indecomposable_count(m);
  r.bound = static_cast<long double>(r.ell) * std::exp(std::numbers::pi_v<long double> * sum.im) * mass1;
  r.within_bound = r.max_simple_defect <= r.bound * (1 + 1e-9L) + r.max_defect_radius;
  r.tilde_intermediate = sign_coherent(r.sigma_tilde.heart, m.top);
  r.hat_intermediate = sign_coherent(r.sigma_hat.heart, m.top);
  return r;
}

namespace {

// For each level k of the candidate the base level with the same lattice, or
// an empty vector if the chains do not fit together.
std::vector<int> match_levels(const MultiScaleStab& candidate, const MultiScaleStab& base) {
  std::vector<int> top_of;
  int j = 0;
  for (int k = 0; k <= candidate.depth(); ++k) {
    auto ck = classes_of(candidate.top, candidate.levels[k].simples);
    while (j <= base.depth() && !same_span(ck, classes_of(base.top, base.levels[j].simples))) ++j;
    if (j > base.depth()) return {};
    top_of.push_back(j++);
  }
  if (top_of[0] != 0) return {};
  return top_of;
}

// Candidate level containing base level b.
int host_level(const std::vector<int>& top_of, int b) {
  int k = 0;
  while (k + 1 < static_cast<int>(top_of.size()) && top_of[k + 1] <= b) ++k;
  return k;
}

// Nearest rational with denominator <= 12 if x is within rounding of it.
// Recovered plumbing parameters are floats; snapping lets exact inputs
// replay exactly instead of hitting sign decisions on the real axis.
std::optional<Q> snap(long double x) {
  for (long den = 1; den <= 12; ++den) {
    long double num = std::round(x * den);
    if (std::abs(x * den - num) < 1e-12L * std::max(1.0L, std::abs(x * den))) return Q(static_cast<long>(num), den);
  }
  return std::nullopt;
}

}  // namespace

NeighborhoodVerdict in_neighborhood(const MultiScaleStab& candidate, const MultiScaleStab& base,
                                    const NeighborhoodSpec& spec) {
  NeighborhoodVerdict v;
  const int L = base.depth();
  v.tau.assign(L, std::nullopt);
  std::vector<int> top_of = match_levels(candidate, base);
  if (top_of.empty()) {
    v.reason = "vanishing chain does not arise from the base by plumbing";
    return v;
  }

  // ratio[b]: candidate charge over base charge at the pivot of base level b;
  // consecutive ratios inside one candidate level give exp(-pi i tau_b).
  std::vector<cld> ratio(L + 1, cld(1));
  PlumbingParams tau(L);
  const long double pi = std::numbers::pi_v<long double>;
  for (int b = 1; b <= L; ++b) {
    int k = host_level(top_of, b);
    int p = base.quotient_simples(b).front();
    ratio[b] = level_charge(candidate, k, base.top.class_of(p)).approx() / base.levels[b].charge.at(p).approx();
    if (top_of[k] == b) continue;
    cld r = ratio[b] / ratio[b - 1];
    long double mod = std::abs(r);
    if (!(mod < 1)) {
      v.reason = "level " + std::to_string(b) + " would need a plumbing parameter of size " +
                 std::to_string(static_cast<double>(mod));
      return v;
    }
    if (!spec.delta.empty() && !(mod < spec.delta.at(b - 1))) {
      v.reason = "plumbing size at level " + std::to_string(b) + " exceeds delta";
      return v;
    }
    cld t(-std::arg(r) / pi, std::log(mod) / pi);
    v.tau[b - 1] = t;
    auto re = snap(t.real()), im = snap(t.imag());
    if (re && im) {
      re->canonicalize();
      im->canonicalize();
      tau[b - 1] = Lambda(QComplex{*re, *im});
    } else {
      tau[b - 1] = Lambda(t.real(), t.imag());
    }
  }

  MultiScaleStab plumbed;
  try {
    plumbed = plumb(base, tau);
  } catch (const Error& e) {
    v.reason = std::string("plumbing the base failed: ") + e.what();
    return v;
  }
  if (plumbed.depth() != candidate.depth() || !heart_equal(plumbed.top, candidate.top)) {
    v.reason = "plumbed heart differs from the candidate heart";
    return v;
  }
  for (int k = 0; k <= candidate.depth(); ++k) {
    int b = top_of[k];
    cld scale = 1;
    if (k > 0) {
      const KClass& cp = base.top.class_of(base.quotient_simples(b).front());
      scale = level_charge(candidate, k, cp).approx() / level_charge(plumbed, k, cp).approx();
    }
    long double sq = 0, size = 1;
    for (int l : base.levels[b].simples) {
      const KClass& c = base.top.class_of(l);
      cld zc = level_charge(candidate, k, c).approx();
      sq += std::norm(zc - scale * level_charge(plumbed, k, c).approx());
      size = std::max(size, std::abs(zc));
    }
    long double eps = spec.epsilon.size() > static_cast<size_t>(k) ? spec.epsilon[k] : 1e-9L * size;
    if (!(std::sqrt(sq) < eps)) {
      v.reason = "charges at level " + std::to_string(k) + " differ by " +
                 std::to_string(static_cast<double>(std::sqrt(sq)));
      return v;
    }
  }
  v.accepted = true;
  return v;
}

ChartCoords chart_coords(const MultiScaleStab& point, const MultiScaleStab& base, const NeighborhoodSpec& spec) {
  NeighborhoodVerdict v = in_neighborhood(point, base, spec);
  if (!v.accepted) throw ValidationError("point is outside the neighborhood: " + v.reason);
  const int L = base.depth();
  ChartCoords out;
  TwistGroupData tw = simple_twist_data(type_rho(base));
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 1; i <= L; ++i) {
    if (!v.tau[i - 1]) {
      out.t.push_back(0);
    } else {
      long double ell = static_cast<long double>(tw.levels[i - 1].ell);
      out.t.push_back(std::exp(cld(0, -2 * pi) * *v.tau[i - 1] / ell));
    }
    out.pivots.push_back(base.quotient_simples(i).front());
  }
  std::vector<int> top_of = match_levels(point, base);
  std::vector<int> host(L + 1);
  for (int b = 0; b <= L; ++b) host[b] = host_level(top_of, b);
  for (int b = 0; b <= L; ++b) {
    std::vector<std::pair<int, cld>> row;
    cld norm = 1;
    if (b > 0) norm = level_charge(point, host[b], base.top.class_of(out.pivots[b - 1])).approx();
    for (int l : base.quotient_simples(b)) {
      if (b > 0 && l == out.pivots[b - 1]) continue;
      row.push_back({l, level_charge(point, host[b], base.top.class_of(l)).approx() / norm});
    }
    out.nonpivot_charges.push_back(row);
  }
  return out;
}

}  // namespace mstab
