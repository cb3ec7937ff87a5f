#include "mstab/stability.hpp"

#include <cmath>
#include <sstream>

namespace mstab {

long Lambda::floor_re() const {
  if (exact) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), exact->re.get_num_mpz_t(), exact->re.get_den_mpz_t());
    return f.get_si();
  }
  return static_cast<long>(std::floor(re));
}

Lambda Lambda::minus_integer(long k) const {
  if (exact) return Lambda(QComplex{exact->re - k, exact->im});
  return Lambda(re - k, im);
}

Lambda Lambda::operator+(const Lambda& o) const {
  if (exact && o.exact) return Lambda(*exact + *o.exact);
  return Lambda(re + o.re, im + o.im);
}

CNum Lambda::rotation() const {
  if (exact) return mstab::rotation(exact->re, exact->im);
  return rotation_numeric(re, im);
}

StabilityCondition validate(const Heart& h, const CentralCharge& z) {
  std::ostringstream bad;
  for (int l : h.labels()) {
    auto it = z.find(l);
    if (it == z.end()) {
      bad << " S" << l << " (no charge)";
      continue;
    }
    if (it->second.is_zero())
      bad << " S" << l << " (zero)";
    else if (!in_upper(it->second))
      bad << " S" << l << " (outside the upper half-plane: " << it->second.str() << ")";
  }
  for (const auto& [l, v] : z)
    if (!h.has_label(l)) bad << " label " << l << " (not a simple)";
  if (!bad.str().empty()) throw ValidationError("invalid central charge:" + bad.str());
  return {h, z};
}

CNum charge_of(const Heart& h, const CentralCharge& z, const KClass& gamma) {
  auto c = h.coordinates(gamma);
  auto labs = h.labels();
  CNum out;
  for (size_t k = 0; k < labs.size(); ++k) {
    if (c[k] == 0) continue;
    auto it = z.find(labs[k]);
    if (it == z.end()) throw ValidationError("charge missing on simple " + std::to_string(labs[k]));
    out += CNum(static_cast<long>(c[k])) * it->second;
  }
  return out;
}

Phase phase(const StabilityCondition& s, const KClass& gamma) {
  return phase_of(charge_of(s.heart, s.z, gamma));
}

Mass mass(const StabilityCondition& s, const KClass& gamma) {
  CNum v = charge_of(s.heart, s.z, gamma);
  Mass m;
  m.value = std::abs(v.approx());
  if (v.exact()) m.squared = v.norm2();
  return m;
}

CentralCharge tilt_charges(const Heart& h, const CentralCharge& z, int s, bool forward) {
  CentralCharge out = z;
  auto zs = z.find(s);
  if (zs == z.end()) return out;
  for (auto& [t, v] : out) {
    if (t == s) {
      v = -zs->second;
      continue;
    }
    int e = forward ? h.ext1(t, s) : h.ext1(s, t);
    if (e) v += CNum(static_cast<long>(e)) * zs->second;
  }
  return out;
}

StabilityCondition c_act(const StabilityCondition& s, const Lambda& lambda, TiltOrder order) {
  long k = lambda.floor_re();
  Heart h = shift(s.heart, k);
  CNum f = lambda.minus_integer(k).rotation();
  CentralCharge z;
  for (const auto& [l, v] : s.z) z[l] = v * f;

  const int n = h.rank();
  const int cap = 4 * n * (n + 1) + 8;
  for (int step = 0;; ++step) {
    int pick = 0;
    for (const auto& [l, v] : z) {
      if (in_upper(v)) continue;
      if (!pick) {
        pick = l;
        continue;
      }
      if (order == TiltOrder::MaxLabel) {
        pick = l;
      } else if (order == TiltOrder::MinPhase && compare_phase(v, z[pick]) < 0) {
        pick = l;
      }
    }
    if (!pick) break;
    if (step >= cap) throw ValidationError("wall hit: tilt loop did not settle");
    z = tilt_charges(h, z, pick, true);
    h = forward_tilt(h, pick);
  }
  return {h, z};
}

std::vector<KClass> indecomposable_classes(const Heart& h) {
  std::vector<KClass> out;
  auto labs = h.labels();
  for (const StringObject& st : enumerate_strings(h.extquiver())) {
    KClass c(h.rank(), 0);
    for (size_t k = 0; k < labs.size(); ++k) {
      const KClass& sc = h.class_of(labs[k]);
      for (int r = 0; r < h.rank(); ++r) c[r] += st.dimension_vector[k] * sc[r];
    }
    out.push_back(c);
  }
  return out;
}

std::vector<SpectrumEntry> indecomposable_spectrum(const StabilityCondition& s) {
  std::vector<SpectrumEntry> out;
  for (const KClass& c : indecomposable_classes(s.heart)) {
    CNum v = charge_of(s.heart, s.z, c);
    Mass m;
    m.value = std::abs(v.approx());
    if (v.exact()) m.squared = v.norm2();
    out.push_back({c, v, phase_of(v), m});
  }
  return out;
}

}  // namespace mstab
