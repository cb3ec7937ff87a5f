// Stability conditions on finite hearts and the C-action.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mstab/exact.hpp"
#include "mstab/hearts.hpp"

namespace mstab {

using CentralCharge = std::map<int, CNum>;  // simple label -> Z(S)

struct StabilityCondition {
  Heart heart;
  CentralCharge z;
};

// A complex parameter lambda. Exact rational parts when available, otherwise
// floating values only.
struct Lambda {
  long double re = 0, im = 0;
  std::optional<QComplex> exact;
  Lambda() = default;
  Lambda(const QComplex& q) : re(q.re.get_d()), im(q.im.get_d()), exact(q) {}  // NOLINT
  Lambda(long double r, long double i) : re(r), im(i) {}
  static Lambda parse(const std::string& s) { return Lambda(parse_qcomplex(s)); }
  long floor_re() const;
  Lambda minus_integer(long k) const;
  Lambda operator+(const Lambda& o) const;
  CNum rotation() const;  // exp(-pi i lambda)
};

StabilityCondition validate(const Heart& h, const CentralCharge& z);

CNum charge_of(const Heart& h, const CentralCharge& z, const KClass& gamma);
Phase phase(const StabilityCondition& s, const KClass& gamma);

struct Mass {
  std::optional<Surd> squared;  // exact |Z|^2 when the charge is exact
  long double value;
};
Mass mass(const StabilityCondition& s, const KClass& gamma);

// Charges on the simples after a simple tilt at s, matching forward_tilt /
// backward_tilt of the heart h (the heart before the tilt). Labels missing
// from z are skipped.
CentralCharge tilt_charges(const Heart& h, const CentralCharge& z, int s, bool forward);

enum class TiltOrder { MinPhase, Label, MaxLabel };

StabilityCondition c_act(const StabilityCondition& s, const Lambda& lambda,
                         TiltOrder order = TiltOrder::MinPhase);

struct SpectrumEntry {
  KClass cls;
  CNum charge;
  Phase phase;
  Mass mass;
};
std::vector<SpectrumEntry> indecomposable_spectrum(const StabilityCondition& s);

// Classes of all indecomposables (strings) of a heart, in the standard basis.
std::vector<KClass> indecomposable_classes(const Heart& h);

}  // namespace mstab
