// Multi-scale stability conditions: nested simple subsets of one top heart
// with one central charge per level.
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mstab/klattice.hpp"
#include "mstab/stability.hpp"

namespace mstab {

struct Level {
  std::vector<int> simples;  // sorted labels of the top heart
  CentralCharge charge;      // defined on exactly these labels
};

struct MultiScaleStab {
  Heart top;
  std::vector<Level> levels;  // levels[0].simples = all labels

  int depth() const { return static_cast<int>(levels.size()) - 1; }  // L
  // Deepest level whose simple set contains the label.
  int level_of(int label) const;
  // Labels of level i that do not survive to level i+1.
  std::vector<int> quotient_simples(int i) const;
};

// Builds and checks a multi-scale stability condition; the simple subset of
// each level is the key set of its charge.
MultiScaleStab validate_msc(const Heart& top, const std::vector<CentralCharge>& level_charges);
MultiScaleStab honest(const StabilityCondition& s);
StabilityCondition as_honest(const MultiScaleStab& m);  // requires L = 0

Rho type_rho(const MultiScaleStab& m);
// Per level i >= 1 the components of the restricted ext-quiver.
std::vector<std::vector<std::vector<int>>> level_components(const MultiScaleStab& m);

bool equivalent(const MultiScaleStab& a, const MultiScaleStab& b);
bool projectively_equivalent(const MultiScaleStab& a, const MultiScaleStab& b);

// Simple tilt of the whole nested datum. Requires that no simple of the level
// just below the deepest level containing s has an extension with s in the
// direction of the tilt.
MultiScaleStab tilt_msc(const MultiScaleStab& m, int s, bool forward);
// Same, first passing to a convenient representative inside the deeper levels
// and undoing it afterwards (recursively through all deeper levels).
MultiScaleStab lifted_tilt(const MultiScaleStab& m, int s, bool forward);

// The C-action on the levels j..L only (j = 0 is the full action).
MultiScaleStab c_act_levels(const MultiScaleStab& m, const Lambda& lambda, int j);
MultiScaleStab c_act_msc(const MultiScaleStab& m, const Lambda& lambda);

// Entry per level 1..L; nullopt stands for -i*infinity.
using PlumbingParams = std::vector<std::optional<Lambda>>;
MultiScaleStab plumb(const MultiScaleStab& m, const PlumbingParams& tau);

struct DefectResult {
  StabilityCondition sigma_tilde;  // lambda . (tau * m)
  StabilityCondition sigma_hat;    // tau * (lambda . m)
  long double max_simple_defect;
  long double max_defect_radius;  // rounding enclosure of the differences
  bool zero_certified;            // every difference encloses 0
  long double bound;
  long ell;
  bool within_bound;
  bool tilde_intermediate, hat_intermediate;
};
DefectResult commutation_defect(const MultiScaleStab& m, const Lambda& lambda, const Lambda& tau);

// Number of distinct nonzero images of indecomposable classes of the top
// heart in the level-0 quotient lattice.
long quotient_indecomposable_count(const MultiScaleStab& m);

struct NeighborhoodSpec {
  std::vector<long double> delta;    // per level 1..L; empty means no bound
  std::vector<long double> epsilon;  // per level of the candidate; empty means 1e-9 relative
};

struct NeighborhoodVerdict {
  bool accepted = false;
  std::vector<std::optional<std::complex<long double>>> tau;  // per base level 1..L
  std::string reason;
};
NeighborhoodVerdict in_neighborhood(const MultiScaleStab& candidate, const MultiScaleStab& base,
                                    const NeighborhoodSpec& spec = {});

struct ChartCoords {
  std::vector<std::complex<long double>> t;  // per level 1..L
  // per level 0..L: (label, normalized charge) of the non-pivot quotient simples
  std::vector<std::vector<std::pair<int, std::complex<long double>>>> nonpivot_charges;
  std::vector<int> pivots;  // per level 1..L
};
ChartCoords chart_coords(const MultiScaleStab& point, const MultiScaleStab& base,
                         const NeighborhoodSpec& spec = {});

// K-linear map of level i evaluated on a class of V_i, via the top heart.
CNum level_charge(const MultiScaleStab& m, int i, const KClass& gamma);

}  // namespace mstab
