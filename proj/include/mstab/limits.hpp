// Limits of one-parameter families of central charges given as Laurent
// polynomials in t (t -> 0+).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mstab/multiscale.hpp"

namespace mstab {

using LaurentPoly = std::map<int, QComplex>;      // power -> nonzero coefficient
using LaurentCharge = std::map<int, LaurentPoly>;  // simple label -> family

LaurentPoly laurent_add(const LaurentPoly& a, const LaurentPoly& b, long factor = 1);
int valuation(const LaurentPoly& p);  // lowest power; p must be nonzero
CNum leading(const LaurentPoly& p);

// Parses "-1+it", "i*t^2 - 3/4", "(1+2i)t^-1" and so on.
LaurentPoly parse_laurent(const std::string& text);
// Parses a parenthesised, comma separated list such as "(-1+it, 1+it)".
std::vector<LaurentPoly> parse_family(const std::string& text);

// Empty string when Z(t) lies in the semi-closed upper half-plane for all
// small t > 0 on every simple; otherwise the reason.
std::string admissibility_problem(const Heart& h, const LaurentCharge& zc);

struct LevelAssignment {
  std::map<int, int> level;     // label -> level index
  std::vector<int> valuations;  // per level, increasing
};
LevelAssignment order_relation(const Heart& h, const LaurentCharge& zc);

struct LimitResult {
  // Limit of the rotated family exp(-pi i lambda) Z(t); exact when no
  // rotation was needed or lambda is an exact angle.
  MultiScaleStab msc;
  std::optional<Q> lambda;
  // The family transported to msc.top, unrotated, and its leading
  // coefficients per level (zero on deeper simples).
  LaurentCharge family;
  std::vector<CentralCharge> leads;
  bool exact_decisions = true;  // tilts were decided from exact leading terms
};

LimitResult extract_limit(const Heart& h, const LaurentCharge& zc);

// The limit with the rotation undone: leads on the tilted heart. Throws
// ValidationError if those leads do not form a multi-scale datum.
MultiScaleStab unrotated_limit(const LimitResult& r);

// The family t^{a_k} c_k Z_k(S) + (higher order terms) on the top heart of m,
// S a quotient simple of level k. exponents must increase from a_0 = 0; the
// scalars c_k are positive; noise adds the given terms to every simple, shifted
// by its level exponent, and must keep the family admissible.
LaurentCharge plumbing_ray(const MultiScaleStab& m, const std::vector<int>& exponents,
                           const std::vector<Q>& scalars, const LaurentPoly& noise = {});

}  // namespace mstab
