#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mstab/multiscale.hpp"
#include "support/random_msc.hpp"

using namespace mstab;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// Top heart {S2[1]: -e2, E: e1+e2}; label 2 is S2[1], label 1 is E.
MultiScaleStab a2_limit(CNum z1 = CNum(-1)) {
  Heart top = forward_tilt(standard_heart(2), 2);
  return validate_msc(top, {{{2, CNum(-1)}, {1, CNum(0)}}, {{1, z1}}});
}

}  // namespace

TEST_CASE("validation of nested data") {
  MultiScaleStab m = a2_limit();
  CHECK(m.depth() == 1);
  CHECK(m.levels[1].simples == std::vector<int>{1});
  CHECK(m.level_of(1) == 1);
  CHECK(m.level_of(2) == 0);
  CHECK(m.quotient_simples(0) == std::vector<int>{2});
  CHECK(type_rho(m) == Rho{{1}});
  // Z1(E) on the positive real axis is not in the semi-closed upper half-plane
  CHECK_THROWS_AS(a2_limit(CNum(1)), ValidationError);

  Heart a2 = standard_heart(2);
  CHECK_THROWS_AS(validate_msc(a2, {{{1, CNum(0)}, {2, CNum::i()}}}), ValidationError);
  MultiScaleStab ok = validate_msc(a2, {{{1, CNum(0)}, {2, CNum::i()}}, {{1, CNum::i()}}});
  CHECK(ok.depth() == 1);
  // level sets must shrink strictly
  CHECK_THROWS_AS(validate_msc(a2, {{{1, CNum::i()}, {2, CNum::i()}}, {{1, CNum::i()}, {2, CNum::i()}}}),
                  ValidationError);
}

TEST_CASE("honest conditions are depth zero") {
  Heart h = standard_heart(3);
  auto s = validate(h, {{1, CNum::i()}, {2, CNum(-1)}, {3, CNum(Q(1), Q(2))}});
  MultiScaleStab m = honest(s);
  CHECK(m.depth() == 0);
  CHECK(type_rho(m).empty());
  auto back = as_honest(m);
  CHECK(back.z.at(3) == s.z.at(3));
  CHECK_THROWS(as_honest(a2_limit()));
}

TEST_CASE("equivalence") {
  MultiScaleStab m = a2_limit();
  CHECK(equivalent(m, m));
  MultiScaleStab scaled = a2_limit(CNum(Q(-3), Q(1)) * CNum(2));
  MultiScaleStab other = a2_limit(CNum(Q(-3), Q(1)));
  CHECK(equivalent(scaled, other));
  auto rotated = validate_msc(m.top, {{{2, CNum::i()}, {1, CNum(0)}}, {{1, CNum(-1)}}});
  CHECK_FALSE(equivalent(rotated, m));
  CHECK(projectively_equivalent(rotated, m));
}

TEST_CASE("plumbing the A2 limit") {
  MultiScaleStab m = a2_limit();
  MultiScaleStab same = plumb(m, {std::nullopt});
  CHECK(equivalent(same, m));

  MultiScaleStab p = plumb(m, {Lambda::parse("-2i")});
  CHECK(p.depth() == 0);
  CHECK(heart_equal(p.top, m.top));
  CHECK(p.levels[0].charge.at(2) == CNum(-1));
  CHECK(p.levels[0].charge.at(1) == -CNum::exp_pi(Q(-2)));
  CHECK(p.levels[0].charge.at(1).approx().real() == doctest::Approx(-std::exp(-2 * kPi)).epsilon(1e-15));

  MultiScaleStab q = plumb(m, {Lambda::parse("1-2i")});
  CHECK(q.depth() == 0);
  CHECK(heart_equal(q.top, forward_tilt(m.top, 1)));
  CHECK(q.top.class_of(1) == KClass{-1, -1});
  CHECK(q.levels[0].charge.at(2) == CNum(-1));
  CHECK(q.levels[0].charge.at(1) == -CNum::exp_pi(Q(-2)));

  CHECK_THROWS_AS(plumb(m, {Lambda::parse("1+2i")}), ValidationError);
  CHECK_THROWS_AS(plumb(m, {}), UsageError);
}

TEST_CASE("C-action on nested data") {
  MultiScaleStab m = a2_limit();
  MultiScaleStab one = c_act_msc(m, Lambda::parse("1"));
  CHECK(heart_equal(one.top, shift(m.top, 1)));
  CHECK(one.levels[1].simples == m.levels[1].simples);

  MultiScaleStab im = c_act_msc(m, Lambda::parse("-1/2i"));
  CHECK(heart_equal(im.top, m.top));
  for (int i = 0; i <= 1; ++i)
    for (auto& [l, z] : m.levels[i].charge) CHECK(im.levels[i].charge.at(l) == z * CNum::exp_pi(Q(-1, 2)));

  MultiScaleStab half = c_act_msc(m, Lambda::parse("1/2"));
  CHECK(half.depth() == 1);
  CHECK(type_rho(half) == Rho{{1}});
  // the vanishing class E survives
  CHECK(half.top.class_of(half.levels[1].simples.front()) == KClass{1, 1});
  for (auto& [l, z] : half.levels[0].charge)
    if (half.level_of(l) == 0) CHECK(in_upper(z));
}

TEST_CASE("C-action on random data is additive") {
  std::mt19937 rng(20261017);
  for (int trial = 0; trial < 30; ++trial) {
    MultiScaleStab m = testing::random_msc(3, 2, rng);
    Lambda a = Lambda::parse("1/3-1/2i"), b = Lambda::parse("1/3+i");
    MultiScaleStab two = c_act_msc(c_act_msc(m, a), b);
    MultiScaleStab once = c_act_msc(m, Lambda::parse("2/3+1/2i"));
    CHECK(equivalent(two, once));
  }
}

TEST_CASE("commutation defect") {
  MultiScaleStab m = a2_limit();
  DefectResult pure = commutation_defect(m, Lambda::parse("1/2i"), Lambda::parse("1/4-3i"));
  CHECK(pure.zero_certified);
  CHECK(pure.max_simple_defect == 0);

  DefectResult r = commutation_defect(m, Lambda::parse("1/4"), Lambda::parse("1/4-3i"));
  CHECK(r.within_bound);
  CHECK(r.max_simple_defect <= r.bound);

  long double prev = INFINITY;
  for (const char* tau : {"-5i", "-10i", "-20i"}) {
    DefectResult s = commutation_defect(m, Lambda::parse("1/4"), Lambda::parse(tau));
    CHECK(s.within_bound);
    CHECK(s.max_simple_defect <= prev);
    prev = s.max_simple_defect;
  }
}

TEST_CASE("neighborhood roundtrip") {
  MultiScaleStab base = a2_limit(CNum(Q(-1), Q(1)));
  NeighborhoodVerdict self = in_neighborhood(base, base);
  CHECK(self.accepted);
  REQUIRE(self.tau.size() == 1);
  CHECK_FALSE(self.tau[0].has_value());

  for (const char* t0 : {"-2i", "1/4-2i", "-1/3-3/2i"}) {
    Lambda tau = Lambda::parse(t0);
    MultiScaleStab cand = plumb(base, {tau});
    NeighborhoodVerdict v = in_neighborhood(cand, base);
    CHECK_MESSAGE(v.accepted, v.reason);
    REQUIRE(v.tau[0].has_value());
    CHECK(v.tau[0]->imag() == doctest::Approx(static_cast<double>(tau.im)).epsilon(1e-12));
    // real parts agree up to an even integer
    long double shift = (v.tau[0]->real() - tau.re) / 2;
    CHECK(std::abs(shift - std::round(shift)) < 1e-12L);
  }

  NeighborhoodSpec tight;
  tight.delta = {1e-4L};
  CHECK_FALSE(in_neighborhood(plumb(base, {Lambda::parse("-1i")}), base, tight).accepted);

  MultiScaleStab elsewhere = validate_msc(standard_heart(2), {{{1, CNum(0)}, {2, CNum::i()}}, {{1, CNum::i()}}});
  CHECK_FALSE(in_neighborhood(elsewhere, base).accepted);
}

TEST_CASE("chart coordinates") {
  MultiScaleStab base = a2_limit();
  ChartCoords c0 = chart_coords(base, base);
  REQUIRE(c0.t.size() == 1);
  CHECK(std::abs(c0.t[0]) == 0);
  CHECK(c0.pivots == std::vector<int>{1});

  // ell = 2 for a single A1 component, so t = exp(-2 pi i tau / 2)
  ChartCoords c = chart_coords(plumb(base, {Lambda::parse("-2i")}), base);
  CHECK(std::abs(c.t[0]) == doctest::Approx(std::exp(-2 * kPi)).epsilon(1e-12));
  CHECK(std::abs(std::arg(c.t[0])) < 1e-12L);
  ChartCoords d = chart_coords(plumb(base, {Lambda::parse("1/2-2i")}), base);
  CHECK(std::arg(d.t[0]) == doctest::Approx(-kPi / 2).epsilon(1e-12));
  CHECK_THROWS_AS(chart_coords(validate_msc(standard_heart(2), {{{1, CNum(0)}, {2, CNum::i()}}, {{1, CNum::i()}}}),
                               base),
                  ValidationError);
}

TEST_CASE("level charges and quotient counts") {
  MultiScaleStab m = a2_limit(CNum::i());
  CHECK(level_charge(m, 0, {1, 0}) == CNum(-1));
  CHECK(level_charge(m, 1, {1, 1}) == CNum::i());
  CHECK_THROWS_AS(level_charge(m, 1, {0, 1}), ValidationError);
  CHECK(quotient_indecomposable_count(m) == 1);
  CHECK(level_components(m) == std::vector<std::vector<std::vector<int>>>{{{1}}});
}

TEST_CASE("tilts of nested data") {
  // Ext^1(S2[1], E) != 0, so a plain backward tilt at S2[1] is refused
  MultiScaleStab m = a2_limit();
  CHECK_NOTHROW(tilt_msc(m, 2, true));
  CHECK_THROWS_AS(tilt_msc(m, 2, false), ValidationError);
  MultiScaleStab t = lifted_tilt(m, 2, false);
  CHECK(t.depth() == 1);
  CHECK(type_rho(t) == Rho{{1}});
  CHECK(t.top.class_of(1) == KClass{1, 1});
  MultiScaleStab back = lifted_tilt(t, 2, true);
  CHECK(equivalent(back, m));
}
