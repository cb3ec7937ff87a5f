#include <doctest.h>

#include <random>

#include "mstab/stability.hpp"

using namespace mstab;

namespace {
CNum g(long re, long im) { return CNum(Q(re), Q(im)); }
}  // namespace

TEST_CASE("validation") {
  Heart a2 = standard_heart(2);
  CHECK_NOTHROW(validate(a2, {{1, CNum::i()}, {2, CNum::i()}}));
  CHECK_NOTHROW(validate(a2, {{1, CNum(Q(-1), Q(1, 3))}, {2, CNum(Q(1), Q(1, 3))}}));
  CHECK_THROWS_AS(validate(a2, {{1, CNum(1)}, {2, CNum::i()}}), ValidationError);
  CHECK_THROWS_AS(validate(a2, {{1, CNum(0)}, {2, CNum::i()}}), ValidationError);
  CHECK_THROWS_AS(validate(a2, {{1, CNum::i()}}), ValidationError);
}

TEST_CASE("charges, phases and masses") {
  Heart a2 = standard_heart(2);
  auto s = validate(a2, {{1, g(-1, 1)}, {2, g(1, 1)}});
  CHECK(charge_of(a2, s.z, {1, 1}) == g(0, 2));
  CHECK(phase(s, {1, 1}).exact == Q(1, 2));
  CHECK(phase(s, {1, 0}).exact == Q(3, 4));
  Mass m = mass(s, {1, 1});
  REQUIRE(m.squared);
  CHECK(m.squared->a == 4);
  CHECK(m.value == doctest::Approx(2.0));
  auto spectrum = indecomposable_spectrum(s);
  CHECK(spectrum.size() == 3);
  for (auto& e : spectrum) CHECK(in_upper(e.charge));
}

TEST_CASE("indecomposable classes of tilted hearts") {
  // the forward tilt at S2 of A2 has simples -e2 and e1+e2; its third
  // indecomposable is the extension with class e1
  auto cls = indecomposable_classes(forward_tilt(standard_heart(2), 2));
  std::sort(cls.begin(), cls.end());
  CHECK(cls == std::vector<KClass>{{0, -1}, {1, 0}, {1, 1}});
  for (int n = 1; n <= 5; ++n) CHECK(indecomposable_classes(standard_heart(n)).size() == size_t(n * (n + 1) / 2));
}

TEST_CASE("C-action by integers and half turns") {
  Heart a2 = standard_heart(2);
  auto s = validate(a2, {{1, g(-2, 1)}, {2, g(1, 1)}});
  auto one = c_act(s, Lambda::parse("1"));
  CHECK(heart_equal(one.heart, shift(a2, 1)));
  // Z is negated as a function on K(D) and the simples are negated too, so
  // the value on each label is unchanged
  CHECK(one.z.at(1) == g(-2, 1));
  CHECK(one.z.at(2) == g(1, 1));
  CHECK(charge_of(one.heart, one.z, {1, 0}) == g(2, -1));

  auto half = c_act(s, Lambda::parse("1/2"));
  CHECK(half.heart.class_of(2) == KClass{0, -1});
  CHECK(half.heart.class_of(1) == KClass{1, 1});
  CHECK(half.z.at(2) == g(-1, 1));
  CHECK(half.z.at(1) == g(2, 1));
  for (auto& [l, z] : half.z) CHECK(in_upper(z));
}

TEST_CASE("C-action by imaginary lambda scales charges") {
  Heart h = forward_tilt(standard_heart(3), 2);
  auto s = validate(h, {{1, g(1, 1)}, {2, g(-1, 0)}, {3, g(0, 2)}});
  auto r = c_act(s, Lambda::parse("-3/2i"));
  CHECK(heart_equal(r.heart, h));
  for (auto& [l, z] : s.z) CHECK(r.z.at(l) == z * CNum::exp_pi(Q(-3, 2)));
}

TEST_CASE("C-action is additive") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(0, 11), im(-4, 4);
  Heart h = apply_tilt_word(standard_heart(3), {1, -3});
  auto s = validate(h, {{1, g(-1, 2)}, {2, g(3, 1)}, {3, CNum(Q(1, 2), Q(1))}});
  for (int trial = 0; trial < 40; ++trial) {
    QComplex a{Q(num(rng), 12), Q(im(rng), 3)}, b{Q(num(rng), 12), Q(im(rng), 3)};
    a.re.canonicalize();
    b.re.canonicalize();
    if (!rotation_is_exact(a.re, a.im) || !rotation_is_exact(b.re, b.im) ||
        !rotation_is_exact(a.re + b.re, Q(0)))
      continue;
    auto two = c_act(c_act(s, Lambda(a)), Lambda(b));
    auto once = c_act(s, Lambda(a + b));
    CHECK(heart_equal(two.heart, once.heart));
    for (auto& [l, z] : once.z) CHECK(two.z.at(l) == z);
  }
}

TEST_CASE("tilt charges follow the heart") {
  Heart a2 = standard_heart(2);
  CentralCharge z{{1, g(-2, 1)}, {2, g(1, -1)}};
  CentralCharge t = tilt_charges(a2, z, 2, true);
  CHECK(t.at(2) == g(-1, 1));
  CHECK(t.at(1) == g(-1, 0));
}
