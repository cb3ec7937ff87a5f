#include <doctest.h>

#include <random>

#include "mstab/limits.hpp"
#include "support/random_msc.hpp"

using namespace mstab;

namespace {
LaurentCharge family(const std::vector<std::string>& zs) {
  LaurentCharge out;
  for (size_t k = 0; k < zs.size(); ++k) out[static_cast<int>(k) + 1] = parse_laurent(zs[k]);
  return out;
}
}  // namespace

TEST_CASE("Laurent parsing") {
  LaurentPoly p = parse_laurent("-1+it");
  CHECK(p.size() == 2);
  CHECK(p.at(0) == QComplex{Q(-1), Q(0)});
  CHECK(p.at(1) == QComplex{Q(0), Q(1)});
  LaurentPoly q = parse_laurent("(1+2i)t^-1 - 3/4 + i*t^2");
  CHECK(valuation(q) == -1);
  CHECK(leading(q) == CNum(Q(1), Q(2)));
  CHECK(q.at(2) == QComplex{Q(0), Q(1)});
  CHECK(laurent_add(p, p, -1).empty());
  auto fam = parse_family("(-1+it, 1+it)");
  REQUIRE(fam.size() == 2);
  CHECK(fam[1].at(0) == QComplex{Q(1), Q(0)});
  CHECK_THROWS_AS(parse_laurent("t^"), UsageError);
}

TEST_CASE("admissibility") {
  Heart a2 = standard_heart(2);
  CHECK(admissibility_problem(a2, family({"-1+it", "1+it"})).empty());
  CHECK_FALSE(admissibility_problem(a2, family({"1", "i"})).empty());
  CHECK_FALSE(admissibility_problem(a2, family({"-it", "i"})).empty());
  CHECK(admissibility_problem(a2, family({"1+it", "i"})).empty());
  CHECK_FALSE(admissibility_problem(a2, family({"0", "i"})).empty());
}

TEST_CASE("order relation") {
  Heart a2 = standard_heart(2);
  LevelAssignment flat = order_relation(a2, family({"-1+it", "1+it"}));
  CHECK(flat.valuations == std::vector<int>{0});
  CHECK(flat.level.at(1) == 0);
  CHECK(flat.level.at(2) == 0);

  LevelAssignment two = order_relation(a2, family({"i", "it"}));
  CHECK(two.level.at(1) == 0);
  CHECK(two.level.at(2) == 1);

  LevelAssignment three = order_relation(standard_heart(3), family({"i", "it", "it^2"}));
  CHECK(three.valuations == std::vector<int>{0, 1, 2});
  CHECK(three.level.at(3) == 2);
}

TEST_CASE("the A2 degeneration") {
  Heart a2 = standard_heart(2);
  LimitResult r = extract_limit(a2, family({"-1+it", "1+it"}));
  CHECK(r.exact_decisions);
  REQUIRE(r.lambda.has_value());
  MultiScaleStab m = r.msc;
  CHECK(m.depth() == 1);
  CHECK(type_rho(m) == Rho{{1}});
  CHECK(m.top.class_of(m.levels[1].simples.front()) == KClass{1, 1});
  MultiScaleStab un = unrotated_limit(r);
  int s2 = un.quotient_simples(0).front();
  CHECK(un.top.class_of(s2) == KClass{0, -1});
  CHECK(un.levels[0].charge.at(s2) == CNum(-1));
  int e = un.levels[1].simples.front();
  CHECK(un.levels[1].charge.at(e) == CNum(Q(0), Q(2)));
}

TEST_CASE("honest families") {
  Heart h = forward_tilt(standard_heart(3), 1);
  LimitResult r = extract_limit(h, family({"i", "-1+i", "2+i"}));
  CHECK(r.msc.depth() == 0);
  CHECK_FALSE(r.lambda.has_value());
  CHECK(heart_equal(r.msc.top, h));
  CHECK(r.msc.levels[0].charge.at(2) == CNum(Q(-1), Q(1)));
}

TEST_CASE("plumbed rays return their limit") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    MultiScaleStab m = testing::random_msc(4, 3, rng);
    std::vector<int> ex{0};
    std::vector<Q> sc{Q(1)};
    for (int k = 1; k <= m.depth(); ++k) {
      ex.push_back(ex.back() + 1 + trial % 2);
      sc.push_back(Q(k + 1, 2));
    }
    LaurentCharge ray = plumbing_ray(m, ex, sc);
    LimitResult r = extract_limit(m.top, ray);
    CHECK(equivalent(unrotated_limit(r), m));
  }
}
