#include <doctest.h>

#include "mstab/klattice.hpp"

using namespace mstab;

namespace {

IntMatrix id(int n) { return IntMatrix::Identity(n, n); }

// Direct evaluation of gamma -> gamma - sign * chi(e_i, gamma) e_i on each
// basis vector, with chi from arrow counts.
IntMatrix oracle_twist(const Quiver& q, int i, int sign) {
  int n = q.size();
  IntMatrix m = id(n);
  int ii = q.index_of(i);
  for (int c = 0; c < n; ++c) {
    int v = q.vertices()[c];
    long long chi = q.arrows_between(v, i) - q.arrows_between(i, v);
    m(ii, c) -= sign * chi;
  }
  return m;
}

}  // namespace

TEST_CASE("twist matrices of A2") {
  Quiver a2 = make_linear(2);
  IntMatrix t1 = twist_matrix(a2, 1, 1);
  CHECK(t1(0, 0) == 1);
  CHECK(t1(1, 0) == 0);
  CHECK(t1(0, 1) == 1);  // e2 -> e2 + e1
  CHECK(t1(1, 1) == 1);
  IntMatrix t2 = twist_matrix(a2, 2, 1);
  IntMatrix expected(2, 2);
  expected << 1, 0, -1, 1;
  CHECK(t2 == expected);
}

TEST_CASE("twists fix their own class and match the oracle") {
  Quiver q = make_linear(4);
  for (int k : {2, 3, 1}) {
    q = mutate(q, k);
    for (int i : q.vertices())
      for (int sign : {1, -1}) {
        IntMatrix t = twist_matrix(q, i, sign);
        CHECK(t == oracle_twist(q, i, sign));
        CHECK(t.col(q.index_of(i)) == id(4).col(q.index_of(i)));
        CHECK(t * twist_matrix(q, i, -sign) == id(4));
      }
  }
}

TEST_CASE("words") {
  Quiver a2 = make_linear(2);
  CHECK(word_matrix(a2, {}) == id(2));
  CHECK(word_matrix(a2, parse_braid_word("(1 2)^3")) == -id(2));
  BraidWord w = parse_braid_word("1 2^-1 1 2");
  BraidWord ww = w;
  for (auto& l : inverse_word(w)) ww.push_back(l);
  CHECK(word_matrix(a2, ww) == id(2));
  CHECK(power_word(w, 2).size() == 8);
  CHECK(parse_braid_word("1^-1 (2 3)^-2") ==
        BraidWord{{1, -1}, {3, -1}, {2, -1}, {3, -1}, {2, -1}});
  CHECK_THROWS_AS(parse_braid_word("1 (2"), UsageError);
}

TEST_CASE("theta words are central on their interval") {
  Quiver a2 = make_linear(2);
  CHECK(theta_word(a2, {1, 2}) == parse_braid_word("(1 2)^3"));
  CHECK(theta_word(a2, {2}) == parse_braid_word("2 2"));
  Quiver a5 = make_linear(5);
  for (std::vector<int> iv : {std::vector<int>{2, 3, 4}, std::vector<int>{1, 2}, std::vector<int>{3}}) {
    IntMatrix th = word_matrix(a5, theta_word(a5, iv));
    for (int j : iv) {
      IntMatrix t = twist_matrix(a5, j, 1);
      CHECK(th * t == t * th);
    }
  }
}

TEST_CASE("simple twist data") {
  auto one = simple_twist_data({{1}});
  REQUIRE(one.levels.size() == 1);
  auto c = one.levels[0].components.at(0);
  CHECK(c.kappa == 4);
  CHECK(c.kappa_hat == 2);
  CHECK(one.levels[0].ell == 2);
  CHECK(c.exponent == 1);
  CHECK(c.theta_power == 1);

  auto two = simple_twist_data({{2}});
  c = two.levels[0].components.at(0);
  CHECK(c.kappa == 5);
  CHECK(c.kappa_hat == 5);
  CHECK(two.levels[0].ell == 5);
  CHECK(c.exponent == 1);
  CHECK(c.theta_power == 2);

  auto cherry = simple_twist_data({{1, 1}});
  CHECK(cherry.levels[0].ell == 2);
  for (auto& cc : cherry.levels[0].components) {
    CHECK(cc.kappa_hat == 2);
    CHECK(cc.exponent == 1);
  }

  // lcm of 2 and 5
  auto mixed = simple_twist_data({{1, 2}});
  CHECK(mixed.levels[0].ell == 10);
  CHECK(mixed.levels[0].components[0].exponent * mixed.levels[0].components[0].kappa_hat == 10);
  CHECK(mixed.levels[0].components[1].exponent * mixed.levels[0].components[1].kappa_hat == 10);
}
