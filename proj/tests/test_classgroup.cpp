#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quadrank/classgroup.hpp"
#include "quadrank/criteria.hpp"
#include "quadrank/sieve.hpp"

using namespace quadrank;

TEST_CASE("worked class groups") {
  // D = -20: forms x^2 + 5y^2 and 2x^2 + 2xy + 3y^2
  auto g = narrow_class_group(-20);
  CHECK(g.order == 2);
  REQUIRE(g.elementary_divisors.size() == 1);
  CHECK(g.elementary_divisors[0] == 2);

  auto t = narrow_class_group(-4);
  CHECK(t.order == 1);
  CHECK(t.elementary_divisors.empty());

  auto h40 = narrow_class_group(40);
  CHECK(h40.order == 2);

  // D = 60: narrow class group (Z/2)^2 (fundamental unit is totally positive)
  auto h60 = narrow_class_group(60);
  CHECK(h60.order == 4);
  REQUIRE(h60.elementary_divisors.size() == 2);
  CHECK(h60.elementary_divisors[0] == 2);
  CHECK(h60.elementary_divisors[1] == 2);

  // classical small class numbers
  CHECK(narrow_class_group(-23).order == 3);
  CHECK(narrow_class_group(-47).order == 5);
  CHECK(narrow_class_group(-71).order == 7);
  CHECK(narrow_class_group(-163).order == 1);
}

TEST_CASE("rank profiles") {
  auto r = rank_profile(-6052);  // -4 * 17 * 89
  CHECK(r.rk2 == 2);
  CHECK(r.rk4 == 2);

  auto r20 = rank_profile(-20);
  CHECK(r20.rk2 == 1);
  CHECK(r20.rk4 == 0);
  CHECK(r20.rk8 == 0);
}

TEST_CASE("oracle errors") {
  CHECK_THROWS_AS(narrow_class_group(-25), Error);
  CHECK_THROWS_AS(narrow_class_group(25), Error);
  CHECK_THROWS_AS(narrow_class_group(i64(2) * kOracleDiscriminantCap), Error);
}

TEST_CASE("fundamental discriminant predicate") {
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(8));
  CHECK(is_fundamental_discriminant(-20));
  CHECK(is_fundamental_discriminant(12));  // 4*3, 3 ≡ 3 (mod 4)
  CHECK(is_fundamental_discriminant(-23));
  CHECK_FALSE(is_fundamental_discriminant(-25));
  CHECK_FALSE(is_fundamental_discriminant(0));
  CHECK_FALSE(is_fundamental_discriminant(1));
  CHECK_FALSE(is_fundamental_discriminant(-18));
}

TEST_CASE("group axioms on full tables") {
  std::vector<i64> discs = {-20, -84, -420, -6052, -1155, 40, 60, 120, 840, 4620, 8 * 17 * 89};
  for (i64 D : discs) {
    FormClassGroup g(D);
    i64 h = g.order();
    int e = g.identity();
    for (int i = 0; i < h; ++i) {
      CHECK(g.compose(e, i) == i);
      CHECK(g.compose(i, g.inverse(i)) == e);
      for (int j = 0; j < h; ++j) {
        CHECK(g.compose(i, j) == g.compose(j, i));
        for (int k = 0; k < h && h <= 24; ++k)
          CHECK(g.compose(g.compose(i, j), k) == g.compose(i, g.compose(j, k)));
      }
    }
  }
}

TEST_CASE("genus theory rk2 = omega(|D|) - 1") {
  for (i64 D = -400; D < 400; ++D) {
    if (!is_fundamental_discriminant(D)) continue;
    auto r = rank_profile(D);
    CHECK(r.rk2 == omega_u64(u64(D < 0 ? -D : D)) - 1);
  }
}

TEST_CASE("order equals product of elementary divisors") {
  std::mt19937_64 rng(2025);
  for (int it = 0; it < 40; ++it) {
    i64 D = i64(rng() % 5000) + 3;
    if (rng() & 1) D = -D;
    if (!is_fundamental_discriminant(D)) continue;
    auto s = narrow_class_group(D);
    i64 prod = 1;
    i64 prev = 1;
    for (i64 d : s.elementary_divisors) {
      prod *= d;
      CHECK(d % prev == 0);  // ascending divisibility chain
      prev = d;
    }
    CHECK(prod == s.order);
  }
}

TEST_CASE("rk4 criterion matches the oracle (Prop. 4rank) on a small range") {
  PrimeSieve sieve(1200);
  SpfTable spf(4 * 3600);
  std::vector<i64> primes1mod4;
  sieve.for_primes(5, 1200, [&](i64 p) {
    if (p % 4 == 1) primes1mod4.push_back(p);
  });
  int checked = 0;
  for (std::size_t i = 0; i < primes1mod4.size(); ++i) {
    for (std::size_t j = i + 1; j < primes1mod4.size(); ++j) {
      i64 p = primes1mod4[i], q = primes1mod4[j];
      if (p * q > 3600) continue;
      bool crit = rk4_is_two(p, q);
      for (int d : {-4, 8}) {
        auto r = rank_profile(i64(d) * p * q, &spf);
        CHECK(r.rk2 == 2);
        CHECK((r.rk4 == 2) == crit);
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}
