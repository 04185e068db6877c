/** @file test_fock.cpp
 *  @brief Multi-indices, ladder action, multisets and index sets. */
#include "doctest.h"
#include "opeforge/errors.hpp"
#include "opeforge/fock.hpp"

using namespace opeforge;

namespace {
SignedMode plus(int l, int m) { return {Sign::Plus, {l, m}}; }
SignedMode minus(int l, int m) { return {Sign::Minus, {l, m}}; }
ModeMultiset ms(std::initializer_list<SignedMode> xs) { return ModeMultiset(std::vector<SignedMode>(xs)); }
MultiIndex phi_d(int p, int l, int m) {
  auto a = MultiIndex::phi_power(p);
  a.add({l, m});
  return a;
}
}  // namespace

TEST_CASE("multiset operations") {
  auto a = plus(0, 0), b = plus(1, 0), c = minus(0, 0), d = minus(2, 1);
  auto A = ms({a, a, b, c}), B = ms({a, c, d});
  CHECK(multiset_sum(A, B) == ms({a, a, a, b, c, c, d}));
  CHECK(multiset_intersection(A, B) == ms({a, c}));
  CHECK(ms({a, b, c, a}).cardinality() == 4);
  CHECK(multiset_includes(A, ms({a, a})));
  CHECK(multiset_difference(A, ms({a, b})) == ms({a, c}));
  ModeMultiset X = A;
  CHECK_THROWS_AS(X.remove(d), InputError);
}

TEST_CASE("ladder action on phi powers") {
  for (int p = 0; p <= 5; ++p) {
    auto up = ladder_apply(plus(0, 0), MultiIndex::phi_power(p));
    CHECK(up.factor == 1);
    CHECK(*up.result == MultiIndex::phi_power(p + 1));
    auto down = ladder_apply(minus(0, 0), MultiIndex::phi_power(p));
    if (p == 0) {
      CHECK_FALSE(down.result.has_value());
    } else {
      CHECK(down.factor == p);
      CHECK(*down.result == MultiIndex::phi_power(p - 1));
    }
    CHECK_FALSE(ladder_apply(minus(1, 0), MultiIndex::phi_power(p)).result.has_value());
  }
}

TEST_CASE("dimension and metric") {
  CHECK(MultiIndex::phi_power(1).dimension() == Rational(1, 2));
  CHECK(MultiIndex::phi_power(5).dimension() == Rational(5, 2));
  CHECK(phi_d(2, 2, -1).dimension() == Rational(7, 2));
  CHECK(metric_g(MultiIndex::phi_power(3), MultiIndex::phi_power(8)) == 5);
  CHECK(metric_g(phi_d(2, 1, 0), phi_d(2, 1, 0)) == 0);
  CHECK(metric_g(MultiIndex::phi_power(2), phi_d(1, 1, 0)) == 2);
}

TEST_CASE("label grammar round trip") {
  auto a = MultiIndex::parse("phi^2*d1phi_-1");
  CHECK(a == phi_d(2, 1, -1));
  CHECK(MultiIndex::parse(a.to_string()) == a);
  CHECK(MultiIndex::parse(a.pretty()) == a);
  CHECK(MultiIndex::from_json(a.to_json()) == a);
  CHECK(MultiIndex::parse("1").is_vacuum());
  CHECK(MultiIndex::parse("2,1:3") == [] { MultiIndex x; x.add({2, 1}, 3); return x; }());
  CHECK_THROWS_AS(MultiIndex::parse("psi"), InputError);
  CHECK_THROWS_AS(MultiIndex::parse("d1phi_2"), InputError);
}

TEST_CASE("symmetry factors") {
  CHECK(symmetry_factor(ms({plus(0, 0), plus(0, 0), plus(0, 0), minus(0, 0), plus(3, 1)})) == 20);
  CHECK(symmetry_factor(ms({plus(0, 0), plus(0, 0), plus(0, 0), plus(0, 0), plus(0, 0)})) == 1);
  CHECK(symmetry_factor(ms({plus(0, 0), minus(0, 0), plus(1, 0)})) == 6);
}

TEST_CASE("normal-ordered ladder prefactors") {
  for (int p = 1; p <= 5; ++p)
    for (int l = 1; l <= 3; ++l) {
      auto A = ms({plus(0, 0), plus(0, 0), plus(0, 0), minus(0, 0), plus(l, 1)});
      CHECK(ladder_prefactor(MultiIndex::phi_power(p), phi_d(p + 2, l, 1), A) == p);
      auto B = ms({minus(0, 0), minus(0, 0), minus(0, 0), minus(0, 0), plus(0, 0), minus(l, 0)});
      CHECK(ladder_prefactor(phi_d(p + 3, l, 0), MultiIndex::phi_power(p), B) ==
            factorial(p + 3) / factorial(p - 1));
    }
  auto C = ms({plus(0, 0), plus(2, 0)});
  CHECK(ladder_prefactor(MultiIndex(), phi_d(1, 2, 0), C) == 1);
}

TEST_CASE("index sets") {
  for (int p = 1; p <= 4; ++p) {
    auto I = index_sets(MultiIndex::phi_power(p), phi_d(p + 2, 2, 1), 5);
    REQUIRE(I.size() == 1);
    CHECK(I[0] == ms({plus(0, 0), plus(0, 0), plus(0, 0), minus(0, 0), plus(2, 1)}));
  }
  CHECK(index_sets(MultiIndex::phi_power(1), MultiIndex::phi_power(7), 5).empty());  // g = 6
  CHECK(index_sets(MultiIndex::phi_power(1), MultiIndex::phi_power(5), 5).empty());  // parity
  // All-creation sets from the vacuum
  auto V = index_sets(MultiIndex(), MultiIndex::phi_power(3), 3);
  REQUIRE(V.size() == 1);
  CHECK(ladder_prefactor(MultiIndex(), MultiIndex::phi_power(3), V[0]) == 1);
}

TEST_CASE("partitions") {
  auto A = ms({minus(0, 0), minus(0, 0), minus(0, 0), minus(0, 0), plus(0, 0), minus(2, 0)});
  CHECK(partitions(A, {5, 1}).size() == 3);
  auto full = partitions(A, {6, 0});
  REQUIRE(full.size() == 1);
  CHECK(full[0][0] == A);
  CHECK(full[0][1].empty());
  auto aa = ms({plus(1, 0), plus(1, 0)});
  CHECK(partitions(aa, {1, 1}).size() == 1);
}

TEST_CASE("grading of index multisets") {
  CHECK(d_of_multiset(ms({plus(0, 0), plus(0, 0), plus(0, 0), plus(0, 0), plus(0, 0)})) == 2);
  CHECK(d_of_multiset(ms({plus(0, 0), plus(0, 0), plus(0, 0), plus(0, 0), minus(0, 0)})) == 1);
  CHECK(d_of_multiset(ms({plus(0, 0), plus(0, 0), plus(0, 0), minus(0, 0), minus(0, 0)})) == 0);
}
