#include <doctest.h>

#include <set>

#include "bohr/errors.hpp"
#include "bohr/kernel.hpp"
#include "oracles.hpp"

using namespace bohr;

namespace {

MultiIndex idx(std::initializer_list<MultiIndex::Entry> e) { return MultiIndex(std::vector<MultiIndex::Entry>(e)); }

}  // namespace

TEST_CASE("multi-index canonical form") {
  const auto a = idx({{3, 1}, {1, 2}, {2, 0}, {1, 1}});
  REQUIRE(a.entries().size() == 2);
  CHECK(a.entries()[0].position == 1);
  CHECK(a.entries()[0].exponent == 3);
  CHECK(a.entries()[1].position == 3);
  CHECK(a.degree() == 4);
  CHECK(a.exponent(2) == 0);
  CHECK(a.max_position() == 3);
  CHECK(a == idx({{1, 3}, {3, 1}}));
  CHECK(MultiIndex().degree() == 0);
  CHECK_THROWS_AS(idx({{0, 1}}), PreconditionViolation);

  const std::vector<std::uint32_t> dense{0, 2, 0, 1};
  CHECK(MultiIndex::from_dense(dense) == idx({{2, 2}, {4, 1}}));
  CHECK(MultiIndex::from_dense(dense).to_dense(4) == dense);
  CHECK(idx({{1, 1}}) + idx({{1, 2}, {2, 1}}) == idx({{1, 3}, {2, 1}}));
}

TEST_CASE("prime table entries are prime and increasing") {
  const PrimeTable t(2000, 10000);
  const auto ref = oracle::primes(2000);
  REQUIRE(t.size() == 2000);
  CHECK(t.primes()[0] == 2);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(t.primes()[i] == ref[i]);
    if (i > 0) CHECK(t.primes()[i] > t.primes()[i - 1]);
  }
  CHECK(t.prime(4) == 7);
  CHECK(t.position_of(7) == 4);
  CHECK(t.position_of(8) == 0);
  CHECK(t.smallest_factor(91) == 7);
}

TEST_CASE("factor_to_index examples") {
  const PrimeTable t(10);
  CHECK(factor_to_index(360, t) == idx({{1, 3}, {2, 2}, {3, 1}}));
  CHECK(factor_to_index(1, t).empty());
  CHECK(factor_to_index(1, t).degree() == 0);
  const auto twelve = factor_to_index(12, t);
  CHECK(twelve == idx({{1, 2}, {2, 1}}));
  CHECK(twelve.degree() == 3);
  CHECK_THROWS_AS(factor_to_index(31, t), BoundExceeded);
  CHECK_THROWS_AS(factor_to_index(0, t), PreconditionViolation);
}

TEST_CASE("index_to_integer examples and overflow") {
  const PrimeTable t(10);
  CHECK(index_to_integer(idx({{1, 2}, {2, 1}}), t) == 12);
  CHECK(index_to_integer(MultiIndex(), t) == 1);
  CHECK(index_to_integer(idx({{4, 1}}), t) == 7);
  CHECK_THROWS_AS(index_to_integer(idx({{1, 64}}), t), Overflow);
  CHECK(index_to_integer(idx({{1, 63}}), t) == (std::uint64_t{1} << 63));
  CHECK_THROWS_AS(index_to_integer(idx({{11, 1}}), t), BoundExceeded);
}

TEST_CASE("factorization agrees with trial division for n <= 10^5") {
  const PrimeTable t(9592, 100000);
  const auto ps = oracle::primes(9592);
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const auto a = factor_to_index(n, t);
    const auto ref = oracle::factor(n, ps);
    REQUIRE(a.entries().size() == ref.size());
    for (const auto& e : a.entries()) REQUIRE(ref.at(e.position) == e.exponent);
    REQUIRE(index_to_integer(a, t) == n);
  }
}

TEST_CASE("big omega is completely additive") {
  oracle::Gen g(7);
  const PrimeTable t(5000, 1000000);
  for (int i = 0; i < 2000; ++i) {
    const auto a = g.between(1, 1000);
    const auto b = g.between(1, 1000);
    CHECK(factor_to_index(a * b, t).degree() == factor_to_index(a, t).degree() + factor_to_index(b, t).degree());
    CHECK(big_omega(a * b) == big_omega(a) + big_omega(b));
  }
  CHECK(big_omega(1) == 0);
  CHECK(big_omega(360) == 6);
}

TEST_CASE("lambda enumeration examples") {
  const auto l22 = enumerate_lambda(2, 2);
  REQUIRE(l22.size() == 3);
  CHECK(l22[0] == idx({{1, 2}}));
  CHECK(l22[1] == idx({{1, 1}, {2, 1}}));
  CHECK(l22[2] == idx({{2, 2}}));

  const auto l1 = enumerate_lambda(1, 5);
  REQUIRE(l1.size() == 5);
  for (std::uint32_t j = 0; j < 5; ++j) CHECK(l1[j] == MultiIndex::unit(j + 1));

  CHECK(enumerate_lambda(3, 2).size() == oracle::lambda_dense(3, 2).size());
  CHECK(enumerate_lambda(3, 2).size() == 4);

  const auto l0 = enumerate_lambda(0, 3);
  REQUIRE(l0.size() == 1);
  CHECK(l0[0].empty());
}

TEST_CASE("lambda enumeration matches brute force for m, k <= 6") {
  for (std::uint32_t m = 0; m <= 6; ++m) {
    for (std::uint32_t k = 1; k <= 6; ++k) {
      const auto got = enumerate_lambda(m, k);
      std::set<MultiIndex> ref;
      for (const auto& v : oracle::lambda_dense(m, k)) ref.insert(MultiIndex::from_dense(v));
      REQUIRE(got.size() == ref.size());
      CHECK(got.size() == binomial(m + k - 1, m));
      CHECK(std::set<MultiIndex>(got.begin(), got.end()) == ref);
      for (std::size_t i = 1; i < got.size(); ++i) {
        // Descending lexicographic order on dense vectors.
        CHECK(got[i - 1].to_dense(k) > got[i].to_dense(k));
      }
      for (const auto& a : got) {
        CHECK(a.degree() == m);
        CHECK(a.max_position() <= k);
      }
    }
  }
}

TEST_CASE("lambda counts equal stars and bars for m, k <= 8") {
  for (std::uint32_t m = 0; m <= 8; ++m) {
    for (std::uint32_t k = 1; k <= 8; ++k) {
      // Pascal-triangle count, independent of binomial().
      std::vector<std::vector<std::uint64_t>> c(m + k, std::vector<std::uint64_t>(m + k, 0));
      for (std::uint32_t i = 0; i < m + k; ++i) {
        c[i][0] = 1;
        for (std::uint32_t j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j < i ? c[i - 1][j] : 0);
      }
      CHECK(enumerate_lambda(m, k).size() == c[m + k - 1][m]);
    }
  }
}

TEST_CASE("multinomial examples and overflow") {
  CHECK(multinomial(idx({{1, 2}, {2, 1}})) == 3);
  CHECK(multinomial(idx({{5, 4}})) == 1);
  CHECK(multinomial(idx({{1, 1}, {2, 1}, {3, 1}})) == 6);
  CHECK(multinomial(MultiIndex()) == 1);
  CHECK_THROWS_AS(multinomial(idx({{1, 40}, {2, 40}, {3, 40}})), Overflow);
}

TEST_CASE("multinomial theorem: sum over lambda(m,k) equals k^m") {
  for (std::uint32_t m = 0; m <= 6; ++m) {
    for (std::uint32_t k = 1; k <= 6; ++k) {
      std::uint64_t s = 0;
      for (const auto& a : enumerate_lambda(m, k)) {
        s += multinomial(a);
        std::uint64_t denom = 1;
        for (const auto& e : a.entries()) denom *= oracle::factorial(e.exponent);
        CHECK(multinomial(a) == oracle::factorial(m) / denom);
      }
      CHECK(s == oracle::power(k, m));
    }
  }
}

TEST_CASE("binomial is exact and checked") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ULL);
  CHECK_THROWS_AS(binomial(70, 35), Overflow);
}

TEST_CASE("tuple/index bijection") {
  CHECK(tuple_to_index(IndexTuple({1, 1, 2})) == idx({{1, 2}, {2, 1}}));
  CHECK(tuple_to_index(IndexTuple({4})) == MultiIndex::unit(4));
  CHECK(tuple_to_index(IndexTuple({2, 1, 1})) == idx({{1, 2}, {2, 1}}));
  CHECK_THROWS_AS(sorted_tuple_to_index(IndexTuple({2, 1})), UnsortedInput);
  CHECK(index_to_tuple(idx({{1, 2}, {3, 1}})).values() == std::vector<std::uint32_t>{1, 1, 3});

  const auto j33 = enumerate_sorted_tuples(3, 3);
  CHECK(j33.size() == 10);
  for (const auto& j : j33) CHECK(index_to_tuple(sorted_tuple_to_index(j)) == j);
}

TEST_CASE("J(m,k) round trips and class sizes for m, k <= 5") {
  for (std::uint32_t m = 1; m <= 5; ++m) {
    for (std::uint32_t k = 1; k <= 5; ++k) {
      const auto js = enumerate_sorted_tuples(m, k);
      CHECK(js.size() == enumerate_lambda(m, k).size());
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < js.size(); ++i) {
        const auto& j = js[i];
        CHECK(j.sorted());
        if (i > 0) CHECK(js[i - 1] < j);
        const auto a = sorted_tuple_to_index(j);
        CHECK(index_to_tuple(a) == j);
        CHECK(j.class_size() == multinomial(a));
        total += j.class_size();
      }
      // The classes partition M(m,k).
      CHECK(total == oracle::power(k, m));
    }
  }
}

TEST_CASE("index_to_integer inverts factor_to_index on random indices") {
  oracle::Gen g(11);
  const PrimeTable t(50);
  for (int i = 0; i < 500; ++i) {
    const auto a = g.index(12, 3);
    std::uint64_t n = 0;
    try {
      n = index_to_integer(a, t);
    } catch (const Overflow&) {
      continue;
    }
    CHECK(factor_to_index(n, t) == a);
  }
}
