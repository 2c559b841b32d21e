#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "bohr/errors.hpp"
#include "bohr/seqlab.hpp"
#include "oracles.hpp"

using namespace bohr;

namespace {

// Eratosthenes sieve, returns the primes below limit.
std::vector<std::uint64_t> sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

double checkpoint_at(const BEstimate& e, std::uint64_t n) {
  for (const auto& c : e.checkpoints) {
    if (c.n == n) return c.value;
  }
  FAIL("missing checkpoint " << n);
  return 0.0;
}

}  // namespace

TEST_CASE("decreasing rearrangement examples") {
  const std::vector<double> v{0.1, 0.5, 0.3};
  CHECK(decreasing_rearrangement(v) == std::vector<double>{0.5, 0.3, 0.1});
  const std::vector<double> s{-2.0, 1.0};
  CHECK(decreasing_rearrangement(s) == std::vector<double>{2.0, 1.0});
  CHECK(decreasing_rearrangement(std::vector<double>{}).empty());
}

TEST_CASE("rearrangement is idempotent and permutation invariant") {
  oracle::Gen g(3);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> v(g.between(1, 300));
    for (auto& x : v) x = g.uniform();
    const auto r = decreasing_rearrangement(v);
    CHECK(std::is_sorted(r.rbegin(), r.rend()));
    CHECK(decreasing_rearrangement(r) == r);
    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(rep));
    CHECK(decreasing_rearrangement(shuffled) == r);
    auto ref = v;
    std::sort(ref.begin(), ref.end(), [](double a, double b) { return a > b; });
    CHECK(r == ref);
  }
}

TEST_CASE("family values") {
  CHECK(SequenceSpec::power_log(2.0, 1.0, 0.0).eval(4) == doctest::Approx(0.5));
  CHECK(SequenceSpec::power_log(1.0, 0.0, 1.0).eval(1) == doctest::Approx(std::log(2.0)));
  CHECK(SequenceSpec::prime_power(1.0, 1.0).eval(3) == doctest::Approx(0.2));
  CHECK(SequenceSpec::eventually_zero({1.0, 0.5}).eval(3) == 0.0);
  CHECK_THROWS_AS(SequenceSpec::sampled({1.0}).eval(2), PreconditionViolation);
  CHECK_THROWS_AS(SequenceSpec::sampled({-1.0}), PreconditionViolation);
  CHECK_THROWS_AS(SequenceSpec::power_log(-1.0, 0.5, 0.0), PreconditionViolation);
  CHECK_THROWS_AS(SequenceSpec::power_log(1.0, 0.5, 0.0).eval(0), PreconditionViolation);
  CHECK(SequenceSpec::prime_power(1.0, 0.5).describe() == "primepower(c=1,a=0.5)");
  CHECK(SequenceSpec::sampled({1, 2, 3}).prefix(10).size() == 3);
}

TEST_CASE("b functional rejects short horizons") {
  const auto z = SequenceSpec::power_log(1.0, 0.5, 0.0);
  CHECK_THROWS_AS(b_functional(z, 99), HorizonTooSmall);
  CHECK_NOTHROW(b_functional(z, 1024));
  // 2..256 plus 300 gives 9 checkpoints.
  CHECK_THROWS_AS(b_functional(SequenceSpec::sampled(std::vector<double>(300, 1.0)), 1000), HorizonTooSmall);
  const auto e = b_functional(z, 1000);
  CHECK(e.checkpoints.front().n == 2);
  CHECK(e.checkpoints.back().n == 1000);
  CHECK(e.checkpoints.size() == 10);
}

TEST_CASE("b functional of c n^{-1/2}") {
  for (double c : {0.5, 1.0, 2.0}) {
    const auto e = b_functional(SequenceSpec::power_log(c, 0.5, 0.0), 1000000);
    REQUIRE(e.analytic_limit.has_value());
    CHECK(*e.analytic_limit == doctest::Approx(c * c));
    CHECK(e.b_value() == doctest::Approx(c));
    CHECK(e.basis == Basis::Analytic);

    // Harmonic-number oracle.
    long double h = 0.0L;
    for (std::uint64_t j = 1; j <= 1000000; ++j) h += 1.0L / j;
    const double at = checkpoint_at(e, 1000000);
    CHECK(at == doctest::Approx(static_cast<double>(c * c * h / std::log(1e6L))).epsilon(1e-12));
    CHECK(std::fabs(at - c * c) <= 0.05 * c * c);
  }
}

TEST_CASE("b functional diverges for n^{-1/2} log(n+1)^{1/2}") {
  const auto e = b_functional(SequenceSpec::power_log(1.0, 0.5, 0.5), 1000000);
  CHECK(std::isinf(*e.analytic_limit));
  CHECK(std::isinf(e.b_value()));
  long double s = 0.0L;
  std::size_t next = 0;
  for (std::uint64_t j = 1; j <= 1000000 && next < e.checkpoints.size(); ++j) {
    s += std::log1p(static_cast<long double>(j)) / j;
    if (j == e.checkpoints[next].n) {
      CHECK(e.checkpoints[next].value == doctest::Approx(static_cast<double>(s / std::log(static_cast<long double>(j)))).epsilon(1e-10));
      ++next;
    }
  }
  // Growth like (log n)/2.
  CHECK(checkpoint_at(e, 1000000) > 6.0);
  for (std::size_t i = 4; i < e.checkpoints.size(); ++i) CHECK(e.checkpoints[i].value > e.checkpoints[i - 1].value);
}

TEST_CASE("b functional of p_n^{-1/2} follows Mertens") {
  const auto e = b_functional(SequenceSpec::prime_power(1.0, 0.5), 1000000);
  CHECK(*e.analytic_limit == 0.0);
  const auto ps = sieve(15500000);
  REQUIRE(ps.size() >= 1000000);
  long double s = 0.0L;
  for (std::size_t i = 0; i < 1000000; ++i) s += 1.0L / ps[i];
  const double at = checkpoint_at(e, 1000000);
  CHECK(at == doctest::Approx(static_cast<double>(s / std::log(1e6L))).epsilon(1e-12));
  const double mertens = (std::log(std::log(static_cast<double>(ps[999999]))) + 0.2614972128) / std::log(1e6);
  CHECK(at == doctest::Approx(mertens).epsilon(0.01));
  for (std::size_t i = 12; i < e.checkpoints.size(); ++i) CHECK(e.checkpoints[i].value < e.checkpoints[i - 1].value);
}

TEST_CASE("b functional is monotone under pointwise domination") {
  const std::vector<std::pair<SequenceSpec, SequenceSpec>> pairs{
      {SequenceSpec::power_log(0.5, 0.5, 0.0), SequenceSpec::power_log(0.9, 0.5, 0.0)},
      {SequenceSpec::power_log(1.0, 0.6, 0.0), SequenceSpec::power_log(1.0, 0.5, 0.0)},
      {SequenceSpec::prime_power(1.0, 0.7), SequenceSpec::prime_power(1.0, 0.5)},
  };
  for (const auto& [lo, hi] : pairs) {
    const auto a = b_functional(lo, 1 << 16);
    const auto b = b_functional(hi, 1 << 16);
    REQUIRE(a.checkpoints.size() == b.checkpoints.size());
    for (std::size_t i = 0; i < a.checkpoints.size(); ++i) CHECK(a.checkpoints[i].value <= b.checkpoints[i].value);
    CHECK(a.running_sup <= b.running_sup);
  }

  oracle::Gen g(17);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> lo(2000);
    std::vector<double> hi(2000);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = g.uniform();
      hi[i] = lo[i] + g.uniform();
    }
    const auto a = b_functional(SequenceSpec::sampled(lo), 2000);
    const auto b = b_functional(SequenceSpec::sampled(hi), 2000);
    CHECK_FALSE(a.analytic_limit.has_value());
    for (std::size_t i = 0; i < a.checkpoints.size(); ++i) CHECK(a.checkpoints[i].value <= b.checkpoints[i].value);
  }
}

TEST_CASE("membership examples") {
  const auto pp = SequenceSpec::prime_power(1.0, 0.5);
  CHECK(space_membership(pp, SequenceSpace::lp(2.0), 10000).verdict == Membership::Out);
  CHECK(space_membership(pp, SequenceSpace::l20(), 10000).verdict == Membership::In);
  CHECK(space_membership(pp, SequenceSpace::lp(3.0), 10000).verdict == Membership::In);

  const auto ce = SequenceSpec::counterexample25(2);
  const auto weak = space_membership(ce, SequenceSpace::lq_weak(2.0), 10000);
  CHECK(weak.verdict == Membership::Out);
  CHECK(weak.basis == Basis::Analytic);
  CHECK_FALSE(weak.note.empty());
  // At n_2 = 4096 the statistic is sqrt(n_2 * 2 / n_2) = sqrt 2.
  CHECK(weak.witness_value == doctest::Approx(std::sqrt(2.0)));
  CHECK(space_membership(ce, SequenceSpace::l2log(), 10000).verdict == Membership::In);

  const auto n1 = SequenceSpec::power_log(1.0, 1.0, 0.0);
  CHECK(space_membership(n1, SequenceSpace::lp(1.0), 100).verdict == Membership::Out);
  CHECK(space_membership(n1, SequenceSpace::lp(1.5), 100).verdict == Membership::In);
  CHECK(space_membership(n1, SequenceSpace::lq_weak(1.0), 100).verdict == Membership::In);

  const auto lp = space_membership(n1, SequenceSpace::lp(2.0), 100);
  long double s = 0.0L;
  for (int j = 1; j <= 100; ++j) s += 1.0L / (static_cast<long double>(j) * j);
  CHECK(lp.witness_value == doctest::Approx(static_cast<double>(s)));

  CHECK_THROWS_AS(space_membership(n1, SequenceSpace::lp(0.5), 100), PreconditionViolation);

  const auto sampled = space_membership(SequenceSpec::sampled({1.0, 0.5, 0.25}), SequenceSpace::lp(2.0), 100);
  CHECK(sampled.verdict == Membership::Undecided);
  CHECK(sampled.horizon == 3);
  CHECK(sampled.witness_value == doctest::Approx(1.3125));
}

TEST_CASE("membership nesting l2 => l2,0 => l2,inf => l2,log") {
  std::vector<SequenceSpec> family;
  for (double a : {0.0, 0.3, 0.5, 0.6, 1.0}) {
    for (double b : {-1.0, -0.5, 0.0, 0.5, 1.0}) family.push_back(SequenceSpec::power_log(1.0, a, b));
  }
  for (double a : {0.0, 0.4, 0.5, 0.7}) family.push_back(SequenceSpec::prime_power(1.0, a));
  family.push_back(SequenceSpec::counterexample25(2));
  family.push_back(SequenceSpec::counterexample25(3));
  family.push_back(SequenceSpec::converse_gap());
  family.push_back(SequenceSpec::eventually_zero({1.0, 2.0}));

  const std::vector<SequenceSpace> chain{SequenceSpace::lp(2.0), SequenceSpace::l20(), SequenceSpace::lq_weak(2.0),
                                         SequenceSpace::l2log()};
  for (const auto& z : family) {
    CAPTURE(z.describe());
    bool prev_in = false;
    for (const auto& sp : chain) {
      const bool in = space_membership(z, sp, 1000).verdict == Membership::In;
      if (prev_in) CHECK(in);
      prev_in = in;
    }
  }
}

TEST_CASE("counterexample block sequence") {
  const auto [z, cert] = counterexample25(2);
  CHECK(cert.accepted);
  CHECK(cert.ratios_decreasing);
  CHECK(cert.boundaries[0] == 4.0L);
  CHECK(cert.boundaries[1] == 4096.0L);

  long double sum = 0.0L;
  for (std::uint32_t k = 1; k <= 6; ++k) sum += (k + 1) / std::ldexp(1.0L, static_cast<int>(k * k * (k + 1)));
  CHECK(static_cast<double>(cert.series_sum) == doctest::Approx(static_cast<double>(sum)).epsilon(1e-15));
  CHECK(static_cast<double>(cert.series_sum) == doctest::Approx(0.50073).epsilon(1e-4));

  for (std::uint64_t j = 1; j <= 4; ++j) CHECK(z.eval(j) == doctest::Approx(0.5));
  CHECK(z.eval(5) == doctest::Approx(std::sqrt(2.0 / 4096.0)));
  CHECK(z.eval(4096) == doctest::Approx(std::sqrt(2.0 / 4096.0)));
  CHECK(z.eval(4097) == doctest::Approx(std::sqrt(3.0 / std::ldexp(1.0, 36))));

  // n_k r_{n_k}^2 = k for k >= 2; the first block is flat at 1/a^2.
  for (std::uint32_t k = 2; k <= 6; ++k) CHECK(static_cast<double>(cert.block_identity[k - 1]) == doctest::Approx(k));

  for (std::size_t k = 1; k < cert.chain_bounds.size(); ++k) CHECK(cert.chain_bounds[k] < cert.chain_bounds[k - 1]);
  CHECK(cert.first_block_below_one >= 1);
  CHECK(cert.chain_bounds.back() < 1.0L);

  CHECK_THROWS_AS(counterexample25(1), BadBase);
  CHECK_THROWS_AS(counterexample25(0), BadBase);
  CHECK_THROWS_AS(SequenceSpec::counterexample25(1), BadBase);

  const auto [z3, cert3] = counterexample25(3);
  CHECK(cert3.accepted);
  CHECK(cert3.series_sum < cert.series_sum);
}

TEST_CASE("counterexample checkpoints stay below one") {
  const auto e = b_functional(SequenceSpec::counterexample25(2), 1000000);
  CHECK(*e.analytic_limit == 0.0);
  for (const auto& c : e.checkpoints) {
    if (c.n >= 16) CHECK(c.value < 1.0);
  }
}

TEST_CASE("converse gap partial sums follow the prescribed rule") {
  const auto z = SequenceSpec::converse_gap();
  auto F = [](double n) {
    const double l = std::log(n);
    return l * std::pow(l, 1.0 / l);
  };
  double s = 0.0;
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    s += z.eval(n) * z.eval(n);
    if (n >= 2) CHECK(s == doctest::Approx(F(static_cast<double>(n))).epsilon(1e-9));
  }
  CHECK(*b_functional(z, 1000).analytic_limit == 1.0);
}
