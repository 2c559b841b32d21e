#pragma once

// Independent reference implementations and random generators for tests.
// Nothing here calls into the library code it is compared against.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "bohr/kernel.hpp"
#include "bohr/series.hpp"

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < count; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

/// Exponent of the j-th prime (1-based) in n, by repeated division.
inline std::map<std::uint32_t, std::uint32_t> factor(std::uint64_t n, const std::vector<std::uint64_t>& ps) {
  std::map<std::uint32_t, std::uint32_t> out;
  for (std::size_t j = 0; j < ps.size() && n > 1; ++j) {
    while (n % ps[j] == 0) {
      n /= ps[j];
      ++out[static_cast<std::uint32_t>(j + 1)];
    }
  }
  return out;
}

inline std::uint64_t power(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::uint64_t factorial(std::uint32_t n) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// All dense vectors in {0..m}^k with coordinate sum m.
inline std::vector<std::vector<std::uint32_t>> lambda_dense(std::uint32_t m, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> v(k, 0);
  while (true) {
    std::uint32_t s = 0;
    for (auto x : v) s += x;
    if (s == m) out.push_back(v);
    std::size_t i = 0;
    while (i < k && v[i] == m) v[i++] = 0;
    if (i == k) break;
    ++v[i];
  }
  return out;
}

/// Term-by-term evaluation with a fresh exponential per term.
inline std::complex<double> eval(const bohr::TrigPolynomial& p, const std::vector<double>& angles) {
  std::complex<double> s{};
  for (const auto& [alpha, c] : p.terms()) {
    double phase = 0.0;
    for (const auto& e : alpha.entries()) phase += e.exponent * angles[e.position - 1];
    s += c * std::exp(std::complex<double>(0.0, phase));
  }
  return s;
}

/// max |P| over a uniform grid of res^k points (k <= 3 in practice).
inline double grid_sup(const bohr::TrigPolynomial& p, std::uint32_t res) {
  const std::uint32_t k = p.nvars();
  std::vector<std::uint32_t> idx(k, 0);
  std::vector<double> angles(k, 0.0);
  double best = 0.0;
  while (true) {
    for (std::uint32_t j = 0; j < k; ++j) angles[j] = 2.0 * std::numbers::pi * idx[j] / res;
    best = std::max(best, std::abs(eval(p, angles)));
    std::uint32_t j = 0;
    while (j < k && idx[j] == res - 1) idx[j++] = 0;
    if (j == k) break;
    ++idx[j];
  }
  return best;
}

/// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(eng_);
  }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  std::complex<double> complex() { return {normal(), normal()}; }

  bohr::MultiIndex index(std::uint32_t max_pos, std::uint32_t max_exp) {
    std::vector<bohr::MultiIndex::Entry> e;
    const auto n = below(4);
    for (std::uint64_t i = 0; i < n; ++i) {
      e.push_back({static_cast<std::uint32_t>(between(1, max_pos)), static_cast<std::uint32_t>(below(max_exp + 1))});
    }
    return bohr::MultiIndex(e);
  }

  bohr::TrigPolynomial homogeneous(std::uint32_t m, std::uint32_t k, double density = 1.0) {
    bohr::TrigPolynomial p(k, m);
    for (const auto& v : lambda_dense(m, k)) {
      if (uniform() < density) p.set(bohr::MultiIndex::from_dense(v), complex());
    }
    return p;
  }

  bohr::TrigPolynomial polynomial(std::uint32_t k, std::uint32_t max_exp, std::size_t terms) {
    bohr::TrigPolynomial p(k);
    for (std::size_t t = 0; t < terms; ++t) {
      std::vector<std::uint32_t> d(k);
      for (auto& x : d) x = static_cast<std::uint32_t>(below(max_exp + 1));
      p.add(bohr::MultiIndex::from_dense(d), complex());
    }
    return p;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
