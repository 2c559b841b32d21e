#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "bohr/kernel.hpp"

namespace bohr {

using Complex = std::complex<double>;

class SequenceSpec;

enum class SeriesForm { Dirichlet, Power };

/// Finitely supported coefficient map: n -> a_n (Dirichlet form) or
/// alpha -> c_alpha (power form). Zero coefficients are never stored.
/// When a homogeneity degree m is set, every key must have Omega(n) = m
/// (resp. |alpha| = m); insertions violating it throw PreconditionViolation.
class CoeffSeries {
 public:
  using DirichletTerms = std::map<std::uint64_t, Complex>;
  using PowerTerms = std::map<MultiIndex, Complex>;

  static CoeffSeries dirichlet(std::optional<std::uint32_t> homogeneity = std::nullopt);
  static CoeffSeries power(std::optional<std::uint32_t> homogeneity = std::nullopt);

  SeriesForm form() const noexcept { return form_; }
  std::optional<std::uint32_t> homogeneity() const noexcept { return homogeneity_; }

  /// Overwrites the coefficient at a key (removes it when c == 0).
  void set(std::uint64_t n, Complex c);
  void set(const MultiIndex& alpha, Complex c);

  /// Accumulates into the coefficient at a key.
  void add(std::uint64_t n, Complex c);
  void add(const MultiIndex& alpha, Complex c);

  Complex at(std::uint64_t n) const;
  Complex at(const MultiIndex& alpha) const;

  const DirichletTerms& dirichlet_terms() const;
  const PowerTerms& power_terms() const;

  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  /// Largest Omega(n) resp. |alpha| over the support (0 when empty).
  std::uint32_t max_degree() const;

  friend bool operator==(const CoeffSeries&, const CoeffSeries&) = default;

 private:
  CoeffSeries(SeriesForm form, std::optional<std::uint32_t> homogeneity) : form_(form), homogeneity_(homogeneity) {}
  void check_key(std::uint64_t n) const;
  void check_key(const MultiIndex& alpha) const;

  SeriesForm form_;
  std::optional<std::uint32_t> homogeneity_;
  DirichletTerms dirichlet_;
  PowerTerms power_;
};

/// Polynomial sum c_alpha w^alpha on T^k; every key has max_position() <= k.
class TrigPolynomial {
 public:
  using Terms = std::map<MultiIndex, Complex>;

  TrigPolynomial() = default;
  explicit TrigPolynomial(std::uint32_t nvars, std::optional<std::uint32_t> homogeneity = std::nullopt)
      : nvars_(nvars), homogeneity_(homogeneity) {}

  std::uint32_t nvars() const noexcept { return nvars_; }
  std::optional<std::uint32_t> homogeneity() const noexcept { return homogeneity_; }
  const Terms& terms() const noexcept { return terms_; }

  void set(const MultiIndex& alpha, Complex c);
  void add(const MultiIndex& alpha, Complex c);
  Complex at(const MultiIndex& alpha) const;

  /// Largest exponent of each variable over the support (length nvars).
  std::vector<std::uint32_t> max_exponents() const;
  std::uint32_t degree() const;

 private:
  void check_key(const MultiIndex& alpha) const;

  std::uint32_t nvars_ = 0;
  std::optional<std::uint32_t> homogeneity_;
  Terms terms_;
};

/// Flips the form: a_{p^alpha} <-> c_alpha. Power -> Dirichlet throws
/// Overflow when some p^alpha exceeds 64 bits.
CoeffSeries bohr_transform(const CoeffSeries& s, const PrimeTable& table);

/// sum a_n w^{alpha(n)} on T^k. Throws BoundExceeded when some n needs a
/// prime beyond the k-th.
TrigPolynomial bohr_lift(const CoeffSeries& d, std::uint32_t k, const PrimeTable& table);

/// Power series (any form is accepted and transformed first) viewed on T^k.
TrigPolynomial to_trig_polynomial(const CoeffSeries& power, std::uint32_t k);

/// Keeps keys with Omega(n) = m resp. |alpha| = m and tags the result m.
CoeffSeries homogeneous_part(const CoeffSeries& s, std::uint32_t m);

/// sum |a_n b_n| over the support of a Dirichlet series.
double multiplier_weighted_l1(const CoeffSeries& s, const std::function<Complex(std::uint64_t)>& b);
double multiplier_weighted_l1(const CoeffSeries& s, const SequenceSpec& b);

/// Dirichlet product truncated to n*m <= bound (the support of a product
/// grows, so the caller fixes the cut-off).
CoeffSeries dirichlet_product(const CoeffSeries& a, const CoeffSeries& b, std::uint64_t bound);

/// Cauchy product of two power-form series (no truncation).
CoeffSeries power_product(const CoeffSeries& a, const CoeffSeries& b);

}  // namespace bohr
