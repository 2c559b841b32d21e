#include "bohr/series.hpp"

#include <algorithm>
#include <cmath>

#include "bohr/errors.hpp"
#include "bohr/seqlab.hpp"

namespace bohr {

// ---------------------------------------------------------------- CoeffSeries

CoeffSeries CoeffSeries::dirichlet(std::optional<std::uint32_t> homogeneity) {
  return CoeffSeries(SeriesForm::Dirichlet, homogeneity);
}

CoeffSeries CoeffSeries::power(std::optional<std::uint32_t> homogeneity) {
  return CoeffSeries(SeriesForm::Power, homogeneity);
}

void CoeffSeries::check_key(std::uint64_t n) const {
  if (form_ != SeriesForm::Dirichlet) throw PreconditionViolation("integer key on a power-form series");
  if (n == 0) throw PreconditionViolation("Dirichlet keys start at n = 1");
  if (homogeneity_ && big_omega(n) != *homogeneity_) {
    throw PreconditionViolation("key " + std::to_string(n) + " violates homogeneity " +
                                std::to_string(*homogeneity_));
  }
}

void CoeffSeries::check_key(const MultiIndex& alpha) const {
  if (form_ != SeriesForm::Power) throw PreconditionViolation("multi-index key on a Dirichlet series");
  if (homogeneity_ && alpha.degree() != *homogeneity_) {
    throw PreconditionViolation("key " + alpha.to_string() + " violates homogeneity " +
                                std::to_string(*homogeneity_));
  }
}

void CoeffSeries::set(std::uint64_t n, Complex c) {
  check_key(n);
  if (c == Complex{}) {
    dirichlet_.erase(n);
  } else {
    dirichlet_[n] = c;
  }
}

void CoeffSeries::set(const MultiIndex& alpha, Complex c) {
  check_key(alpha);
  if (c == Complex{}) {
    power_.erase(alpha);
  } else {
    power_[alpha] = c;
  }
}

void CoeffSeries::add(std::uint64_t n, Complex c) { set(n, at(n) + c); }

void CoeffSeries::add(const MultiIndex& alpha, Complex c) { set(alpha, at(alpha) + c); }

Complex CoeffSeries::at(std::uint64_t n) const {
  auto it = dirichlet_.find(n);
  return it == dirichlet_.end() ? Complex{} : it->second;
}

Complex CoeffSeries::at(const MultiIndex& alpha) const {
  auto it = power_.find(alpha);
  return it == power_.end() ? Complex{} : it->second;
}

const CoeffSeries::DirichletTerms& CoeffSeries::dirichlet_terms() const {
  if (form_ != SeriesForm::Dirichlet) throw PreconditionViolation("series is in power form");
  return dirichlet_;
}

const CoeffSeries::PowerTerms& CoeffSeries::power_terms() const {
  if (form_ != SeriesForm::Power) throw PreconditionViolation("series is in Dirichlet form");
  return power_;
}

std::size_t CoeffSeries::size() const noexcept {
  return form_ == SeriesForm::Dirichlet ? dirichlet_.size() : power_.size();
}

std::uint32_t CoeffSeries::max_degree() const {
  std::uint32_t out = 0;
  if (form_ == SeriesForm::Dirichlet) {
    for (const auto& [n, c] : dirichlet_) out = std::max(out, big_omega(n));
  } else {
    for (const auto& [a, c] : power_) out = std::max<std::uint32_t>(out, static_cast<std::uint32_t>(a.degree()));
  }
  return out;
}

// ---------------------------------------------------------------- TrigPolynomial

void TrigPolynomial::check_key(const MultiIndex& alpha) const {
  if (alpha.max_position() > nvars_) {
    throw DimensionMismatch("monomial " + alpha.to_string() + " uses a variable beyond " + std::to_string(nvars_));
  }
  if (homogeneity_ && alpha.degree() != *homogeneity_) {
    throw PreconditionViolation("monomial " + alpha.to_string() + " violates homogeneity");
  }
}

void TrigPolynomial::set(const MultiIndex& alpha, Complex c) {
  check_key(alpha);
  if (c == Complex{}) {
    terms_.erase(alpha);
  } else {
    terms_[alpha] = c;
  }
}

void TrigPolynomial::add(const MultiIndex& alpha, Complex c) { set(alpha, at(alpha) + c); }

Complex TrigPolynomial::at(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

std::vector<std::uint32_t> TrigPolynomial::max_exponents() const {
  std::vector<std::uint32_t> out(nvars_, 0);
  for (const auto& [alpha, c] : terms_) {
    for (const auto& e : alpha.entries()) out[e.position - 1] = std::max(out[e.position - 1], e.exponent);
  }
  return out;
}

std::uint32_t TrigPolynomial::degree() const {
  std::uint64_t out = 0;
  for (const auto& [alpha, c] : terms_) out = std::max(out, alpha.degree());
  return static_cast<std::uint32_t>(out);
}

// ---------------------------------------------------------------- operations

CoeffSeries bohr_transform(const CoeffSeries& s, const PrimeTable& table) {
  if (s.form() == SeriesForm::Dirichlet) {
    auto out = CoeffSeries::power(s.homogeneity());
    for (const auto& [n, c] : s.dirichlet_terms()) out.set(factor_to_index(n, table), c);
    return out;
  }
  auto out = CoeffSeries::dirichlet(s.homogeneity());
  for (const auto& [alpha, c] : s.power_terms()) out.set(index_to_integer(alpha, table), c);
  return out;
}

TrigPolynomial bohr_lift(const CoeffSeries& d, std::uint32_t k, const PrimeTable& table) {
  TrigPolynomial out(k, d.homogeneity());
  for (const auto& [n, c] : d.dirichlet_terms()) {
    const auto alpha = factor_to_index(n, table);
    if (alpha.max_position() > k) {
      throw BoundExceeded(std::to_string(n) + " needs a prime beyond the " + std::to_string(k) + "-th");
    }
    out.set(alpha, c);
  }
  return out;
}

TrigPolynomial to_trig_polynomial(const CoeffSeries& power, std::uint32_t k) {
  TrigPolynomial out(k, power.homogeneity());
  for (const auto& [alpha, c] : power.power_terms()) out.set(alpha, c);
  return out;
}

CoeffSeries homogeneous_part(const CoeffSeries& s, std::uint32_t m) {
  if (s.form() == SeriesForm::Dirichlet) {
    auto out = CoeffSeries::dirichlet(m);
    for (const auto& [n, c] : s.dirichlet_terms()) {
      if (big_omega(n) == m) out.set(n, c);
    }
    return out;
  }
  auto out = CoeffSeries::power(m);
  for (const auto& [alpha, c] : s.power_terms()) {
    if (alpha.degree() == m) out.set(alpha, c);
  }
  return out;
}

double multiplier_weighted_l1(const CoeffSeries& s, const std::function<Complex(std::uint64_t)>& b) {
  double sum = 0.0;
  for (const auto& [n, c] : s.dirichlet_terms()) sum += std::abs(c * b(n));
  return sum;
}

double multiplier_weighted_l1(const CoeffSeries& s, const SequenceSpec& b) {
  return multiplier_weighted_l1(s, [&](std::uint64_t n) { return Complex(b.eval(n)); });
}

CoeffSeries dirichlet_product(const CoeffSeries& a, const CoeffSeries& b, std::uint64_t bound) {
  auto out = CoeffSeries::dirichlet();
  for (const auto& [n, x] : a.dirichlet_terms()) {
    for (const auto& [m, y] : b.dirichlet_terms()) {
      if (m > bound / n) break;
      out.add(n * m, x * y);
    }
  }
  return out;
}

CoeffSeries power_product(const CoeffSeries& a, const CoeffSeries& b) {
  auto out = CoeffSeries::power();
  for (const auto& [alpha, x] : a.power_terms()) {
    for (const auto& [beta, y] : b.power_terms()) out.add(alpha + beta, x * y);
  }
  return out;
}

}  // namespace bohr
