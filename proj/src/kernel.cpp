#include "bohr/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow("integer product exceeds 64 bits");
  return out;
}

// Plain sieve of Eratosthenes up to `limit` inclusive.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Upper bound for the count-th prime (Rosser's theorem for count >= 6).
std::uint64_t nth_prime_upper_bound(std::size_t count) {
  if (count < 6) return 15;
  const double n = static_cast<double>(count);
  return static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 3;
}

}  // namespace

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.position < b.position; });
  for (const auto& e : entries) {
    if (e.position == 0) throw PreconditionViolation("multi-index positions are 1-based");
    if (e.exponent == 0) continue;
    if (!entries_.empty() && entries_.back().position == e.position) {
      entries_.back().exponent += e.exponent;
    } else {
      entries_.push_back(e);
    }
  }
}

MultiIndex MultiIndex::from_dense(std::span<const std::uint32_t> dense) {
  MultiIndex out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) out.entries_.push_back({static_cast<std::uint32_t>(i + 1), dense[i]});
  }
  return out;
}

MultiIndex MultiIndex::unit(std::uint32_t position) { return MultiIndex({{position, 1}}); }

std::uint64_t MultiIndex::degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& e : entries_) d += e.exponent;
  return d;
}

std::uint32_t MultiIndex::exponent(std::uint32_t position) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), position,
                             [](const Entry& e, std::uint32_t p) { return e.position < p; });
  return (it != entries_.end() && it->position == position) ? it->exponent : 0;
}

std::uint32_t MultiIndex::max_position() const noexcept {
  return entries_.empty() ? 0 : entries_.back().position;
}

std::vector<std::uint32_t> MultiIndex::to_dense(std::size_t length) const {
  if (max_position() > length) throw DimensionMismatch("multi-index does not fit the requested length");
  std::vector<std::uint32_t> dense(length, 0);
  for (const auto& e : entries_) dense[e.position - 1] = e.exponent;
  return dense;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  std::vector<Entry> merged = entries_;
  merged.insert(merged.end(), other.entries_.begin(), other.entries_.end());
  return MultiIndex(std::move(merged));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << '(' << entries_[i].position << ',' << entries_[i].exponent << ')';
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------- IndexTuple

IndexTuple::IndexTuple(std::vector<std::uint32_t> values) : values_(std::move(values)) {
  for (auto v : values_) {
    if (v == 0) throw PreconditionViolation("tuple entries are 1-based");
  }
  sorted_ = std::is_sorted(values_.begin(), values_.end());
}

std::uint64_t IndexTuple::class_size() const { return multinomial(tuple_to_index(*this)); }

// ---------------------------------------------------------------- PrimeTable

PrimeTable::PrimeTable(std::size_t prime_count, std::uint64_t factor_bound) : factor_bound_(factor_bound) {
  if (prime_count == 0) throw PreconditionViolation("prime table needs at least one prime");
  auto all = sieve_primes(nth_prime_upper_bound(prime_count));
  all.resize(prime_count);
  primes_ = std::move(all);

  if (factor_bound_ >= 2) {
    spf_.assign(factor_bound_ + 1, 0);
    for (std::uint64_t i = 2; i <= factor_bound_; ++i) {
      if (spf_[i] != 0) continue;
      for (std::uint64_t j = i; j <= factor_bound_; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }
}

std::uint64_t PrimeTable::prime(std::uint32_t position) const {
  if (position == 0 || position > primes_.size()) {
    throw BoundExceeded("prime position " + std::to_string(position) + " outside table of " +
                        std::to_string(primes_.size()) + " primes");
  }
  return primes_[position - 1];
}

std::uint32_t PrimeTable::position_of(std::uint64_t p) const noexcept {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return 0;
  return static_cast<std::uint32_t>(it - primes_.begin() + 1);
}

std::uint64_t PrimeTable::smallest_factor(std::uint64_t n) const {
  if (n < 2 || n > factor_bound_) throw BoundExceeded("value outside the factor cache");
  return spf_[n];
}

std::shared_ptr<const std::vector<std::uint64_t>> first_primes(std::size_t count) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<std::uint64_t>> cache =
      std::make_shared<const std::vector<std::uint64_t>>();
  std::lock_guard<std::mutex> lock(mu);
  if (cache->size() < count) {
    const std::size_t target = std::max<std::size_t>(count, 2 * cache->size());
    auto all = sieve_primes(nth_prime_upper_bound(target));
    all.resize(target);
    cache = std::make_shared<const std::vector<std::uint64_t>>(std::move(all));
  }
  return cache;
}

// ---------------------------------------------------------------- Bohr side

MultiIndex factor_to_index(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw PreconditionViolation("factor_to_index requires n >= 1");
  std::vector<MultiIndex::Entry> entries;
  auto push = [&](std::uint64_t p) {
    const auto pos = table.position_of(p);
    if (pos == 0) throw BoundExceeded("prime factor " + std::to_string(p) + " of " + std::to_string(n) +
                                      " lies outside the prime table");
    if (!entries.empty() && entries.back().position == pos) {
      ++entries.back().exponent;
    } else {
      entries.push_back({pos, 1});
    }
  };

  std::uint64_t rest = n;
  if (rest <= table.factor_bound()) {
    while (rest > 1) {
      const auto p = table.smallest_factor(rest);
      push(p);
      rest /= p;
    }
  } else {
    for (auto p : table.primes()) {
      if (rest == 1) break;
      while (rest % p == 0) {
        push(p);
        rest /= p;
      }
    }
    if (rest != 1) {
      throw BoundExceeded(std::to_string(n) + " has a prime factor beyond the " + std::to_string(table.size()) +
                          "-th prime");
    }
  }
  return MultiIndex(std::move(entries));
}

std::uint64_t index_to_integer(const MultiIndex& alpha, const PrimeTable& table) {
  std::uint64_t out = 1;
  for (const auto& e : alpha.entries()) {
    const auto p = table.prime(e.position);
    for (std::uint32_t i = 0; i < e.exponent; ++i) out = checked_mul(out, p);
  }
  return out;
}

std::uint32_t big_omega(std::uint64_t n) {
  if (n == 0) throw PreconditionViolation("Omega(0) is undefined");
  std::uint32_t count = 0;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  }
  return n > 1 ? count + 1 : count;
}

// ---------------------------------------------------------------- combinatorics

void for_each_lambda(std::uint32_t m, std::uint32_t k, const std::function<void(const MultiIndex&)>& visit) {
  if (k == 0) throw PreconditionViolation("Lambda(m,k) needs k >= 1");
  std::vector<std::uint32_t> dense(k, 0);
  // Recursive fill: position i takes exponents from `left` down to 0, the
  // last position absorbs whatever remains.
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i, std::uint32_t left) {
    if (i + 1 == k) {
      dense[i] = left;
      visit(MultiIndex::from_dense(dense));
      return;
    }
    for (std::uint32_t e = left + 1; e-- > 0;) {
      dense[i] = e;
      rec(i + 1, left - e);
    }
    dense[i] = 0;
  };
  rec(0, m);
}

std::vector<MultiIndex> enumerate_lambda(std::uint32_t m, std::uint32_t k) {
  std::vector<MultiIndex> out;
  for_each_lambda(m, k, [&](const MultiIndex& a) { out.push_back(a); });
  return out;
}

std::vector<IndexTuple> enumerate_sorted_tuples(std::uint32_t m, std::uint32_t k) {
  if (k == 0) throw PreconditionViolation("J(m,k) needs k >= 1");
  std::vector<IndexTuple> out;
  std::vector<std::uint32_t> cur(m, 1);
  if (m == 0) {
    out.emplace_back();
    return out;
  }
  while (true) {
    out.emplace_back(cur);
    // Advance to the next nondecreasing tuple.
    std::size_t i = m;
    while (i > 0 && cur[i - 1] == k) --i;
    if (i == 0) break;
    const auto v = cur[i - 1] + 1;
    for (std::size_t j = i - 1; j < m; ++j) cur[j] = v;
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // out * (n - r + i) / i is exact at every step; divide by the gcd first to
    // delay overflow.
    std::uint64_t num = n - r + i;
    std::uint64_t den = i;
    const auto g1 = std::gcd(out, den);
    out /= g1;
    den /= g1;
    num /= den;
    out = checked_mul(out, num);
  }
  return out;
}

std::uint64_t multinomial(const MultiIndex& alpha) {
  std::uint64_t out = 1;
  std::uint64_t total = 0;
  for (const auto& e : alpha.entries()) {
    total += e.exponent;
    out = checked_mul(out, binomial(total, e.exponent));
  }
  return out;
}

MultiIndex tuple_to_index(const IndexTuple& tuple) {
  std::vector<MultiIndex::Entry> entries;
  entries.reserve(tuple.size());
  for (auto v : tuple.values()) entries.push_back({v, 1});
  return MultiIndex(std::move(entries));
}

MultiIndex sorted_tuple_to_index(const IndexTuple& tuple) {
  if (!tuple.sorted()) throw UnsortedInput("tuple must be nondecreasing to lie in J(m,k)");
  return tuple_to_index(tuple);
}

IndexTuple index_to_tuple(const MultiIndex& alpha) {
  std::vector<std::uint32_t> values;
  values.reserve(alpha.degree());
  for (const auto& e : alpha.entries()) values.insert(values.end(), e.exponent, e.position);
  return IndexTuple(std::move(values));
}

}  // namespace bohr
