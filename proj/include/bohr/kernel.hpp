#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bohr {

/// Sparse exponent vector alpha in N_0^(N).
///
/// Positions are 1-based (position j stands for the j-th variable, or the
/// j-th prime on the Dirichlet side). Entries are kept in canonical form:
/// ascending positions, no zero exponents. Ordering is lexicographic on the
/// canonical entry list, which makes MultiIndex usable as a map key.
class MultiIndex {
 public:
  struct Entry {
    std::uint32_t position;
    std::uint32_t exponent;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  MultiIndex() = default;

  /// Accepts entries in any order; zero exponents are dropped and repeated
  /// positions are merged by adding their exponents.
  explicit MultiIndex(std::vector<Entry> entries);

  /// Builds from a dense exponent vector; dense[i] is the exponent of
  /// position i+1.
  static MultiIndex from_dense(std::span<const std::uint32_t> dense);

  /// Unit index e_position.
  static MultiIndex unit(std::uint32_t position);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Sum of exponents, |alpha|.
  std::uint64_t degree() const noexcept;

  /// Exponent at a position (0 when absent).
  std::uint32_t exponent(std::uint32_t position) const noexcept;

  /// Largest position with nonzero exponent, 0 for the empty index.
  std::uint32_t max_position() const noexcept;

  /// Dense exponent vector of length `length` (must be >= max_position()).
  std::vector<std::uint32_t> to_dense(std::size_t length) const;

  /// alpha + beta.
  MultiIndex operator+(const MultiIndex& other) const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<Entry> entries_;
};

/// An element of M(m,k): m values in [1,k].
class IndexTuple {
 public:
  IndexTuple() = default;
  explicit IndexTuple(std::vector<std::uint32_t> values);

  const std::vector<std::uint32_t>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool sorted() const noexcept { return sorted_; }

  /// Cardinality of the permutation class of this tuple, m!/alpha(j)!.
  std::uint64_t class_size() const;

  friend bool operator==(const IndexTuple& a, const IndexTuple& b) { return a.values_ == b.values_; }
  friend auto operator<=>(const IndexTuple& a, const IndexTuple& b) { return a.values_ <=> b.values_; }

 private:
  std::vector<std::uint32_t> values_;
  bool sorted_ = true;
};

/// The first K primes plus a smallest-prime-factor cache for integers up to
/// a bound. Immutable after construction, so a table may be shared freely.
class PrimeTable {
 public:
  /// `prime_count` primes; factorization of n <= `factor_bound` is O(log n),
  /// larger n fall back to trial division by the tabulated primes.
  explicit PrimeTable(std::size_t prime_count, std::uint64_t factor_bound = 0);

  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }

  /// The j-th prime, 1-based.
  std::uint64_t prime(std::uint32_t position) const;

  /// 1-based position of a tabulated prime, 0 if p is not in the table.
  std::uint32_t position_of(std::uint64_t p) const noexcept;

  std::uint64_t factor_bound() const noexcept { return factor_bound_; }

  /// Smallest prime factor of 2 <= n <= factor_bound() from the cache.
  std::uint64_t smallest_factor(std::uint64_t n) const;

 private:
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint32_t> spf_;
  std::uint64_t factor_bound_ = 0;
};

/// Shared, growable list of the first primes for sequence evaluation over
/// long horizons. The returned snapshot stays valid after later growth.
std::shared_ptr<const std::vector<std::uint64_t>> first_primes(std::size_t count);

/// n = prod p_j^alpha_j. Throws BoundExceeded when a prime factor of n is not
/// among the tabulated primes.
MultiIndex factor_to_index(std::uint64_t n, const PrimeTable& table);

/// prod p_j^alpha_j with checked multiplication. Throws Overflow or
/// BoundExceeded (position beyond the table).
std::uint64_t index_to_integer(const MultiIndex& alpha, const PrimeTable& table);

/// Omega(n): number of prime factors counted with multiplicity, by trial
/// division (no table required).
std::uint32_t big_omega(std::uint64_t n);

/// Lambda(m,k) in a fixed order: dense exponent vectors in descending
/// lexicographic order, so (2,2) yields (2,0), (1,1), (0,2).
void for_each_lambda(std::uint32_t m, std::uint32_t k, const std::function<void(const MultiIndex&)>& visit);
std::vector<MultiIndex> enumerate_lambda(std::uint32_t m, std::uint32_t k);

/// J(m,k): nondecreasing tuples in ascending lexicographic order.
std::vector<IndexTuple> enumerate_sorted_tuples(std::uint32_t m, std::uint32_t k);

/// C(n, r), exact; throws Overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// |alpha|! / alpha!, exact; throws Overflow.
std::uint64_t multinomial(const MultiIndex& alpha);

/// alpha_r = #{q : j_q = r}. Defined for every tuple of M(m,k).
MultiIndex tuple_to_index(const IndexTuple& tuple);

/// The inverse direction J(m,k) -> Lambda(m,k) on sorted tuples only;
/// throws UnsortedInput otherwise.
MultiIndex sorted_tuple_to_index(const IndexTuple& tuple);

/// j_alpha = (1,...,1, 2,...,2, ...), the sorted representative.
IndexTuple index_to_tuple(const MultiIndex& alpha);

}  // namespace bohr
