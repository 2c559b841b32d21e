#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bohr/kernel.hpp"
#include "bohr/seqlab.hpp"
#include "bohr/series.hpp"

namespace bohr {

/// Completely multiplicative sequence determined by its values at primes:
/// b_n = prod b_{p_j}^{alpha_j} for n = p^alpha.
class MultiplicativeSeq {
 public:
  explicit MultiplicativeSeq(SequenceSpec prime_values, std::string name = {});

  /// n^{-sigma}, i.e. prime values p_j^{-sigma}.
  static MultiplicativeSeq power(double sigma);

  const SequenceSpec& prime_values() const noexcept { return prime_values_; }
  const std::string& name() const noexcept { return name_; }

  double eval(std::uint64_t n, const PrimeTable& table) const;

 private:
  SequenceSpec prime_values_;
  std::string name_;
};

/// H_p (p in [1, inf]) or its m-homogeneous part H_p^m.
struct HardySpace {
  double p = std::numeric_limits<double>::infinity();
  std::optional<std::uint32_t> m;

  static HardySpace hinf() { return {}; }
  static HardySpace hp(double p) { return {p, std::nullopt}; }
  static HardySpace hinfm(std::uint32_t m) { return {std::numeric_limits<double>::infinity(), m}; }
  static HardySpace hpm(double p, std::uint32_t m) { return {p, m}; }

  bool infinite() const noexcept { return std::isinf(p); }

  /// Parses hinf | hp:<p> | hinfm:<m> | hpm:<p>:<m>; throws ParseError.
  static HardySpace parse(const std::string& text);
  /// Inverse of parse.
  std::string describe() const;

  friend bool operator==(const HardySpace&, const HardySpace&) = default;
};

enum class Verdict { Yes, No, Undecided };

const char* verdict_name(Verdict v) noexcept;

struct MultiplierVerdict {
  Verdict verdict = Verdict::Undecided;
  HardySpace space;
  /// Clause of the classification that fired: "1a", "1b", "2a" or "2b".
  std::string clause;
  std::string reason;
  /// sup_j |b_{p_j}| (analytic for named families, over the sample otherwise).
  double sup_abs = 0.0;
  std::vector<MembershipReport> memberships;
  std::optional<BEstimate> b_estimate;
};

/// Default horizon used for finite-horizon evidence.
inline constexpr std::uint64_t kDefaultEvidenceHorizon = 1u << 16;

/// Classification of multiplicative l1-multipliers:
///   H_p^m (p < inf): YES iff (b_{p_k}) in l_2.
///   H_inf^m:         YES iff (b_{p_k}) in l_{2m/(m-1), inf}.
///   H_p (p < inf):   YES iff all |b_{p_j}| < 1 and (b_{p_k}) in l_2.
///   H_inf:           YES if all |b_{p_j}| < 1 and b < 1; NO if some
///                    |b_{p_j}| >= 1 or b > 1; UNDECIDED at b = 1.
/// Sampled prime values propagate UNDECIDED unless a sampled value already
/// violates |b_{p_j}| < 1.
MultiplierVerdict classify(const MultiplicativeSeq& b, const HardySpace& space,
                           std::uint64_t horizon = kDefaultEvidenceHorizon);

struct VerdictTable {
  std::vector<std::string> rows;
  std::vector<HardySpace> spaces;
  std::vector<std::vector<MultiplierVerdict>> cells;  // [row][space]

  bool empty() const noexcept { return rows.empty() || spaces.empty(); }
  /// Long-format CSV: sequence,space,verdict,clause,sup_abs,b,reason.
  std::string to_csv() const;
};

VerdictTable verdict_table(const std::vector<MultiplicativeSeq>& seqs, const std::vector<HardySpace>& spaces,
                           std::uint64_t horizon = kDefaultEvidenceHorizon);

/// Rows of the canonical multiplier suite and the spaces it is run against.
std::vector<MultiplicativeSeq> canonical_sequences();
std::vector<HardySpace> canonical_spaces();

/// Expected verdicts for the canonical suite, same layout as the table.
std::vector<std::vector<Verdict>> canonical_expected();

/// sum |a_n b_n| over the support of a Dirichlet polynomial.
double sanity_partial_sums(const MultiplicativeSeq& b, const CoeffSeries& d, const PrimeTable& table);

}  // namespace bohr
