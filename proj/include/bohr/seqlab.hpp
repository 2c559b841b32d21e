#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bohr {

// Positive-sequence analytics.
//
// Named families carry an analytic classification (AsymptoticTag) derived
// from closed-form partial-sum asymptotics; sampled data only ever yields
// finite-horizon evidence, never a limit claim.

enum class Family { PowerLog, PrimePower, Counterexample25, ConverseGap, EventuallyZero, Sampled };

const char* family_name(Family f) noexcept;

/// IN iff exponent > critical, or exponent == critical and boundary_in.
struct CriticalExponent {
  double critical = 0.0;
  bool boundary_in = true;

  bool contains(double exponent) const noexcept {
    return exponent > critical || (exponent == critical && boundary_in);
  }

  friend bool operator==(const CriticalExponent&, const CriticalExponent&) = default;
};

/// Analytic facts about a named family.
struct AsymptoticTag {
  /// limsup (1/log n) sum_{j<=n} z*_j^2; may be +infinity.
  double b_squared = 0.0;
  /// sup_n |z_n| (+infinity for unbounded families).
  double sup_abs = 0.0;
  CriticalExponent lp;       // membership in l_p
  CriticalExponent lq_weak;  // membership in l_{q,infinity} for finite q
  bool l20 = true;
  bool l2log = true;
  /// First index from which the family is nonincreasing.
  std::uint64_t burn_in = 1;

  friend bool operator==(const AsymptoticTag&, const AsymptoticTag&) = default;
};

class SequenceSpec {
 public:
  /// z_n = c n^{-a} (log(n+1))^b; requires c >= 0, a >= 0.
  static SequenceSpec power_log(double c, double a, double b);
  /// z_n = c p_n^{-a}; requires c >= 0, a >= 0.
  static SequenceSpec prime_power(double c, double a);
  /// Block sequence over n_k = a^{k^2 (k+1)}; requires integer a >= 2.
  static SequenceSpec counterexample25(std::uint32_t base);
  /// z_1^2 + ... + z_n^2 = log n * exp(log log n / log n) for n >= 2.
  static SequenceSpec converse_gap();
  /// The given values followed by zeros.
  static SequenceSpec eventually_zero(std::vector<double> values);
  /// A finite sample; carries no analytic tag.
  static SequenceSpec sampled(std::vector<double> values);

  Family family() const noexcept { return family_; }
  bool is_named() const noexcept { return family_ != Family::Sampled; }

  double c() const noexcept { return c_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::uint32_t base() const noexcept { return base_; }
  const std::vector<double>& values() const noexcept { return values_; }

  const std::optional<AsymptoticTag>& tag() const noexcept { return tag_; }

  /// z_n for n >= 1. Sampled sequences throw PreconditionViolation past
  /// their last value.
  double eval(std::uint64_t n) const;

  /// z_1 .. z_count (clamped to the sample size for sampled data).
  std::vector<double> prefix(std::uint64_t count) const;

  /// Number of available terms (max uint64 for named families).
  std::uint64_t length() const noexcept;

  std::string describe() const;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;

 private:
  SequenceSpec() = default;

  Family family_ = Family::Sampled;
  double c_ = 0.0;
  double a_ = 0.0;
  double b_ = 0.0;
  std::uint32_t base_ = 0;
  std::vector<double> values_;
  std::optional<AsymptoticTag> tag_;
};

std::vector<double> decreasing_rearrangement(std::span<const double> values);

struct Checkpoint {
  std::uint64_t n = 0;
  double value = 0.0;  // (1/log n) sum_{j<=n} z*_j^2
};

enum class Basis { Analytic, Numeric };

struct BEstimate {
  std::vector<Checkpoint> checkpoints;
  /// Max checkpoint value over the tail window (the last kTailWindow
  /// checkpoints).
  double running_sup = 0.0;
  /// Exact limsup of the checkpoint quantity when the family admits one.
  std::optional<double> analytic_limit;
  Basis basis = Basis::Numeric;
  std::uint64_t horizon = 0;

  static constexpr std::size_t kTailWindow = 5;

  /// b(z): sqrt of the analytic limsup when known, else of running_sup.
  double b_value() const;
};

/// Checkpoints at n = 2, 4, 8, ... <= horizon plus the horizon itself.
/// Throws HorizonTooSmall when horizon < 100 or fewer than 10 checkpoints fit.
BEstimate b_functional(const SequenceSpec& z, std::uint64_t horizon);

enum class SpaceKind { Lp, LqWeak, L20, L2Log };

struct SequenceSpace {
  SpaceKind kind = SpaceKind::Lp;
  /// p for Lp, q for LqWeak (may be +infinity); unused otherwise.
  double exponent = 2.0;

  static SequenceSpace lp(double p) { return {SpaceKind::Lp, p}; }
  static SequenceSpace lq_weak(double q) { return {SpaceKind::LqWeak, q}; }
  static SequenceSpace l20() { return {SpaceKind::L20, 2.0}; }
  static SequenceSpace l2log() { return {SpaceKind::L2Log, 2.0}; }

  std::string describe() const;
};

enum class Membership { In, Out, Undecided };

const char* membership_name(Membership m) noexcept;

struct MembershipReport {
  Membership verdict = Membership::Undecided;
  Basis basis = Basis::Numeric;
  SequenceSpace space;
  /// Finite-horizon evidence: the statistic for this space and the n where
  /// it is extremal (see space_membership).
  double witness_value = 0.0;
  std::uint64_t witness_n = 0;
  std::uint64_t horizon = 0;
  std::string note;
};

/// Named families decide from their tag; sampled data return Undecided with
/// evidence. Statistics: l_p partial sum of z*^p; l_{q,inf} max z*_n n^{1/q};
/// l_{2,0} z*_N sqrt(N) at the horizon; l_{2,log} max z*_n sqrt(n / log n).
MembershipReport space_membership(const SequenceSpec& z, const SequenceSpace& space, std::uint64_t horizon);

struct Counterexample25Certificate {
  std::uint32_t base = 0;
  std::uint32_t k_max = 0;
  std::vector<long double> boundaries;      // n_1 .. n_kmax
  std::vector<long double> block_identity;  // n_k * r_{n_k}^2, expected k
  long double series_sum = 0;               // sum_{k<=kmax} (k+1)/n_k
  std::vector<long double> chain_bounds;    // series_sum + (k+1)/log n_k
  bool ratios_decreasing = false;
  /// Smallest k from which every chain bound up to k_max is < 1 (0 if none).
  std::uint32_t first_block_below_one = 0;
  bool accepted = false;
};

/// r_j^2 for the block sequence, evaluated at a (possibly huge) index.
long double counterexample25_r_squared(std::uint32_t base, long double j);

/// n_k = a^{k^2 (k+1)} as a long double.
long double counterexample25_boundary(std::uint32_t base, std::uint32_t k);

/// Builds the sequence and its certificate. Throws BadBase when a < 2,
/// when (k+1)/n_k fails to decrease, or when sum (k+1)/n_k + margin >= 1.
std::pair<SequenceSpec, Counterexample25Certificate> counterexample25(std::uint32_t base, std::uint32_t k_max = 6);

inline constexpr long double kCounterexampleMargin = 1e-3L;

}  // namespace bohr
