#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bohr/kernel.hpp"
#include "bohr/series.hpp"

namespace bohr {

// Numerics on the finite polytorus T^k.
//
// Randomized routines take an explicit seed and are pure given it. Work is
// split into tasks seeded by derive_seed(seed, task) and reduced in task
// order, so results do not depend on scheduling.

/// A point of T^k stored by its angles; w_j = exp(i angle_j).
struct TorusPoint {
  std::vector<double> angles;

  std::size_t size() const noexcept { return angles.size(); }
  Complex w(std::size_t j) const { return std::polar(1.0, angles.at(j)); }

  static TorusPoint zeros(std::size_t k) { return {std::vector<double>(k, 0.0)}; }
};

enum class NormKind { L2Exact, LpMonteCarlo, SupEstimate };

const char* norm_kind_name(NormKind k) noexcept;

struct NormReport {
  NormKind kind = NormKind::L2Exact;
  double value = 0.0;
  double p = 2.0;             // LpMonteCarlo
  std::uint64_t samples = 0;  // LpMonteCarlo
  double stderr_ = 0.0;       // LpMonteCarlo, jackknife
  std::uint32_t restarts = 0; // SupEstimate
  TorusPoint best_point;      // SupEstimate witness, value == |P(best_point)|
  std::uint64_t seed = 0;
};

/// sum c_alpha w^alpha. Throws DimensionMismatch when w has the wrong size.
Complex eval_poly(const TrigPolynomial& poly, const TorusPoint& w);

/// Parseval: sqrt(sum |c_alpha|^2).
NormReport l2_norm(const TrigPolynomial& poly);

/// (E |P(w)|^p)^{1/p} over Haar-uniform w; p >= 1, samples >= 1000.
NormReport lp_norm_mc(const TrigPolynomial& poly, double p, std::uint64_t samples, std::uint64_t seed);

struct SupOptions {
  std::uint32_t max_sweeps = 200;
  /// Extra starting points tried before the random ones.
  std::vector<TorusPoint> warm_starts;
};

/// Multistart coordinate ascent. Restart 0 starts at the origin, the others
/// at random angles; each coordinate is maximized by a grid scan followed by
/// golden-section refinement. The reported value is |P(best_point)|, a
/// lower bound on the true sup norm. restarts >= 8 (PreconditionViolation).
NormReport sup_norm(const TrigPolynomial& poly, std::uint32_t restarts, std::uint64_t seed,
                    const SupOptions& options = {});

/// The coefficient family m!/alpha! over Lambda(m,n), in enumerate_lambda order.
std::vector<Complex> multinomial_family(std::uint32_t m, std::uint32_t n);

struct KszResult {
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::vector<int> signs;  // aligned with enumerate_lambda(m, n)
  double sup = 0.0;
  double denominator = 0.0;  // sqrt(n log m sum |a|^2)
  double ratio = 0.0;
  std::vector<double> running_min;  // best ratio after each trial
  std::uint32_t trials = 0;
  std::uint64_t seed = 0;
};

/// Best of `trials` random sign patterns for sum eps_alpha a_alpha z^alpha.
/// Throws DegenerateDegree for m < 2.
KszResult ksz_search(std::uint32_t m, std::uint32_t n, std::span<const Complex> coefficients, std::uint32_t trials,
                     std::uint64_t seed, std::uint32_t sup_restarts = 8);

struct KhinchineReport {
  std::uint32_t m = 0;
  double r = 1.0;
  double s = 2.0;
  double lr = 0.0;
  double ls = 0.0;
  double ratio = 0.0;   // ls / lr
  double stderr_ = 0.0; // jackknife, same samples for both norms
  double bound = 0.0;   // sqrt(s/r)^m
  bool violated = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// One report per (r, s) pair; all pairs share the same samples.
/// Requires an m-homogeneous polynomial and 1 <= r <= s < inf.
std::vector<KhinchineReport> khinchine_ratios(const TrigPolynomial& poly, std::span<const std::pair<double, double>> pairs,
                                              std::uint64_t samples, std::uint64_t seed);
KhinchineReport khinchine_ratio(const TrigPolynomial& poly, double r, double s, std::uint64_t samples,
                                std::uint64_t seed);

struct BhReport {
  std::uint32_t m = 0;
  double coefficient_norm = 0.0;  // (sum |c|^{2m/(m+1)})^{(m+1)/2m}
  double sup = 0.0;
  double ratio = 0.0;
  TorusPoint witness;
};

BhReport bh_ratio(const TrigPolynomial& poly, std::uint32_t restarts, std::uint64_t seed);

/// Nonnegative coefficients indexed by nondecreasing tuples of length >= p.
struct Fred1Input {
  std::uint32_t n = 1;
  std::uint32_t p = 2;
  double rho = 1.0;
  std::vector<double> r;  // r_1 .. r_n
  std::map<std::vector<std::uint32_t>, double> c;
};

struct Fred1Result {
  double lhs = 0.0;
  double rhs = 0.0;
  double first_factor = 0.0;
  double second_factor = 0.0;
  bool holds = true;  // lhs <= rhs (1 + 1e-12)
};

/// Both sides of the split Cauchy-Schwarz/Hoelder bound for
/// sum_m sum_{i in J(m,n)} c_i r_{i_1} ... r_{i_m}. Throws
/// PreconditionViolation when some r_i >= rho, p < 2, or the input is malformed.
Fred1Result fred1_check(const Fred1Input& input);

/// Mixed (l_2 over the first m-p indices, l_{2p/(p+1)} over the last p)
/// coefficient norm of an m-homogeneous polynomial; 1 <= p <= m.
double fred2_mixed_norm(const TrigPolynomial& poly, std::uint32_t p);

struct Fred2Report {
  std::uint32_t m = 0;
  std::uint32_t p = 0;
  double lhs = 0.0;
  double sup = 0.0;
  double ratio = 0.0;
  double reference = 0.0;  // [kappa (1 + 1/p)]^m
  double kappa = 0.0;
};

Fred2Report fred2_ratio(const TrigPolynomial& poly, std::uint32_t p, std::uint32_t restarts, std::uint64_t seed,
                        double kappa = 1.01);

struct SidonResult {
  std::uint32_t n_terms = 0;
  double estimate = 0.0;  // sum |a_n| / sup |lift|
  std::vector<Complex> coefficients;
  TorusPoint witness;
  double sup = 0.0;
  /// sqrt(N) / exp(sqrt(log N log log N / 2)); NaN for N < 3.
  double asymptotic_rhs = std::numeric_limits<double>::quiet_NaN();
  double upper_bound = 0.0;  // sqrt(N)
  std::uint32_t restarts = 0;
  std::uint64_t seed = 0;
};

struct SidonOptions {
  std::uint32_t iterations = 160;
  std::uint32_t inner_restarts = 8;
  std::uint32_t verify_restarts = 96;
  std::vector<Complex> warm_start;
  /// Starting point for the sup searches of the warm-started restart;
  /// padded with zero angles when N gains a prime.
  TorusPoint warm_witness;
};

/// Alternating maximization of sum |a_n| / sup_t |sum a_n n^{-it}| over
/// a in C^N with a_1 >= 0. The denominator is the sup norm of the Bohr lift
/// on T^{pi(N)}; the final candidates are re-verified with more restarts.
SidonResult sidon_constant(std::uint32_t n_terms, std::uint32_t restarts, std::uint64_t seed,
                           const SidonOptions& options = {});

/// S(1) .. S(n_max), each warm-started from the previous optimum.
std::vector<SidonResult> sidon_sweep(std::uint32_t n_max, std::uint32_t restarts, std::uint64_t seed,
                                     const SidonOptions& options = {});

double sidon_asymptotic_rhs(std::uint32_t n_terms);

struct BcqReport {
  std::uint32_t m = 0;
  double weighted_sum = 0.0;  // sum |a_n| (log n)^{(m-1)/2} / n^{(m-1)/2m}
  double sup = 0.0;
  double ratio = 0.0;
};

/// Requires an m-homogeneous Dirichlet polynomial (m >= 1) whose support
/// factors over the table.
BcqReport bcq_weighted_sum(const CoeffSeries& d, const PrimeTable& table, std::uint32_t restarts,
                           std::uint64_t seed);

struct H2Result {
  std::uint32_t truncation = 0;
  double empirical_ratio = 0.0;
  double exact_constant = 0.0;
};

/// Extremal f = sum_{alpha <= N} z^alpha w^alpha: returns
/// sum |f^(alpha) z^alpha| / ||f||_2 and prod (1 - |z_j|^2)^{-1/2}.
/// Requires |z_j| < 1.
H2Result h2_sharp_constant(std::span<const Complex> z, std::uint32_t truncation);

/// Uniformly random m-homogeneous polynomial on T^n with complex Gaussian
/// coefficients (test and suite helper).
TrigPolynomial random_homogeneous(std::uint32_t m, std::uint32_t n, std::uint64_t seed);

}  // namespace bohr
