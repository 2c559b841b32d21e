#include "bohr/torus.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <tuple>

#include "bohr/errors.hpp"
#include "bohr/random.hpp"

namespace bohr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kBatch = 4096;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

// Flattened polynomial with a per-variable power table. Coefficients can be
// replaced in place, which the Sidon search relies on.
class Evaluator {
 public:
  explicit Evaluator(const TrigPolynomial& poly) : k_(poly.nvars()) {
    max_exp_.assign(k_, 0);
    offsets_.push_back(0);
    for (const auto& [alpha, c] : poly.terms()) {
      coef_.push_back(c);
      for (const auto& e : alpha.entries()) {
        var_.push_back(e.position - 1);
        exp_.push_back(e.exponent);
        max_exp_[e.position - 1] = std::max(max_exp_[e.position - 1], e.exponent);
      }
      offsets_.push_back(static_cast<std::uint32_t>(var_.size()));
    }
    pw_offset_.resize(k_ + 1, 0);
    for (std::uint32_t j = 0; j < k_; ++j) pw_offset_[j + 1] = pw_offset_[j] + max_exp_[j] + 1;
    pw_.assign(pw_offset_[k_], Complex(1.0, 0.0));
    angles_.assign(k_, 0.0);
  }

  std::uint32_t nvars() const noexcept { return k_; }
  std::size_t nterms() const noexcept { return coef_.size(); }
  std::uint32_t max_exp(std::uint32_t j) const noexcept { return max_exp_[j]; }
  const std::vector<double>& angles() const noexcept { return angles_; }
  std::vector<Complex>& coefficients() noexcept { return coef_; }

  // Accurate powers (one polar per entry); used by the optimizer.
  void set_angle(std::uint32_t j, double theta) {
    angles_[j] = theta;
    Complex* p = &pw_[pw_offset_[j]];
    for (std::uint32_t e = 1; e <= max_exp_[j]; ++e) p[e] = std::polar(1.0, e * theta);
  }

  void set_point(std::span<const double> angles) {
    for (std::uint32_t j = 0; j < k_; ++j) set_angle(j, angles[j]);
  }

  // Powers by repeated multiplication; used for Monte-Carlo sampling.
  void set_point_fast(std::span<const double> angles) {
    for (std::uint32_t j = 0; j < k_; ++j) {
      angles_[j] = angles[j];
      Complex* p = &pw_[pw_offset_[j]];
      const Complex base = std::polar(1.0, angles[j]);
      for (std::uint32_t e = 1; e <= max_exp_[j]; ++e) p[e] = p[e - 1] * base;
    }
  }

  Complex value() const {
    Complex sum{};
    for (std::size_t t = 0; t < coef_.size(); ++t) {
      Complex prod = coef_[t];
      for (std::uint32_t q = offsets_[t]; q < offsets_[t + 1]; ++q) prod *= pw_[pw_offset_[var_[q]] + exp_[q]];
      sum += prod;
    }
    return sum;
  }

  // P restricted to variable j: sum_e slice[e] w_j^e.
  void slice(std::uint32_t j, std::vector<Complex>& out) const {
    out.assign(max_exp_[j] + 1, Complex{});
    for (std::size_t t = 0; t < coef_.size(); ++t) {
      Complex prod = coef_[t];
      std::uint32_t ej = 0;
      for (std::uint32_t q = offsets_[t]; q < offsets_[t + 1]; ++q) {
        if (var_[q] == j) {
          ej = exp_[q];
        } else {
          prod *= pw_[pw_offset_[var_[q]] + exp_[q]];
        }
      }
      out[ej] += prod;
    }
  }

 private:
  std::uint32_t k_;
  std::vector<Complex> coef_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> var_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> max_exp_;
  std::vector<std::uint32_t> pw_offset_;
  std::vector<Complex> pw_;
  std::vector<double> angles_;
};

double slice_abs(const std::vector<Complex>& q, double phi) {
  const Complex z = std::polar(1.0, phi);
  Complex acc = q.back();
  for (std::size_t e = q.size() - 1; e-- > 0;) acc = acc * z + q[e];
  return std::abs(acc);
}

// Maximizes |sum_e q_e e^{i e phi}| starting from the current angle.
double maximize_slice(const std::vector<Complex>& q, double current, double& best_phi) {
  const std::size_t degree = q.size() - 1;
  best_phi = current;
  double best = slice_abs(q, current);
  const std::size_t grid = 16 * degree + 16;
  const double h = kTwoPi / static_cast<double>(grid);
  double grid_best = -1.0;
  double grid_phi = 0.0;
  for (std::size_t g = 0; g < grid; ++g) {
    const double v = slice_abs(q, g * h);
    if (v > grid_best) {
      grid_best = v;
      grid_phi = g * h;
    }
  }
  // Golden-section refinement in the bracket around the best grid point.
  constexpr double invphi = 0.6180339887498949;
  double lo = grid_phi - h;
  double hi = grid_phi + h;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = slice_abs(q, x1);
  double f2 = slice_abs(q, x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = slice_abs(q, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = slice_abs(q, x1);
    }
  }
  const double cand_phi = f1 >= f2 ? x1 : x2;
  const double cand = std::max(f1, f2);
  if (cand > best) {
    best = cand;
    best_phi = wrap_angle(cand_phi);
  }
  if (grid_best > best) {
    best = grid_best;
    best_phi = grid_phi;
  }
  return best;
}

// Coordinate ascent from the evaluator's current point; returns |P| there.
double ascend(Evaluator& ev, std::uint32_t max_sweeps) {
  std::vector<Complex> q;
  double value = std::abs(ev.value());
  for (std::uint32_t sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = value;
    for (std::uint32_t j = 0; j < ev.nvars(); ++j) {
      if (ev.max_exp(j) == 0) continue;
      ev.slice(j, q);
      double phi = 0.0;
      const double v = maximize_slice(q, ev.angles()[j], phi);
      if (v > value) {
        ev.set_angle(j, phi);
        value = v;
      }
    }
    value = std::abs(ev.value());
    if (value - before <= 1e-15 * std::max(1.0, value)) break;
  }
  return value;
}

struct SupResult {
  double value = 0.0;
  std::vector<double> best;
};

SupResult sup_search(Evaluator& ev, std::uint32_t restarts, std::uint64_t seed, std::uint32_t max_sweeps,
                     const std::vector<std::vector<double>>& warm) {
  SupResult out;
  out.value = -1.0;
  const std::uint32_t k = ev.nvars();
  auto run = [&](const std::vector<double>& start) {
    ev.set_point(start);
    const double v = ascend(ev, max_sweeps);
    if (v > out.value) {
      out.value = v;
      out.best = ev.angles();
    }
  };
  for (const auto& w : warm) {
    if (w.size() != k) throw DimensionMismatch("warm start has the wrong dimension");
    run(w);
  }
  std::vector<double> start(k, 0.0);
  for (std::uint32_t r = 0; r < restarts; ++r) {
    if (r == 0) {
      std::fill(start.begin(), start.end(), 0.0);
    } else {
      Rng rng(derive_seed(seed, r));
      for (auto& a : start) a = rng.angle();
    }
    run(start);
  }
  if (out.value < 0.0) out.value = 0.0;
  return out;
}

// |P| at Haar-uniform points, sampled in seeded batches.
std::vector<double> sample_abs(const TrigPolynomial& poly, std::uint64_t samples, std::uint64_t seed) {
  Evaluator ev(poly);
  std::vector<double> out;
  out.reserve(samples);
  std::vector<double> angles(poly.nvars());
  const std::uint64_t batches = (samples + kBatch - 1) / kBatch;
  for (std::uint64_t b = 0; b < batches; ++b) {
    Rng rng(derive_seed(seed, b));
    const std::uint64_t count = std::min(kBatch, samples - b * kBatch);
    for (std::uint64_t i = 0; i < count; ++i) {
      for (auto& a : angles) a = rng.angle();
      ev.set_point_fast(angles);
      out.push_back(std::abs(ev.value()));
    }
  }
  return out;
}

struct MomentStats {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

long double power(long double x, double s) {
  if (s == 1.0) return x;
  if (s == 2.0) return x * x;
  if (s == 4.0) return (x * x) * (x * x);
  return std::pow(x, static_cast<long double>(s));
}

long double root(long double x, double s) {
  if (s == 1.0) return x;
  if (s == 2.0) return std::sqrt(x);
  if (s == 4.0) return std::sqrt(std::sqrt(x));
  return std::pow(x, 1.0L / s);
}

// Jackknife for theta = g(mean x, mean y) with g = mean_s^{1/s} / mean_r^{1/r}
// (pass r = 0 to estimate mean_s^{1/s} alone).
MomentStats jackknife_ratio(const std::vector<double>& v, double s, double r, bool with_stderr = true) {
  const auto n = static_cast<long double>(v.size());
  std::vector<long double> ps(v.size());
  std::vector<long double> pr(r > 0.0 ? v.size() : 0);
  long double ss = 0.0L;
  long double sr = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ps[i] = power(v[i], s);
    ss += ps[i];
    if (r > 0.0) {
      pr[i] = power(v[i], r);
      sr += pr[i];
    }
  }
  auto theta = [&](long double ms, long double mr) {
    const long double num = root(std::max(ms, 0.0L), s);
    if (r <= 0.0) return num;
    const long double den = root(std::max(mr, 0.0L), r);
    return den > 0.0L ? num / den : 0.0L;
  };
  MomentStats out;
  out.estimate = static_cast<double>(theta(ss / n, sr / n));
  if (r > 0.0 && r == s) {
    out.estimate = 1.0;
    return out;
  }
  if (!with_stderr) return out;
  std::vector<long double> loo(v.size());
  long double mean = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    loo[i] = theta((ss - ps[i]) / (n - 1), r > 0.0 ? (sr - pr[i]) / (n - 1) : 0.0L);
    mean += loo[i];
  }
  mean /= n;
  long double var = 0.0L;
  for (auto t : loo) var += (t - mean) * (t - mean);
  out.stderr_ = static_cast<double>(std::sqrt(var * (n - 1) / n));
  return out;
}

std::uint32_t homogeneous_degree(const TrigPolynomial& poly) {
  if (poly.homogeneity()) return *poly.homogeneity();
  std::optional<std::uint64_t> m;
  for (const auto& [alpha, c] : poly.terms()) {
    if (m && *m != alpha.degree()) throw PreconditionViolation("polynomial is not homogeneous");
    m = alpha.degree();
  }
  return static_cast<std::uint32_t>(m.value_or(0));
}

std::uint32_t prime_pi(std::uint64_t n) {
  std::uint32_t count = 0;
  for (std::uint64_t i = 2; i <= n; ++i) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= i; ++d) {
      if (i % d == 0) {
        prime = false;
        break;
      }
    }
    count += prime;
  }
  return count;
}

}  // namespace

const char* norm_kind_name(NormKind k) noexcept {
  switch (k) {
    case NormKind::L2Exact: return "L2Exact";
    case NormKind::LpMonteCarlo: return "LpMonteCarlo";
    case NormKind::SupEstimate: return "SupEstimate";
  }
  return "?";
}

Complex eval_poly(const TrigPolynomial& poly, const TorusPoint& w) {
  if (w.size() != poly.nvars()) {
    throw DimensionMismatch("point has " + std::to_string(w.size()) + " coordinates, polynomial " +
                            std::to_string(poly.nvars()) + " variables");
  }
  Evaluator ev(poly);
  ev.set_point(w.angles);
  return ev.value();
}

NormReport l2_norm(const TrigPolynomial& poly) {
  NormReport rep;
  rep.kind = NormKind::L2Exact;
  long double s = 0.0L;
  for (const auto& [alpha, c] : poly.terms()) s += std::norm(static_cast<std::complex<long double>>(c));
  rep.value = static_cast<double>(std::sqrt(s));
  return rep;
}

NormReport lp_norm_mc(const TrigPolynomial& poly, double p, std::uint64_t samples, std::uint64_t seed) {
  if (!(p >= 1.0) || std::isinf(p)) throw PreconditionViolation("Monte-Carlo norms need 1 <= p < inf");
  if (samples < 1000) throw PreconditionViolation("Monte-Carlo norms need at least 1000 samples");
  const auto values = sample_abs(poly, samples, seed);
  const auto stats = jackknife_ratio(values, p, 0.0);
  NormReport rep;
  rep.kind = NormKind::LpMonteCarlo;
  rep.value = stats.estimate;
  rep.stderr_ = stats.stderr_;
  rep.p = p;
  rep.samples = samples;
  rep.seed = seed;
  return rep;
}

NormReport sup_norm(const TrigPolynomial& poly, std::uint32_t restarts, std::uint64_t seed,
                    const SupOptions& options) {
  if (restarts < 8) throw PreconditionViolation("sup_norm needs at least 8 restarts");
  Evaluator ev(poly);
  std::vector<std::vector<double>> warm;
  for (const auto& w : options.warm_starts) warm.push_back(w.angles);
  const auto res = sup_search(ev, restarts, seed, options.max_sweeps, warm);
  NormReport rep;
  rep.kind = NormKind::SupEstimate;
  rep.restarts = restarts;
  rep.seed = seed;
  rep.best_point.angles = res.best;
  rep.value = std::abs(eval_poly(poly, rep.best_point));
  return rep;
}

std::vector<Complex> multinomial_family(std::uint32_t m, std::uint32_t n) {
  std::vector<Complex> out;
  for_each_lambda(m, n, [&](const MultiIndex& a) { out.emplace_back(static_cast<double>(multinomial(a)), 0.0); });
  return out;
}

KszResult ksz_search(std::uint32_t m, std::uint32_t n, std::span<const Complex> coefficients, std::uint32_t trials,
                     std::uint64_t seed, std::uint32_t sup_restarts) {
  if (m < 2) throw DegenerateDegree("KSZ bound carries log m and is undefined for m < 2");
  if (n == 0) throw PreconditionViolation("KSZ search needs n >= 1");
  if (trials == 0) throw PreconditionViolation("KSZ search needs at least one trial");
  const auto lambda = enumerate_lambda(m, n);
  if (coefficients.size() != lambda.size()) {
    throw DimensionMismatch("expected " + std::to_string(lambda.size()) + " coefficients over Lambda(m,n)");
  }

  long double sq = 0.0L;
  for (const auto& a : coefficients) sq += std::norm(static_cast<std::complex<long double>>(a));
  KszResult out;
  out.m = m;
  out.n = n;
  out.trials = trials;
  out.seed = seed;
  out.denominator = static_cast<double>(std::sqrt(n * std::log(static_cast<long double>(m)) * sq));
  out.ratio = std::numeric_limits<double>::infinity();

  TrigPolynomial poly(n, m);
  std::vector<int> signs(lambda.size());
  for (std::uint32_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      signs[i] = rng.sign() > 0 ? 1 : -1;
      poly.set(lambda[i], static_cast<double>(signs[i]) * coefficients[i]);
    }
    const auto sup = sup_norm(poly, sup_restarts, derive_seed(seed ^ 0x5bd1e995ULL, t));
    const double ratio = sup.value / out.denominator;
    if (ratio < out.ratio) {
      out.ratio = ratio;
      out.sup = sup.value;
      out.signs = signs;
    }
    out.running_min.push_back(out.ratio);
  }
  return out;
}

std::vector<KhinchineReport> khinchine_ratios(const TrigPolynomial& poly, std::span<const std::pair<double, double>> pairs,
                                              std::uint64_t samples, std::uint64_t seed) {
  const auto m = homogeneous_degree(poly);
  for (const auto& [r, s] : pairs) {
    if (!(r >= 1.0) || !(s >= r) || std::isinf(s)) throw PreconditionViolation("need 1 <= r <= s < inf");
  }
  if (samples < 1000) throw PreconditionViolation("Monte-Carlo norms need at least 1000 samples");
  const auto values = sample_abs(poly, samples, seed);
  std::vector<KhinchineReport> out;
  for (const auto& [r, s] : pairs) {
    KhinchineReport rep;
    rep.m = m;
    rep.r = r;
    rep.s = s;
    rep.samples = samples;
    rep.seed = seed;
    rep.lr = jackknife_ratio(values, r, 0.0, false).estimate;
    rep.ls = jackknife_ratio(values, s, 0.0, false).estimate;
    const auto stats = jackknife_ratio(values, s, r);
    rep.ratio = stats.estimate;
    rep.stderr_ = stats.stderr_;
    rep.bound = std::pow(std::sqrt(s / r), static_cast<double>(m));
    rep.violated = rep.ratio > rep.bound + 3.0 * rep.stderr_;
    out.push_back(rep);
  }
  return out;
}

KhinchineReport khinchine_ratio(const TrigPolynomial& poly, double r, double s, std::uint64_t samples,
                                std::uint64_t seed) {
  const std::pair<double, double> pair{r, s};
  return khinchine_ratios(poly, std::span(&pair, 1), samples, seed).front();
}

BhReport bh_ratio(const TrigPolynomial& poly, std::uint32_t restarts, std::uint64_t seed) {
  BhReport rep;
  rep.m = homogeneous_degree(poly);
  const double m = std::max<double>(rep.m, 1.0);
  const double q = 2.0 * m / (m + 1.0);
  long double s = 0.0L;
  for (const auto& [alpha, c] : poly.terms()) s += std::pow(static_cast<long double>(std::abs(c)), q);
  rep.coefficient_norm = static_cast<double>(std::pow(s, 1.0L / q));
  const auto sup = sup_norm(poly, restarts, seed);
  rep.sup = sup.value;
  rep.witness = sup.best_point;
  rep.ratio = rep.sup > 0.0 ? rep.coefficient_norm / rep.sup : 0.0;
  return rep;
}

Fred1Result fred1_check(const Fred1Input& in) {
  if (in.p < 2) throw PreconditionViolation("p must be an integer > 1");
  if (in.n == 0 || in.r.size() != in.n) throw PreconditionViolation("need exactly n values r_i");
  if (!(in.rho > 0.0)) throw PreconditionViolation("rho must be positive");
  for (double v : in.r) {
    if (!(v >= 0.0)) throw PreconditionViolation("r_i must be nonnegative");
    if (v >= in.rho) throw PreconditionViolation("every r_i must be < rho");
  }
  const auto p = static_cast<long double>(in.p);

  // Second factor: l_{2p/(p+1)} over the last p indices of an l_2 sum over
  // the first m-p indices.
  std::map<std::vector<std::uint32_t>, long double> inner;
  long double lhs = 0.0L;
  for (const auto& [tuple, c] : in.c) {
    if (tuple.size() < in.p) throw PreconditionViolation("coefficient tuples must have length >= p");
    if (!std::is_sorted(tuple.begin(), tuple.end())) throw UnsortedInput("coefficient tuples must be nondecreasing");
    if (tuple.front() < 1 || tuple.back() > in.n) throw PreconditionViolation("tuple entries must lie in [1, n]");
    if (!(c >= 0.0)) throw PreconditionViolation("coefficients must be nonnegative");
    long double prod = c;
    for (auto i : tuple) prod *= in.r[i - 1];
    lhs += prod;
    std::vector<std::uint32_t> tail(tuple.end() - in.p, tuple.end());
    inner[tail] += std::pow(static_cast<long double>(in.rho), 2.0L * (tuple.size() - in.p)) *
                   static_cast<long double>(c) * c;
  }
  long double b = 0.0L;
  for (const auto& [j, v] : inner) b += std::pow(v, p / (p + 1.0L));
  const long double second = std::pow(b, (p + 1.0L) / (2.0L * p));

  // First factor over all of J(p,n).
  std::vector<long double> prefix_prod(in.n + 1, 1.0L);
  for (std::uint32_t l = 1; l <= in.n; ++l) {
    const long double ratio = in.r[l - 1] / static_cast<long double>(in.rho);
    prefix_prod[l] = prefix_prod[l - 1] / (1.0L - ratio * ratio);
  }
  long double a = 0.0L;
  for (const auto& j : enumerate_sorted_tuples(in.p, in.n)) {
    long double term = std::sqrt(prefix_prod[j.values().front()]);
    for (auto idx : j.values()) term *= in.r[idx - 1];
    a += std::pow(term, 2.0L * p / (p - 1.0L));
  }
  const long double first = std::pow(a, (p - 1.0L) / (2.0L * p));

  Fred1Result out;
  out.lhs = static_cast<double>(lhs);
  out.first_factor = static_cast<double>(first);
  out.second_factor = static_cast<double>(second);
  out.rhs = static_cast<double>(first * second);
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

double fred2_mixed_norm(const TrigPolynomial& poly, std::uint32_t p) {
  const auto m = homogeneous_degree(poly);
  if (p < 1 || p > m) throw PreconditionViolation("need 1 <= p <= m");
  std::map<std::vector<std::uint32_t>, long double> inner;
  for (const auto& [alpha, c] : poly.terms()) {
    const auto tuple = index_to_tuple(alpha).values();
    std::vector<std::uint32_t> tail(tuple.end() - p, tuple.end());
    inner[tail] += std::norm(static_cast<std::complex<long double>>(c));
  }
  const long double lp = p;
  long double s = 0.0L;
  for (const auto& [j, v] : inner) s += std::pow(v, lp / (lp + 1.0L));
  return static_cast<double>(std::pow(s, (lp + 1.0L) / (2.0L * lp)));
}

Fred2Report fred2_ratio(const TrigPolynomial& poly, std::uint32_t p, std::uint32_t restarts, std::uint64_t seed,
                        double kappa) {
  Fred2Report rep;
  rep.m = homogeneous_degree(poly);
  rep.p = p;
  rep.kappa = kappa;
  rep.lhs = fred2_mixed_norm(poly, p);
  rep.sup = sup_norm(poly, restarts, seed).value;
  rep.ratio = rep.sup > 0.0 ? rep.lhs / rep.sup : 0.0;
  rep.reference = std::pow(kappa * (1.0 + 1.0 / p), static_cast<double>(rep.m));
  return rep;
}

double sidon_asymptotic_rhs(std::uint32_t n_terms) {
  if (n_terms < 3) return std::numeric_limits<double>::quiet_NaN();
  const double l = std::log(static_cast<double>(n_terms));
  return std::sqrt(static_cast<double>(n_terms)) / std::exp(std::sqrt(l * std::log(l)) / std::numbers::sqrt2);
}

SidonResult sidon_constant(std::uint32_t n_terms, std::uint32_t restarts, std::uint64_t seed,
                           const SidonOptions& options) {
  if (n_terms == 0) throw PreconditionViolation("Sidon constant needs N >= 1");
  if (restarts == 0) throw PreconditionViolation("Sidon search needs at least one restart");
  const std::uint32_t k = prime_pi(n_terms);
  const PrimeTable table(std::max<std::uint32_t>(k, 1), n_terms);

  TrigPolynomial shape(k);
  std::vector<MultiIndex> keys;
  for (std::uint64_t n = 1; n <= n_terms; ++n) keys.push_back(factor_to_index(n, table));
  for (const auto& key : keys) shape.set(key, Complex(1.0, 0.0));
  Evaluator ev(shape);
  // Evaluator stores terms in key order; map each n to its slot.
  std::vector<std::size_t> slot(n_terms);
  {
    std::size_t i = 0;
    std::map<MultiIndex, std::size_t> pos;
    for (const auto& [alpha, c] : shape.terms()) pos[alpha] = i++;
    for (std::uint32_t n = 0; n < n_terms; ++n) slot[n] = pos[keys[n]];
  }

  auto normalize = [&](std::vector<Complex>& a) {
    if (std::abs(a[0]) > 0.0) {
      const Complex phase = std::conj(a[0]) / std::abs(a[0]);
      for (auto& x : a) x *= phase;
      a[0] = Complex(a[0].real(), 0.0);
    }
    double norm = 0.0;
    for (const auto& x : a) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& x : a) x /= norm;
    }
  };
  auto l1 = [](const std::vector<Complex>& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::abs(x);
    return s;
  };
  auto load = [&](const std::vector<Complex>& a) {
    for (std::uint32_t n = 0; n < n_terms; ++n) ev.coefficients()[slot[n]] = a[n];
  };

  SidonResult best;
  best.n_terms = n_terms;
  best.restarts = restarts;
  best.seed = seed;
  best.upper_bound = std::sqrt(static_cast<double>(n_terms));
  best.asymptotic_rhs = sidon_asymptotic_rhs(n_terms);
  best.estimate = -1.0;

  for (std::uint32_t r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, r));
    std::vector<Complex> a(n_terms);
    if (r == 0 && !options.warm_start.empty()) {
      for (std::size_t i = 0; i < std::min<std::size_t>(n_terms, options.warm_start.size()); ++i) {
        a[i] = options.warm_start[i];
      }
    } else {
      for (auto& x : a) x = Complex(rng.normal(), rng.normal());
    }
    if (l1(a) == 0.0) a[0] = 1.0;
    normalize(a);

    std::vector<std::vector<double>> warm;
    if (r == 0 && !options.warm_witness.angles.empty()) {
      auto w = options.warm_witness.angles;
      w.resize(k, 0.0);
      warm.push_back(std::move(w));
    }
    // Witnesses found so far serve as extra starting points for later sup
    // searches; an accepted step is re-checked with the wide search so the
    // climb cannot feed on a missed maximum.
    auto search = [&](const std::vector<Complex>& cand, std::uint32_t restarts_, std::uint64_t sub) {
      load(cand);
      auto res = sup_search(ev, restarts_, derive_seed(seed ^ sub, r), 200, warm);
      const double ratio = res.value > 0.0 ? l1(cand) / res.value : 0.0;
      return std::tuple{ratio, res.value, res.best};
    };
    auto remember = [&](const std::vector<double>& w) {
      if (warm.size() >= 16) warm.erase(warm.begin());
      warm.push_back(w);
    };

    auto [ratio, sup, witness] = search(a, options.verify_restarts, 0x9e3779b9ULL);
    remember(witness);
    double sigma = 0.3;
    std::uint32_t failures = 0;
    for (std::uint32_t it = 1; it <= options.iterations && sigma > 1e-4; ++it) {
      std::vector<Complex> cand = a;
      for (auto& x : cand) x += sigma * Complex(rng.normal(), rng.normal()) / std::sqrt(2.0 * n_terms);
      normalize(cand);
      auto [cr, cs, cw] = search(cand, options.inner_restarts, it);
      if (cr > ratio + 1e-12) {
        remember(cw);
        std::tie(cr, cs, cw) = search(cand, options.verify_restarts, 0x85ebca6bULL + it);
        remember(cw);
      }
      if (cr > ratio + 1e-12) {
        a = std::move(cand);
        ratio = cr;
        sup = cs;
        witness = std::move(cw);
        failures = 0;
      } else if (++failures >= 8) {
        sigma *= 0.5;
        failures = 0;
      }
    }

    if (ratio > best.estimate) {
      best.estimate = ratio;
      best.coefficients = a;
      best.sup = sup;
      best.witness.angles = witness;
    }
  }
  if (n_terms == 1) best.estimate = 1.0;
  return best;
}

std::vector<SidonResult> sidon_sweep(std::uint32_t n_max, std::uint32_t restarts, std::uint64_t seed,
                                     const SidonOptions& options) {
  std::vector<SidonResult> out;
  SidonOptions opts = options;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    out.push_back(sidon_constant(n, restarts, derive_seed(seed, n), opts));
    opts.warm_start = out.back().coefficients;
    opts.warm_witness = out.back().witness;
  }
  return out;
}

BcqReport bcq_weighted_sum(const CoeffSeries& d, const PrimeTable& table, std::uint32_t restarts,
                           std::uint64_t seed) {
  const auto& terms = d.dirichlet_terms();
  std::optional<std::uint32_t> m = d.homogeneity();
  if (!m) {
    for (const auto& [n, c] : terms) {
      const auto om = big_omega(n);
      if (m && *m != om) throw PreconditionViolation("Dirichlet polynomial is not homogeneous");
      m = om;
    }
  }
  if (!m || *m == 0) throw PreconditionViolation("need an m-homogeneous Dirichlet polynomial with m >= 1");

  BcqReport rep;
  rep.m = *m;
  const double e_log = (rep.m - 1.0) / 2.0;
  const double e_pow = (rep.m - 1.0) / (2.0 * rep.m);
  std::uint32_t k = 0;
  for (const auto& [n, c] : terms) {
    const double nn = static_cast<double>(n);
    rep.weighted_sum += std::abs(c) * std::pow(std::log(nn), e_log) / std::pow(nn, e_pow);
    k = std::max(k, factor_to_index(n, table).max_position());
  }
  const auto lift = bohr_lift(d, k, table);
  rep.sup = sup_norm(lift, restarts, seed).value;
  rep.ratio = rep.sup > 0.0 ? rep.weighted_sum / rep.sup : 0.0;
  return rep;
}

H2Result h2_sharp_constant(std::span<const Complex> z, std::uint32_t truncation) {
  long double sum = 1.0L;    // prod_j sum_{e<=N} |z_j|^{2e}
  long double limit = 1.0L;  // prod_j 1 / (1 - |z_j|^2)
  for (const auto& zj : z) {
    const long double x = std::norm(static_cast<std::complex<long double>>(zj));
    if (!(x < 1.0L)) throw PreconditionViolation("every |z_j| must be < 1");
    const long double geom =
        x == 0.0L ? 1.0L : (1.0L - std::pow(x, static_cast<long double>(truncation) + 1.0L)) / (1.0L - x);
    sum *= geom;
    limit /= (1.0L - x);
  }
  H2Result out;
  out.truncation = truncation;
  // sum |f^(alpha) z^alpha| = sum |z^alpha|^2 and ||f||_2 = sqrt of the same.
  out.empirical_ratio = static_cast<double>(std::sqrt(sum));
  out.exact_constant = static_cast<double>(std::sqrt(limit));
  return out;
}

TrigPolynomial random_homogeneous(std::uint32_t m, std::uint32_t n, std::uint64_t seed) {
  Rng rng(seed);
  TrigPolynomial poly(n, m);
  for_each_lambda(m, n, [&](const MultiIndex& a) { poly.set(a, Complex(rng.normal(), rng.normal())); });
  return poly;
}

}  // namespace bohr
