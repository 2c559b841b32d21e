#include "bohr/seqlab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "bohr/errors.hpp"
#include "bohr/kernel.hpp"

namespace bohr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string short_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// log n * exp(log log n / log n), the prescribed partial sums of the
// converse-gap sequence (n >= 2).
long double converse_gap_partial(long double n) {
  const long double l = std::log(n);
  return l * std::exp(std::log(l) / l);
}

long double converse_gap_r_squared(std::uint64_t n) {
  if (n <= 2) return converse_gap_partial(2.0L) / 2.0L;
  return converse_gap_partial(static_cast<long double>(n)) - converse_gap_partial(static_cast<long double>(n - 1));
}

// Maximum of c x^{-a} log(x+1)^b over integers x >= 1 for a > 0, b > 0.
double power_log_sup(double c, double a, double b) {
  auto f = [&](double x) { return c * std::pow(x, -a) * std::pow(std::log1p(x), b); };
  // Stationary point solves a (x+1) log(x+1) = b x; below it f increases.
  auto g = [&](double x) { return a * (x + 1.0) * std::log1p(x) - b * x; };
  double best = f(1.0);
  if (b <= a) return best;
  double lo = 1e-12;
  double hi = 2.0;
  while (g(hi) < 0.0 && hi < 1e300) hi *= 2.0;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  for (double x : {std::floor(lo), std::ceil(hi)}) {
    if (x >= 1.0) best = std::max(best, f(x));
  }
  return best;
}

std::uint32_t counterexample_block(std::uint32_t base, long double j) {
  // Smallest k >= 1 with j <= n_k.
  std::uint32_t k = 1;
  while (j > counterexample25_boundary(base, k)) ++k;
  return k;
}

}  // namespace

const char* family_name(Family f) noexcept {
  switch (f) {
    case Family::PowerLog: return "powerlog";
    case Family::PrimePower: return "primepower";
    case Family::Counterexample25: return "counterexample25";
    case Family::ConverseGap: return "conversegap";
    case Family::EventuallyZero: return "eventuallyzero";
    case Family::Sampled: return "sampled";
  }
  return "?";
}

const char* membership_name(Membership m) noexcept {
  switch (m) {
    case Membership::In: return "IN";
    case Membership::Out: return "OUT";
    case Membership::Undecided: return "UNDECIDED";
  }
  return "?";
}

// ---------------------------------------------------------------- families

SequenceSpec SequenceSpec::power_log(double c, double a, double b) {
  if (!(c >= 0.0) || !(a >= 0.0) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(a)) {
    throw PreconditionViolation("powerlog requires finite c >= 0 and a >= 0");
  }
  SequenceSpec s;
  s.family_ = Family::PowerLog;
  s.c_ = c;
  s.a_ = a;
  s.b_ = b;

  AsymptoticTag t;
  if (c == 0.0) {
    t = AsymptoticTag{0.0, 0.0, {0.0, true}, {0.0, true}, true, true, 1};
  } else if (a == 0.0) {
    // Not a null sequence (or decaying slower than any power): outside every
    // space here; unbounded when b > 0.
    t.b_squared = kInf;
    t.sup_abs = b > 0.0 ? kInf : c * std::pow(std::log(2.0), b);
    t.lp = {kInf, false};
    t.lq_weak = {kInf, false};
    t.l20 = false;
    t.l2log = false;
  } else {
    t.sup_abs = b <= 0.0 ? c * std::pow(std::log(2.0), b) : power_log_sup(c, a, b);
    t.lp = {1.0 / a, b < -a};
    t.lq_weak = {1.0 / a, b <= 0.0};
    t.l20 = a > 0.5 || (a == 0.5 && b < 0.0);
    t.l2log = a > 0.5 || (a == 0.5 && b <= 0.5);
    if (2.0 * a > 1.0) {
      t.b_squared = 0.0;
    } else if (2.0 * a < 1.0) {
      t.b_squared = kInf;
    } else {
      // sum log^{2b}(j)/j ~ (log n)^{2b+1}/(2b+1) when 2b > -1.
      t.b_squared = b > 0.0 ? kInf : (b == 0.0 ? c * c : 0.0);
    }
    t.burn_in = b > a ? static_cast<std::uint64_t>(std::min(1e18, std::exp(b / a) + 3.0)) : 1;
  }
  s.tag_ = t;
  return s;
}

SequenceSpec SequenceSpec::prime_power(double c, double a) {
  if (!(c >= 0.0) || !(a >= 0.0) || !std::isfinite(c) || !std::isfinite(a)) {
    throw PreconditionViolation("primepower requires finite c >= 0 and a >= 0");
  }
  SequenceSpec s;
  s.family_ = Family::PrimePower;
  s.c_ = c;
  s.a_ = a;

  AsymptoticTag t;
  if (c == 0.0) {
    t = AsymptoticTag{0.0, 0.0, {0.0, true}, {0.0, true}, true, true, 1};
  } else if (a == 0.0) {
    t.b_squared = kInf;
    t.sup_abs = c;
    t.lp = {kInf, false};
    t.lq_weak = {kInf, false};
    t.l20 = false;
    t.l2log = false;
  } else {
    // p_n ~ n log n: sum p_n^{-1} diverges, sqrt(n) p_n^{-1/2} -> 0.
    t.sup_abs = c * std::pow(2.0, -a);
    t.lp = {1.0 / a, false};
    t.lq_weak = {1.0 / a, true};
    t.l20 = a >= 0.5;
    t.l2log = a >= 0.5;
    t.b_squared = 2.0 * a >= 1.0 ? 0.0 : kInf;
  }
  s.tag_ = t;
  return s;
}

SequenceSpec SequenceSpec::counterexample25(std::uint32_t base) {
  if (base < 2) throw BadBase("counterexample base must be an integer >= 2");
  SequenceSpec s;
  s.family_ = Family::Counterexample25;
  s.base_ = base;
  AsymptoticTag t;
  // Block sums through n_{k+1} are O(k^2) while log n_k = k^2 (k+1) log a.
  t.b_squared = 0.0;
  t.sup_abs = 1.0 / base;
  t.lp = {2.0, false};
  t.lq_weak = {2.0, false};  // n_k r_{n_k}^2 = k is unbounded
  t.l20 = false;
  t.l2log = true;
  s.tag_ = t;
  return s;
}

SequenceSpec SequenceSpec::converse_gap() {
  SequenceSpec s;
  s.family_ = Family::ConverseGap;
  AsymptoticTag t;
  t.b_squared = 1.0;
  t.sup_abs = std::sqrt(static_cast<double>(converse_gap_r_squared(3)));
  t.lp = {2.0, false};
  t.lq_weak = {2.0, true};  // n r_n^2 -> 1
  t.l20 = false;
  t.l2log = true;
  t.burn_in = 3;
  s.tag_ = t;
  return s;
}

SequenceSpec SequenceSpec::eventually_zero(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionViolation("sequence values must be finite and >= 0");
  }
  SequenceSpec s;
  s.family_ = Family::EventuallyZero;
  AsymptoticTag t{0.0, 0.0, {0.0, true}, {0.0, true}, true, true, 1};
  for (double v : values) t.sup_abs = std::max(t.sup_abs, v);
  s.values_ = std::move(values);
  s.tag_ = t;
  return s;
}

SequenceSpec SequenceSpec::sampled(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionViolation("sequence values must be finite and >= 0");
  }
  SequenceSpec s;
  s.family_ = Family::Sampled;
  s.values_ = std::move(values);
  return s;
}

double SequenceSpec::eval(std::uint64_t n) const {
  if (n == 0) throw PreconditionViolation("sequences are indexed from n = 1");
  switch (family_) {
    case Family::PowerLog:
      return c_ * std::pow(static_cast<double>(n), -a_) * std::pow(std::log1p(static_cast<double>(n)), b_);
    case Family::PrimePower: {
      const auto primes = first_primes(n);
      return c_ * std::pow(static_cast<double>((*primes)[n - 1]), -a_);
    }
    case Family::Counterexample25:
      return std::sqrt(static_cast<double>(counterexample25_r_squared(base_, static_cast<long double>(n))));
    case Family::ConverseGap:
      return std::sqrt(static_cast<double>(converse_gap_r_squared(n)));
    case Family::EventuallyZero:
      return n <= values_.size() ? values_[n - 1] : 0.0;
    case Family::Sampled:
      if (n > values_.size()) throw PreconditionViolation("index beyond the sampled values");
      return values_[n - 1];
  }
  return 0.0;
}

std::vector<double> SequenceSpec::prefix(std::uint64_t count) const {
  if (family_ == Family::Sampled) count = std::min<std::uint64_t>(count, values_.size());
  std::vector<double> out(count);
  if (family_ == Family::PrimePower) {
    const auto primes = first_primes(count);
    for (std::uint64_t i = 0; i < count; ++i) out[i] = c_ * std::pow(static_cast<double>((*primes)[i]), -a_);
    return out;
  }
  for (std::uint64_t i = 0; i < count; ++i) out[i] = eval(i + 1);
  return out;
}

std::uint64_t SequenceSpec::length() const noexcept {
  return family_ == Family::Sampled ? values_.size() : std::numeric_limits<std::uint64_t>::max();
}

std::string SequenceSpec::describe() const {
  std::ostringstream os;
  os << family_name(family_);
  switch (family_) {
    case Family::PowerLog:
      os << "(c=" << short_double(c_) << ",a=" << short_double(a_) << ",b=" << short_double(b_) << ')';
      break;
    case Family::PrimePower:
      os << "(c=" << short_double(c_) << ",a=" << short_double(a_) << ')';
      break;
    case Family::Counterexample25:
      os << "(a=" << base_ << ')';
      break;
    case Family::ConverseGap:
      break;
    case Family::EventuallyZero:
    case Family::Sampled:
      os << "(len=" << values_.size() << ')';
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- b functional

std::vector<double> decreasing_rearrangement(std::span<const double> values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](double v) { return std::fabs(v); });
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double BEstimate::b_value() const {
  return std::sqrt(analytic_limit ? *analytic_limit : running_sup);
}

BEstimate b_functional(const SequenceSpec& z, std::uint64_t horizon) {
  if (horizon < 100) throw HorizonTooSmall("b-functional needs a horizon of at least 100");
  horizon = std::min(horizon, z.length());

  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 2; n <= horizon; n *= 2) ns.push_back(n);
  if (ns.back() != horizon) ns.push_back(horizon);
  if (ns.size() < 10) {
    throw HorizonTooSmall("only " + std::to_string(ns.size()) + " checkpoints fit below n = " +
                          std::to_string(horizon));
  }

  const auto rearranged = decreasing_rearrangement(z.prefix(horizon));
  BEstimate est;
  est.horizon = horizon;

  // Compensated running sum of squares.
  long double sum = 0.0L;
  long double comp = 0.0L;
  std::size_t next = 0;
  for (std::uint64_t j = 1; j <= horizon && next < ns.size(); ++j) {
    const long double term = static_cast<long double>(rearranged[j - 1]) * rearranged[j - 1];
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (j == ns[next]) {
      est.checkpoints.push_back({j, static_cast<double>(sum / std::log(static_cast<long double>(j)))});
      ++next;
    }
  }

  const std::size_t tail = std::min(BEstimate::kTailWindow, est.checkpoints.size());
  est.running_sup = 0.0;
  for (std::size_t i = est.checkpoints.size() - tail; i < est.checkpoints.size(); ++i) {
    est.running_sup = std::max(est.running_sup, est.checkpoints[i].value);
  }
  if (z.tag()) {
    est.analytic_limit = z.tag()->b_squared;
    est.basis = Basis::Analytic;
  }
  return est;
}

// ---------------------------------------------------------------- membership

std::string SequenceSpace::describe() const {
  switch (kind) {
    case SpaceKind::Lp: return "l" + short_double(exponent);
    case SpaceKind::LqWeak: return "l" + short_double(exponent) + ",inf";
    case SpaceKind::L20: return "l2,0";
    case SpaceKind::L2Log: return "l2,log";
  }
  return "?";
}

MembershipReport space_membership(const SequenceSpec& z, const SequenceSpace& space, std::uint64_t horizon) {
  if ((space.kind == SpaceKind::Lp || space.kind == SpaceKind::LqWeak) && !(space.exponent >= 1.0)) {
    throw PreconditionViolation("sequence space exponent must be >= 1");
  }
  horizon = std::min(horizon, z.length());
  if (horizon == 0) throw HorizonTooSmall("no terms available");

  MembershipReport rep;
  rep.space = space;
  rep.horizon = horizon;

  const auto zs = decreasing_rearrangement(z.prefix(horizon));
  switch (space.kind) {
    case SpaceKind::Lp: {
      long double s = 0.0L;
      for (double v : zs) s += std::pow(static_cast<long double>(v), space.exponent);
      rep.witness_value = static_cast<double>(s);
      rep.witness_n = horizon;
      break;
    }
    case SpaceKind::LqWeak: {
      const double inv_q = std::isinf(space.exponent) ? 0.0 : 1.0 / space.exponent;
      for (std::uint64_t n = 1; n <= horizon; ++n) {
        const double v = zs[n - 1] * std::pow(static_cast<double>(n), inv_q);
        if (v > rep.witness_value) {
          rep.witness_value = v;
          rep.witness_n = n;
        }
      }
      break;
    }
    case SpaceKind::L20:
      rep.witness_value = zs.back() * std::sqrt(static_cast<double>(horizon));
      rep.witness_n = horizon;
      break;
    case SpaceKind::L2Log:
      for (std::uint64_t n = 2; n <= horizon; ++n) {
        const double v = zs[n - 1] * std::sqrt(static_cast<double>(n) / std::log(static_cast<double>(n)));
        if (v > rep.witness_value) {
          rep.witness_value = v;
          rep.witness_n = n;
        }
      }
      break;
  }

  if (!z.tag()) {
    rep.verdict = Membership::Undecided;
    rep.basis = Basis::Numeric;
    rep.note = "finite sample: evidence only";
    return rep;
  }

  const auto& t = *z.tag();
  bool in = false;
  switch (space.kind) {
    case SpaceKind::Lp: in = t.lp.contains(space.exponent); break;
    case SpaceKind::LqWeak: in = std::isinf(space.exponent) ? std::isfinite(t.sup_abs) : t.lq_weak.contains(space.exponent); break;
    case SpaceKind::L20: in = t.l20; break;
    case SpaceKind::L2Log: in = t.l2log; break;
  }
  rep.verdict = in ? Membership::In : Membership::Out;
  rep.basis = Basis::Analytic;
  if (z.family() == Family::Counterexample25 && space.kind == SpaceKind::LqWeak && space.exponent == 2.0) {
    rep.note = "n_k * r_{n_k}^2 = k at every block boundary, unbounded in k";
  }
  return rep;
}

// ---------------------------------------------------------------- counterexample

long double counterexample25_boundary(std::uint32_t base, std::uint32_t k) {
  const long double e = static_cast<long double>(k) * k * (k + 1);
  if (base == 2) return std::ldexp(1.0L, static_cast<int>(e));
  return std::pow(static_cast<long double>(base), e);
}

long double counterexample25_r_squared(std::uint32_t base, long double j) {
  if (j < 1.0L) throw PreconditionViolation("counterexample index starts at 1");
  const auto k = counterexample_block(base, j);
  if (k == 1) return 1.0L / counterexample25_boundary(base, 1);
  return static_cast<long double>(k) / counterexample25_boundary(base, k);
}

std::pair<SequenceSpec, Counterexample25Certificate> counterexample25(std::uint32_t base, std::uint32_t k_max) {
  if (base < 2) throw BadBase("counterexample base must be an integer >= 2");
  if (k_max == 0 || k_max > 20) throw PreconditionViolation("k_max must lie in [1, 20]");

  Counterexample25Certificate cert;
  cert.base = base;
  cert.k_max = k_max;
  cert.ratios_decreasing = true;
  long double prev_ratio = std::numeric_limits<long double>::infinity();
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    const long double nk = counterexample25_boundary(base, k);
    cert.boundaries.push_back(nk);
    cert.block_identity.push_back(nk * counterexample25_r_squared(base, nk));
    const long double ratio = (k + 1) / nk;
    if (!(ratio < prev_ratio)) cert.ratios_decreasing = false;
    prev_ratio = ratio;
    cert.series_sum += ratio;
  }
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    cert.chain_bounds.push_back(cert.series_sum + (k + 1) / std::log(cert.boundaries[k - 1]));
  }
  for (std::uint32_t k = k_max; k >= 1; --k) {
    if (cert.chain_bounds[k - 1] >= 1.0L) break;
    cert.first_block_below_one = k;
  }

  if (!cert.ratios_decreasing) throw BadBase("(k+1)/n_k is not strictly decreasing");
  if (cert.series_sum + kCounterexampleMargin >= 1.0L) {
    throw BadBase("sum (k+1)/n_k = " + std::to_string(static_cast<double>(cert.series_sum)) + " is not below 1");
  }
  cert.accepted = true;
  return {SequenceSpec::counterexample25(base), cert};
}

}  // namespace bohr
