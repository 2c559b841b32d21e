#include "bohr/multiplier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

std::string short_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError("space", "bad " + what + " '" + text + "'");
  }
  return v;
}

std::uint32_t parse_degree(const std::string& text) {
  const double v = parse_number(text, "degree");
  if (v < 1.0 || v != std::floor(v) || v > 1e6) throw ParseError("space", "degree must be a positive integer");
  return static_cast<std::uint32_t>(v);
}

double parse_exponent(const std::string& text) {
  const double v = parse_number(text, "exponent");
  if (!(v >= 1.0) || std::isinf(v)) throw ParseError("space", "p must lie in [1, inf)");
  return v;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

// ---------------------------------------------------------------- sequences

MultiplicativeSeq::MultiplicativeSeq(SequenceSpec prime_values, std::string name)
    : prime_values_(std::move(prime_values)), name_(std::move(name)) {
  if (name_.empty()) name_ = prime_values_.describe() + "@primes";
}

MultiplicativeSeq MultiplicativeSeq::power(double sigma) {
  return MultiplicativeSeq(SequenceSpec::prime_power(1.0, sigma), "n^-" + short_double(sigma));
}

double MultiplicativeSeq::eval(std::uint64_t n, const PrimeTable& table) const {
  double out = 1.0;
  const auto alpha = factor_to_index(n, table);
  for (const auto& e : alpha.entries()) {
    out *= std::pow(prime_values_.eval(e.position), static_cast<double>(e.exponent));
  }
  return out;
}

// ---------------------------------------------------------------- spaces

HardySpace HardySpace::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty()) throw ParseError("space", "empty space specification");
  const auto& head = parts[0];
  if (head == "hinf" && parts.size() == 1) return hinf();
  if (head == "hp" && parts.size() == 2) return hp(parse_exponent(parts[1]));
  if (head == "hinfm" && parts.size() == 2) return hinfm(parse_degree(parts[1]));
  if (head == "hpm" && parts.size() == 3) return hpm(parse_exponent(parts[1]), parse_degree(parts[2]));
  throw ParseError("space", "expected hinf | hp:<p> | hinfm:<m> | hpm:<p>:<m>, got '" + text + "'");
}

std::string HardySpace::describe() const {
  if (infinite()) return m ? "hinfm:" + std::to_string(*m) : "hinf";
  return m ? "hpm:" + short_double(p) + ":" + std::to_string(*m) : "hp:" + short_double(p);
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

// ---------------------------------------------------------------- classify

MultiplierVerdict classify(const MultiplicativeSeq& b, const HardySpace& space, std::uint64_t horizon) {
  if (!(space.p >= 1.0)) throw PreconditionViolation("Hardy space exponent must be >= 1");
  if (space.m && *space.m == 0) throw PreconditionViolation("homogeneity degree must be >= 1");

  const auto& z = b.prime_values();
  MultiplierVerdict out;
  out.space = space;

  if (z.tag()) {
    out.sup_abs = z.tag()->sup_abs;
  } else {
    for (double v : z.values()) out.sup_abs = std::max(out.sup_abs, std::fabs(v));
  }
  const bool sampled = !z.is_named();
  const bool sup_ok = out.sup_abs < 1.0;

  auto membership_verdict = [&](const SequenceSpace& sp) {
    out.memberships.push_back(space_membership(z, sp, horizon));
    return out.memberships.back().verdict;
  };
  auto from_membership = [](Membership m) {
    return m == Membership::In ? Verdict::Yes : (m == Membership::Out ? Verdict::No : Verdict::Undecided);
  };

  if (space.m) {
    const auto m = *space.m;
    if (!space.infinite()) {
      out.clause = "1a";
      out.verdict = from_membership(membership_verdict(SequenceSpace::lp(2.0)));
      out.reason = std::string("prime values ") + membership_name(out.memberships.back().verdict) + " l2";
    } else {
      out.clause = "1b";
      const double q = m == 1 ? std::numeric_limits<double>::infinity() : 2.0 * m / (m - 1.0);
      out.verdict = from_membership(membership_verdict(SequenceSpace::lq_weak(q)));
      out.reason = std::string("prime values ") + membership_name(out.memberships.back().verdict) + " " +
                   SequenceSpace::lq_weak(q).describe();
    }
    return out;
  }

  if (!space.infinite()) {
    out.clause = "2a";
    const auto l2 = membership_verdict(SequenceSpace::lp(2.0));
    if (!sup_ok) {
      out.verdict = Verdict::No;
      out.reason = "some |b_{p_j}| >= 1";
    } else if (sampled) {
      out.verdict = Verdict::Undecided;
      out.reason = "sampled prime values: l2 membership not decidable";
    } else {
      out.verdict = from_membership(l2);
      out.reason = std::string("all |b_{p_j}| < 1, prime values ") + membership_name(l2) + " l2";
    }
    return out;
  }

  out.clause = "2b";
  if (!sup_ok) {
    out.verdict = Verdict::No;
    out.reason = "some |b_{p_j}| >= 1";
    return out;
  }
  try {
    out.b_estimate = b_functional(z, horizon);
  } catch (const HorizonTooSmall&) {
    // Short samples: no estimate, verdict stays undecided below.
  }
  if (sampled) {
    out.verdict = Verdict::Undecided;
    out.reason = "sampled prime values: b(z) is not finitely computable";
    return out;
  }
  const double b2 = z.tag()->b_squared;
  if (b2 < 1.0) {
    out.verdict = Verdict::Yes;
    out.reason = "all |b_{p_j}| < 1 and b < 1";
  } else if (b2 > 1.0) {
    out.verdict = Verdict::No;
    out.reason = "b > 1";
  } else {
    out.verdict = Verdict::Undecided;
    out.reason = "b = 1: neither condition applies";
  }
  return out;
}

// ---------------------------------------------------------------- tables

std::string VerdictTable::to_csv() const {
  std::ostringstream os;
  os << "sequence,space,verdict,clause,sup_abs,b,reason\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < spaces.size(); ++c) {
      const auto& v = cells[r][c];
      os << csv_escape(rows[r]) << ',' << spaces[c].describe() << ',' << verdict_name(v.verdict) << ','
         << v.clause << ',' << short_double(v.sup_abs) << ',';
      if (v.b_estimate) os << short_double(v.b_estimate->b_value());
      os << ',' << csv_escape(v.reason) << '\n';
    }
  }
  return os.str();
}

VerdictTable verdict_table(const std::vector<MultiplicativeSeq>& seqs, const std::vector<HardySpace>& spaces,
                           std::uint64_t horizon) {
  VerdictTable t;
  t.spaces = spaces;
  for (const auto& s : seqs) {
    t.rows.push_back(s.name());
    auto& row = t.cells.emplace_back();
    for (const auto& sp : spaces) row.push_back(classify(s, sp, horizon));
  }
  return t;
}

std::vector<MultiplicativeSeq> canonical_sequences() {
  return {
      MultiplicativeSeq::power(0.2),
      MultiplicativeSeq::power(0.25),
      MultiplicativeSeq::power(0.4),
      MultiplicativeSeq::power(0.5),
      MultiplicativeSeq::power(0.6),
      MultiplicativeSeq(SequenceSpec::power_log(0.9, 0.5, 0.0), "0.9/sqrt(j)@primes"),
      MultiplicativeSeq(SequenceSpec::power_log(1.2, 0.5, 0.0), "1.2/sqrt(j)@primes"),
      MultiplicativeSeq(SequenceSpec::counterexample25(2), "counterexample25(2)@primes"),
      MultiplicativeSeq(SequenceSpec::converse_gap(), "conversegap@primes"),
      MultiplicativeSeq(SequenceSpec::eventually_zero({0.5, 0.9, 0.3}), "finite(0.5,0.9,0.3)@primes"),
      MultiplicativeSeq(SequenceSpec::eventually_zero({1.0, 0.5}), "finite(1,0.5)@primes"),
  };
}

std::vector<HardySpace> canonical_spaces() { return {HardySpace::hp(2.0), HardySpace::hinf(), HardySpace::hinfm(2)}; }

std::vector<std::vector<Verdict>> canonical_expected() {
  constexpr auto Y = Verdict::Yes;
  constexpr auto N = Verdict::No;
  constexpr auto U = Verdict::Undecided;
  //        H_2  H_inf  H_inf^2
  return {
      {N, N, N},  // n^-0.2: below the homogeneous threshold 1/4
      {N, N, Y},  // n^-0.25: threshold (m-1)/2m attained for m = 2
      {N, N, Y},  // n^-0.4
      {N, Y, Y},  // n^-0.5: infimum 1/2 attained for H_inf, not for H_2
      {Y, Y, Y},  // n^-0.6
      {N, Y, Y},  // 0.9/sqrt(j): b = 0.9
      {N, N, Y},  // 1.2/sqrt(j): |b_{p_1}| > 1
      {N, Y, Y},  // counterexample: b = 0 although not in l_{2,inf}
      {N, U, Y},  // converse gap: b = 1
      {Y, Y, Y},  // finitely supported, all < 1
      {N, N, Y},  // finitely supported with |b_{p_1}| = 1
  };
}

double sanity_partial_sums(const MultiplicativeSeq& b, const CoeffSeries& d, const PrimeTable& table) {
  return multiplier_weighted_l1(d, [&](std::uint64_t n) { return Complex(b.eval(n, table)); });
}

}  // namespace bohr
