#include "bohr/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "bohr/errors.hpp"
#include "bohr/multiplier.hpp"
#include "bohr/random.hpp"
#include "bohr/seqlab.hpp"
#include "bohr/torus.hpp"

namespace bohr {

namespace {

using io::Json;

// JSON has no infinities; spell them out.
Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

class Params {
 public:
  Params(const Json& j, const std::string& command, std::initializer_list<const char*> allowed)
      : j_(j), where_(command) {
    if (!j.is_object()) throw ParseError(where_, "parameters must be an object");
    for (const auto& [key, value] : j.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
        throw ParseError(where_ + "." + key, "unknown parameter");
      }
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const Json& raw(const char* key) const {
    if (!has(key)) throw ParseError(where_ + "." + key, "missing parameter");
    return j_.at(key);
  }

  double real(const char* key, std::optional<double> def = std::nullopt) const {
    if (!has(key) && def) return *def;
    const auto& v = raw(key);
    if (!v.is_number()) throw ParseError(where_ + "." + key, "expected a number");
    return v.get<double>();
  }

  std::uint64_t integer(const char* key, std::optional<std::uint64_t> def = std::nullopt,
                        std::uint64_t lo = 0, std::uint64_t hi = UINT64_MAX) const {
    if (!has(key) && def) return *def;
    const auto& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ParseError(where_ + "." + key, "expected a nonnegative integer");
    }
    const auto x = v.get<std::uint64_t>();
    if (x < lo || x > hi) {
      throw ParseError(where_ + "." + key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return x;
  }

  std::uint32_t small(const char* key, std::optional<std::uint64_t> def, std::uint64_t lo, std::uint64_t hi) const {
    return static_cast<std::uint32_t>(integer(key, def, lo, hi));
  }

  std::string text(const char* key, std::optional<std::string> def = std::nullopt) const {
    if (!has(key) && def) return *def;
    const auto& v = raw(key);
    if (!v.is_string()) throw ParseError(where_ + "." + key, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> reals(const char* key, std::vector<double> def) const {
    if (!has(key)) return def;
    const auto& v = raw(key);
    if (!v.is_array()) throw ParseError(where_ + "." + key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ParseError(where_ + "." + key, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    if (out.empty()) throw ParseError(where_ + "." + key, "must not be empty");
    return out;
  }

  SequenceSpec sequence(const char* key = "sequence") const {
    return io::sequence_from_json(raw(key), where_ + "." + key);
  }

  const std::string& where() const noexcept { return where_; }

 private:
  const Json& j_;
  std::string where_;
};

SequenceSpace parse_sequence_space(const std::string& text, const std::string& where) {
  auto tail_number = [&](std::size_t skip) {
    const auto s = text.substr(skip);
    if (s == "inf") return std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size() && v >= 1.0) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(where, "bad exponent in '" + text + "'");
  };
  if (text == "l20") return SequenceSpace::l20();
  if (text == "l2log") return SequenceSpace::l2log();
  if (text.rfind("lp:", 0) == 0) return SequenceSpace::lp(tail_number(3));
  if (text.rfind("lqweak:", 0) == 0) return SequenceSpace::lq_weak(tail_number(7));
  throw ParseError(where, "expected lp:<p> | lqweak:<q> | l20 | l2log, got '" + text + "'");
}

const char* basis_name(Basis b) { return b == Basis::Analytic ? "analytic" : "numeric"; }

Json membership_json(const MembershipReport& m) {
  return {{"space", m.space.describe()},   {"verdict", membership_name(m.verdict)},
          {"basis", basis_name(m.basis)},  {"witness_value", num(m.witness_value)},
          {"witness_n", m.witness_n},      {"horizon", m.horizon},
          {"note", m.note}};
}

Json b_estimate_json(const BEstimate& b) {
  Json cps = Json::array();
  for (const auto& c : b.checkpoints) cps.push_back(Json::array({c.n, num(c.value)}));
  Json out = {{"checkpoints", cps},
              {"running_sup", num(b.running_sup)},
              {"basis", basis_name(b.basis)},
              {"horizon", b.horizon},
              {"b", num(b.b_value())}};
  out["analytic_limit"] = b.analytic_limit ? num(*b.analytic_limit) : Json(nullptr);
  return out;
}

Json verdict_json(const MultiplierVerdict& v) {
  Json ms = Json::array();
  for (const auto& m : v.memberships) ms.push_back(membership_json(m));
  Json out = {{"space", v.space.describe()}, {"verdict", verdict_name(v.verdict)}, {"clause", v.clause},
              {"reason", v.reason},          {"sup_abs", num(v.sup_abs)},         {"memberships", ms}};
  out["b"] = v.b_estimate ? num(v.b_estimate->b_value()) : Json(nullptr);
  return out;
}

Json point_json(const TorusPoint& w) { return w.angles; }

Json complex_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(io::to_json(c));
  return out;
}

using Failures = std::vector<std::string>;
using Handler = std::function<Json(const Json&, std::uint64_t, Failures&)>;

// ----------------------------------------------------------------- handlers

Json op_classify(const Json& j, std::uint64_t, Failures& fail) {
  Params p(j, "classify", {"sequence", "space", "name", "horizon", "expect"});
  const MultiplicativeSeq b(p.sequence(), p.text("name", ""));
  const auto space = HardySpace::parse(p.text("space"));
  const auto v = classify(b, space, p.integer("horizon", kDefaultEvidenceHorizon, 100));
  Json out = verdict_json(v);
  out["sequence"] = b.name();
  if (p.has("expect") && p.text("expect") != verdict_name(v.verdict)) {
    fail.push_back(b.name() + " in " + space.describe() + ": expected " + p.text("expect") + ", got " +
                   verdict_name(v.verdict));
  }
  return out;
}

Json op_verdict_table(const Json& j, std::uint64_t, Failures& fail) {
  Params p(j, "verdict-table", {"suite", "horizon"});
  if (p.text("suite", "canonical") != "canonical") throw ParseError("verdict-table.suite", "only 'canonical' is known");
  const auto table = verdict_table(canonical_sequences(), canonical_spaces(), p.integer("horizon", kDefaultEvidenceHorizon, 100));
  const auto expected = canonical_expected();
  Json rows = Json::array();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    Json cells = Json::array();
    for (std::size_t c = 0; c < table.spaces.size(); ++c) {
      const auto& v = table.cells[r][c];
      cells.push_back(verdict_json(v));
      if (v.verdict != expected[r][c]) {
        fail.push_back(table.rows[r] + " in " + table.spaces[c].describe() + ": expected " +
                       verdict_name(expected[r][c]) + ", got " + verdict_name(v.verdict));
      }
    }
    rows.push_back({{"sequence", table.rows[r]}, {"cells", cells}});
  }
  return {{"rows", rows}, {"csv", table.to_csv()}};
}

Json op_membership(const Json& j, std::uint64_t, Failures& fail) {
  Params p(j, "membership", {"sequence", "space", "horizon", "expect"});
  const auto z = p.sequence();
  const auto space = parse_sequence_space(p.text("space"), "membership.space");
  const auto m = space_membership(z, space, p.integer("horizon", kDefaultEvidenceHorizon, 1));
  Json out = membership_json(m);
  out["sequence"] = z.describe();
  if (p.has("expect") && p.text("expect") != membership_name(m.verdict)) {
    fail.push_back(z.describe() + " in " + space.describe() + ": expected " + p.text("expect") + ", got " +
                   membership_name(m.verdict));
  }
  return out;
}

Json op_bfunc(const Json& j, std::uint64_t, Failures& fail) {
  Params p(j, "bfunc", {"sequence", "horizon", "below"});
  const auto z = p.sequence();
  const auto b = b_functional(z, p.integer("horizon", 1000000, 100));
  Json out = b_estimate_json(b);
  out["sequence"] = z.describe();
  if (p.has("below")) {
    const double bound = p.real("below");
    for (const auto& c : b.checkpoints) {
      if (!(c.value < bound)) {
        fail.push_back(z.describe() + ": checkpoint " + std::to_string(c.n) + " = " + std::to_string(c.value) +
                       " is not below " + std::to_string(bound));
      }
    }
  }
  return out;
}

Json op_counterexample(const Json& j, std::uint64_t, Failures& fail) {
  Params p(j, "counterexample", {"base", "k_max"});
  const auto base = p.small("base", 2, 0, 1000);
  const auto k_max = p.small("k_max", 6, 1, 20);
  const auto [spec, cert] = counterexample25(base, k_max);
  Json ids = Json::array();
  for (std::size_t k = 0; k < cert.block_identity.size(); ++k) {
    const auto v = static_cast<double>(cert.block_identity[k]);
    ids.push_back(num(v));
    if (std::fabs(v - static_cast<double>(k + 1)) > 1e-12 * (k + 1)) {
      fail.push_back("block identity at k = " + std::to_string(k + 1) + " gives " + std::to_string(v));
    }
  }
  Json bounds = Json::array();
  for (auto v : cert.chain_bounds) bounds.push_back(num(static_cast<double>(v)));
  Json boundaries = Json::array();
  for (auto v : cert.boundaries) boundaries.push_back(num(static_cast<double>(v)));
  if (!cert.accepted) fail.push_back("certificate rejected");
  return {{"sequence", spec.describe()},
          {"base", base},
          {"k_max", k_max},
          {"boundaries", boundaries},
          {"block_identity", ids},
          {"series_sum", num(static_cast<double>(cert.series_sum))},
          {"chain_bounds", bounds},
          {"ratios_decreasing", cert.ratios_decreasing},
          {"first_block_below_one", cert.first_block_below_one},
          {"accepted", cert.accepted}};
}

Json op_transform(const Json& j, std::uint64_t, Failures&) {
  Params p(j, "transform", {"series", "primes"});
  const auto s = io::series_from_json(p.raw("series"), "transform.series");
  std::size_t primes = p.integer("primes", 64, 1, 1u << 20);
  if (s.form() == SeriesForm::Power) {
    for (const auto& [alpha, c] : s.power_terms()) primes = std::max<std::size_t>(primes, alpha.max_position());
  }
  const PrimeTable table(primes);
  return {{"series", io::to_json(bohr_transform(s, table))}};
}

Json op_h2(const Json& j, std::uint64_t, Failures& fail) {
  Params p(j, "h2", {"z", "truncation", "tolerance"});
  const auto& zj = p.raw("z");
  if (!zj.is_array() || zj.empty()) throw ParseError("h2.z", "expected a nonempty array");
  std::vector<Complex> z;
  for (std::size_t i = 0; i < zj.size(); ++i) z.push_back(io::complex_from_json(zj[i], "h2.z[" + std::to_string(i) + "]"));
  const auto res = h2_sharp_constant(z, p.small("truncation", 30, 0, 1u << 20));
  const double rel = std::fabs(res.empirical_ratio - res.exact_constant) / res.exact_constant;
  if (res.empirical_ratio > res.exact_constant * (1.0 + 1e-12)) fail.push_back("empirical ratio exceeds the constant");
  if (p.has("tolerance") && !(rel <= p.real("tolerance"))) {
    fail.push_back("relative error " + std::to_string(rel) + " above tolerance");
  }
  return {{"truncation", res.truncation},
          {"empirical_ratio", num(res.empirical_ratio)},
          {"exact_constant", num(res.exact_constant)},
          {"relative_error", num(rel)}};
}

Json op_ksz(const Json& j, std::uint64_t seed, Failures& fail) {
  Params p(j, "ksz", {"m", "n", "trials", "restarts", "family", "max_ratio"});
  const auto m = p.small("m", std::nullopt, 0, 6);
  const auto n = p.small("n", std::nullopt, 1, 12);
  const auto family = p.text("family", "multinomial");
  std::vector<Complex> coeffs;
  if (family == "multinomial") {
    coeffs = multinomial_family(m, n);
  } else if (family == "random") {
    Rng rng(derive_seed(seed, 0xc0ffee));
    for (std::size_t i = 0; i < enumerate_lambda(m, n).size(); ++i) coeffs.emplace_back(rng.normal(), rng.normal());
  } else {
    throw ParseError("ksz.family", "expected multinomial or random");
  }
  const auto res = ksz_search(m, n, coeffs, p.small("trials", 256, 1, 1u << 20), seed,
                              p.small("restarts", 8, 8, 4096));
  if (p.has("max_ratio") && !(res.ratio <= p.real("max_ratio"))) {
    fail.push_back("best ratio " + std::to_string(res.ratio) + " above " + std::to_string(p.real("max_ratio")));
  }
  return {{"m", m},
          {"n", n},
          {"family", family},
          {"trials", res.trials},
          {"ratio", num(res.ratio)},
          {"sup", num(res.sup)},
          {"denominator", num(res.denominator)},
          {"signs", res.signs},
          {"running_min", res.running_min}};
}

Json op_khinchine(const Json& j, std::uint64_t seed, Failures& fail) {
  Params p(j, "khinchine", {"m", "n", "polys", "samples", "pairs"});
  const auto m = p.small("m", std::nullopt, 1, 6);
  const auto n = p.small("n", std::nullopt, 1, 12);
  const auto polys = p.small("polys", 10, 1, 100000);
  const auto samples = p.integer("samples", 20000, 1000, 100000000);
  std::vector<std::pair<double, double>> pairs{{1, 2}, {2, 4}, {1, 4}};
  if (p.has("pairs")) {
    pairs.clear();
    const auto& pj = p.raw("pairs");
    if (!pj.is_array() || pj.empty()) throw ParseError("khinchine.pairs", "expected [[r, s], ...]");
    for (const auto& pr : pj) {
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number() || !pr[1].is_number()) {
        throw ParseError("khinchine.pairs", "expected [[r, s], ...]");
      }
      pairs.emplace_back(pr[0].get<double>(), pr[1].get<double>());
    }
  }
  std::vector<double> worst(pairs.size(), 0.0);
  std::uint32_t violations = 0;
  Json detail = Json::array();
  for (std::uint32_t i = 0; i < polys; ++i) {
    const auto poly = random_homogeneous(m, n, derive_seed(seed, 2 * i));
    const auto reps = khinchine_ratios(poly, pairs, samples, derive_seed(seed, 2 * i + 1));
    for (std::size_t k = 0; k < reps.size(); ++k) {
      worst[k] = std::max(worst[k], reps[k].ratio / reps[k].bound);
      if (reps[k].violated) {
        ++violations;
        detail.push_back({{"poly", i}, {"r", reps[k].r}, {"s", reps[k].s}, {"ratio", num(reps[k].ratio)},
                          {"stderr", num(reps[k].stderr_)}, {"bound", num(reps[k].bound)}});
      }
    }
  }
  if (violations > 0) fail.push_back(std::to_string(violations) + " Khinchine-Steinhaus violations");
  Json per_pair = Json::array();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    per_pair.push_back({{"r", pairs[k].first}, {"s", pairs[k].second}, {"max_ratio_over_bound", num(worst[k])}});
  }
  return {{"m", m}, {"n", n}, {"polys", polys}, {"samples", samples},
          {"violations", violations}, {"pairs", per_pair}, {"violating", detail}};
}

Json op_bh(const Json& j, std::uint64_t seed, Failures&) {
  Params p(j, "bh", {"m", "n", "polys", "restarts"});
  const auto m = p.small("m", std::nullopt, 1, 6);
  const auto n = p.small("n", std::nullopt, 1, 12);
  const auto polys = p.small("polys", 4, 1, 10000);
  const auto restarts = p.small("restarts", 16, 8, 4096);
  Json ratios = Json::array();
  double best = 0.0;
  for (std::uint32_t i = 0; i < polys; ++i) {
    const auto rep = bh_ratio(random_homogeneous(m, n, derive_seed(seed, 2 * i)), restarts, derive_seed(seed, 2 * i + 1));
    ratios.push_back(num(rep.ratio));
    best = std::max(best, rep.ratio);
  }
  return {{"m", m}, {"n", n}, {"ratios", ratios}, {"max_ratio", num(best)}};
}

Json op_fred1(const Json& j, std::uint64_t seed, Failures& fail) {
  Params p(j, "fred1", {"instances", "n_max", "p", "rho", "m_max"});
  const auto instances = p.small("instances", 100, 1, 1000000);
  const auto n_max = p.small("n_max", 3, 1, 8);
  const auto m_max = p.small("m_max", 4, 2, 8);
  const auto ps = p.reals("p", {2, 3});
  const auto rhos = p.reals("rho", {0.7, 0.9});
  std::uint32_t held = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::uint32_t t = 0; t < instances; ++t) {
    Rng rng(derive_seed(seed, t));
    Fred1Input in;
    in.n = 1 + static_cast<std::uint32_t>(rng.bits() % n_max);
    in.p = static_cast<std::uint32_t>(ps[rng.bits() % ps.size()]);
    if (in.p < 2 || in.p > m_max) throw ParseError("fred1.p", "every p must be an integer in [2, m_max]");
    in.rho = rhos[rng.bits() % rhos.size()];
    for (std::uint32_t i = 0; i < in.n; ++i) in.r.push_back(in.rho * rng.uniform() * 0.999);
    for (std::uint32_t m = in.p; m <= m_max; ++m) {
      for (const auto& tup : enumerate_sorted_tuples(m, in.n)) {
        if (rng.uniform() < 0.5) in.c[tup.values()] = rng.uniform();
      }
    }
    const auto res = fred1_check(in);
    if (res.holds) {
      ++held;
    } else {
      fail.push_back("instance " + std::to_string(t) + ": lhs " + std::to_string(res.lhs) + " > rhs " +
                     std::to_string(res.rhs));
    }
    if (res.lhs > 0.0) min_slack = std::min(min_slack, res.rhs / res.lhs);
  }
  return {{"instances", instances}, {"held", held}, {"min_rhs_over_lhs", num(min_slack)}};
}

Json op_fred2(const Json& j, std::uint64_t seed, Failures&) {
  Params p(j, "fred2", {"m", "n", "p", "polys", "restarts", "kappa"});
  const auto m = p.small("m", std::nullopt, 1, 6);
  const auto n = p.small("n", std::nullopt, 1, 12);
  const auto pp = p.small("p", std::nullopt, 1, m);
  const auto polys = p.small("polys", 4, 1, 10000);
  const auto restarts = p.small("restarts", 16, 8, 4096);
  const double kappa = p.real("kappa", 1.01);
  Json ratios = Json::array();
  double best = 0.0;
  double reference = 0.0;
  for (std::uint32_t i = 0; i < polys; ++i) {
    const auto rep = fred2_ratio(random_homogeneous(m, n, derive_seed(seed, 2 * i)), pp, restarts,
                                 derive_seed(seed, 2 * i + 1), kappa);
    ratios.push_back(num(rep.ratio));
    best = std::max(best, rep.ratio);
    reference = rep.reference;
  }
  return {{"m", m}, {"n", n}, {"p", pp}, {"ratios", ratios}, {"max_ratio", num(best)}, {"reference", num(reference)}};
}

Json op_parseval(const Json& j, std::uint64_t seed, Failures& fail) {
  Params p(j, "parseval", {"polys", "m_max", "n_max", "samples", "min_pass"});
  const auto polys = p.small("polys", 100, 1, 100000);
  const auto m_max = p.small("m_max", 4, 1, 6);
  const auto n_max = p.small("n_max", 4, 1, 12);
  const auto samples = p.integer("samples", 20000, 1000, 100000000);
  const auto min_pass = p.small("min_pass", polys * 97 / 100, 0, polys);
  std::uint32_t pass = 0;
  double worst = 0.0;
  for (std::uint32_t i = 0; i < polys; ++i) {
    Rng rng(derive_seed(seed, 3 * i));
    const auto m = 1 + static_cast<std::uint32_t>(rng.bits() % m_max);
    const auto n = 1 + static_cast<std::uint32_t>(rng.bits() % n_max);
    const auto poly = random_homogeneous(m, n, derive_seed(seed, 3 * i + 1));
    const auto exact = l2_norm(poly).value;
    const auto mc = lp_norm_mc(poly, 2.0, samples, derive_seed(seed, 3 * i + 2));
    const double z = mc.stderr_ > 0.0 ? std::fabs(mc.value - exact) / mc.stderr_ : 0.0;
    worst = std::max(worst, z);
    pass += std::fabs(mc.value - exact) <= 3.0 * mc.stderr_;
  }
  if (pass < min_pass) {
    fail.push_back(std::to_string(pass) + " of " + std::to_string(polys) + " within 3 stderr, need " +
                   std::to_string(min_pass));
  }
  return {{"polys", polys}, {"samples", samples}, {"within_3_stderr", pass}, {"max_abs_z", num(worst)}};
}

Json op_bcq(const Json& j, std::uint64_t seed, Failures&) {
  Params p(j, "bcq", {"m", "n_max", "restarts"});
  const auto m = p.small("m", std::nullopt, 1, 6);
  const auto n_max = p.integer("n_max", 30, 2, 100000);
  Rng rng(seed);
  auto d = CoeffSeries::dirichlet(m);
  for (std::uint64_t k = 2; k <= n_max; ++k) {
    if (big_omega(k) == m) d.set(k, Complex(rng.normal(), rng.normal()));
  }
  if (d.empty()) throw PreconditionViolation("no n <= n_max with Omega(n) = m");
  const PrimeTable table(std::max<std::size_t>(1, static_cast<std::size_t>(n_max)), n_max);
  const auto rep = bcq_weighted_sum(d, table, p.small("restarts", 16, 8, 4096), derive_seed(seed, 1));
  return {{"m", m}, {"terms", d.size()}, {"weighted_sum", num(rep.weighted_sum)}, {"sup", num(rep.sup)},
          {"ratio", num(rep.ratio)}};
}

Json sidon_json(const SidonResult& r) {
  return {{"N", r.n_terms},
          {"estimate", num(r.estimate)},
          {"sup", num(r.sup)},
          {"upper_bound", num(r.upper_bound)},
          {"asymptotic_rhs", r.n_terms < 3 ? Json(nullptr) : num(r.asymptotic_rhs)},
          {"coefficients", complex_list(r.coefficients)},
          {"witness", point_json(r.witness)}};
}

void sidon_bounds(const SidonResult& r, Failures& fail) {
  if (r.estimate > r.upper_bound * (1.0 + 1e-12)) {
    fail.push_back("S(" + std::to_string(r.n_terms) + ") = " + std::to_string(r.estimate) + " exceeds sqrt(N)");
  }
}

Json op_sidon(const Json& j, std::uint64_t seed, Failures& fail) {
  Params p(j, "sidon", {"N", "restarts", "iterations"});
  SidonOptions opts;
  opts.iterations = p.small("iterations", 160, 0, 100000);
  const auto r = sidon_constant(p.small("N", std::nullopt, 1, 64), p.small("restarts", 32, 1, 4096), seed, opts);
  sidon_bounds(r, fail);
  Json out = sidon_json(r);
  out["restarts"] = r.restarts;
  return out;
}

Json op_sidon_sweep(const Json& j, std::uint64_t seed, Failures& fail) {
  Params p(j, "sidon-sweep", {"N_max", "restarts", "iterations"});
  SidonOptions opts;
  opts.iterations = p.small("iterations", 160, 0, 100000);
  const auto res = sidon_sweep(p.small("N_max", std::nullopt, 1, 32), p.small("restarts", 8, 1, 4096), seed, opts);
  Json rows = Json::array();
  for (std::size_t i = 0; i < res.size(); ++i) {
    rows.push_back(sidon_json(res[i]));
    sidon_bounds(res[i], fail);
    if (i > 0 && res[i].estimate < res[i - 1].estimate - 1e-3) {
      fail.push_back("S(" + std::to_string(i + 1) + ") < S(" + std::to_string(i) + ") beyond 1e-3");
    }
  }
  // S(N) = 1 for N <= 3: the lift is linear in distinct variables.
  if (!res.empty() && res[0].estimate != 1.0) fail.push_back("S(1) != 1");
  for (std::size_t i = 1; i < std::min<std::size_t>(3, res.size()); ++i) {
    if (std::fabs(res[i].estimate - 1.0) > 1e-3) fail.push_back("S(" + std::to_string(i + 1) + ") not within 1e-3 of 1");
  }
  if (res.size() >= 4 && !(res[3].estimate > 1.0 + 1e-3)) fail.push_back("S(4) not above 1 + 1e-3");
  return {{"rows", rows}};
}

const std::map<std::string, std::pair<Handler, bool>>& registry() {
  static const std::map<std::string, std::pair<Handler, bool>> ops = {
      {"classify", {op_classify, false}},       {"verdict-table", {op_verdict_table, false}},
      {"membership", {op_membership, false}},   {"bfunc", {op_bfunc, false}},
      {"counterexample", {op_counterexample, false}}, {"transform", {op_transform, false}},
      {"h2", {op_h2, false}},                   {"ksz", {op_ksz, true}},
      {"khinchine", {op_khinchine, true}},      {"bh", {op_bh, true}},
      {"fred1", {op_fred1, true}},              {"fred2", {op_fred2, true}},
      {"parseval", {op_parseval, true}},        {"bcq", {op_bcq, true}},
      {"sidon", {op_sidon, true}},              {"sidon-sweep", {op_sidon_sweep, true}},
  };
  return ops;
}

Json seq(const SequenceSpec& z) { return io::to_json(z); }

}  // namespace

std::vector<std::string> operation_names() {
  std::vector<std::string> out;
  for (const auto& [name, op] : registry()) out.push_back(name);
  return out;
}

bool is_randomized(const std::string& command) {
  auto it = registry().find(command);
  if (it == registry().end()) throw PreconditionViolation("unknown command '" + command + "'");
  return it->second.second;
}

RunRecord run_operation(const std::string& command, const io::Json& params, std::optional<std::uint64_t> seed) {
  auto it = registry().find(command);
  if (it == registry().end()) throw PreconditionViolation("unknown command '" + command + "'");
  const bool randomized = it->second.second;
  if (randomized && !seed) throw PreconditionViolation(command + " is randomized and needs an explicit seed");
  RunRecord rec;
  rec.command = command;
  rec.params = params;
  rec.seed = randomized ? seed : std::nullopt;
  rec.result = it->second.first(params, seed.value_or(0), rec.failures);
  rec.timestamp = current_timestamp();
  return rec;
}

bool SuiteResult::passed() const {
  return std::all_of(records.begin(), records.end(), [](const RunRecord& r) { return r.passed(); });
}

std::vector<std::string> SuiteResult::failures() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& f : records[i].failures) out.push_back(std::to_string(i) + ":" + records[i].command + ": " + f);
  }
  return out;
}

std::vector<std::string> suite_names() {
  return {"canonical-multipliers", "inequality-batch", "sidon-sweep", "counterexamples"};
}

std::vector<SuiteStep> suite_steps(const std::string& name) {
  const auto power = [](double sigma) { return seq(SequenceSpec::prime_power(1.0, sigma)); };
  const auto ce = seq(SequenceSpec::counterexample25(2));
  if (name == "canonical-multipliers") {
    return {
        {"verdict-table", {{"suite", "canonical"}}},
        {"classify", {{"sequence", power(0.6)}, {"name", "n^-0.6"}, {"space", "hinf"}, {"expect", "YES"}}},
        {"classify", {{"sequence", power(0.5)}, {"name", "n^-0.5"}, {"space", "hinf"}, {"expect", "YES"}}},
        {"classify", {{"sequence", power(0.4)}, {"name", "n^-0.4"}, {"space", "hinf"}, {"expect", "NO"}}},
        {"classify", {{"sequence", power(0.5)}, {"name", "n^-0.5"}, {"space", "hp:2"}, {"expect", "NO"}}},
        {"classify", {{"sequence", power(0.6)}, {"name", "n^-0.6"}, {"space", "hp:2"}, {"expect", "YES"}}},
        {"classify", {{"sequence", ce}, {"name", "counterexample25(2)"}, {"space", "hinf"}, {"expect", "YES"}}},
        {"membership", {{"sequence", ce}, {"space", "lqweak:2"}, {"expect", "OUT"}}},
        {"membership", {{"sequence", power(0.5)}, {"space", "lp:2"}, {"expect", "OUT"}}},
        {"membership", {{"sequence", power(0.5)}, {"space", "l20"}, {"expect", "IN"}}},
    };
  }
  if (name == "inequality-batch") {
    const Json z = Json::array({0.5, 1.0 / 3.0});
    return {
        {"parseval", {{"polys", 100}, {"samples", 20000}, {"min_pass", 97}}},
        {"khinchine", {{"m", 2}, {"n", 3}, {"polys", 10}, {"samples", 20000}}},
        {"khinchine", {{"m", 3}, {"n", 3}, {"polys", 10}, {"samples", 20000}}},
        {"fred1", {{"instances", 200}}},
        {"fred2", {{"m", 3}, {"n", 3}, {"p", 1}, {"polys", 2}}},
        {"fred2", {{"m", 3}, {"n", 3}, {"p", 2}, {"polys", 2}}},
        {"bh", {{"m", 2}, {"n", 3}, {"polys", 2}}},
        {"bh", {{"m", 3}, {"n", 2}, {"polys", 2}}},
        {"h2", {{"z", z}, {"truncation", 30}, {"tolerance", 0.01}}},
        {"ksz", {{"m", 2}, {"n", 3}, {"trials", 32}, {"max_ratio", 10}}},
        {"ksz", {{"m", 3}, {"n", 3}, {"trials", 32}, {"max_ratio", 10}}},
        {"bcq", {{"m", 2}, {"n_max", 40}}},
    };
  }
  if (name == "sidon-sweep") return {{"sidon-sweep", {{"N_max", 8}, {"restarts", 8}}}};
  if (name == "counterexamples") {
    return {
        {"counterexample", {{"base", 2}, {"k_max", 6}}},
        {"bfunc", {{"sequence", ce}, {"horizon", 1000000}, {"below", 1.0}}},
        {"membership", {{"sequence", ce}, {"space", "lqweak:2"}, {"expect", "OUT"}}},
        {"membership", {{"sequence", ce}, {"space", "l2log"}, {"expect", "IN"}}},
        {"classify", {{"sequence", seq(SequenceSpec::converse_gap())}, {"name", "conversegap"}, {"space", "hinf"},
                      {"expect", "UNDECIDED"}}},
        {"bfunc", {{"sequence", seq(SequenceSpec::power_log(1.0, 0.5, 0.0))}, {"horizon", 1000000}}},
        {"bfunc", {{"sequence", seq(SequenceSpec::power_log(1.0, 0.5, 0.5))}, {"horizon", 1000000}}},
    };
  }
  throw PreconditionViolation("unknown suite '" + name + "'");
}

std::vector<SuiteStep> custom_steps(const io::Json& doc) {
  if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array() || doc.size() != 1) {
    throw ParseError("suite", "expected {\"steps\": [...]}");
  }
  std::vector<SuiteStep> out;
  for (std::size_t i = 0; i < doc["steps"].size(); ++i) {
    const auto& s = doc["steps"][i];
    const auto where = "suite.steps[" + std::to_string(i) + "]";
    if (!s.is_object() || !s.contains("command") || !s["command"].is_string()) {
      throw ParseError(where, "expected {\"command\": .., \"params\": {..}}");
    }
    for (const auto& [key, value] : s.items()) {
      if (key != "command" && key != "params") throw ParseError(where + "." + key, "unknown field");
    }
    SuiteStep step{s["command"].get<std::string>(), s.value("params", Json::object())};
    if (!registry().count(step.command)) throw ParseError(where + ".command", "unknown command '" + step.command + "'");
    out.push_back(std::move(step));
  }
  return out;
}

SuiteResult run_steps(const std::string& name, const std::vector<SuiteStep>& steps, std::uint64_t seed) {
  SuiteResult out;
  out.name = name;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    const auto step_seed = derive_seed(seed, i);
    try {
      out.records.push_back(run_operation(step.command, step.params, step_seed));
    } catch (const Error& e) {
      RunRecord rec;
      rec.command = step.command;
      rec.params = step.params;
      if (registry().count(step.command) && is_randomized(step.command)) rec.seed = step_seed;
      rec.failures.push_back(std::string("error: ") + e.what());
      rec.timestamp = current_timestamp();
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) { return run_steps(name, suite_steps(name), seed); }

}  // namespace bohr
