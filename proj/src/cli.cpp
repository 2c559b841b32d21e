#include "bohr/cli.hpp"

#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bohr/errors.hpp"
#include "bohr/json_io.hpp"
#include "bohr/ledger.hpp"
#include "bohr/suites.hpp"

namespace bohr {

namespace {

using io::Json;

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";

  std::string seq_file;
  std::string name;
  std::string space;
  std::uint64_t horizon = 0;
  std::string table_suite = "canonical";
  double below = 0.0;

  std::uint32_t base = 2;
  std::uint32_t k_max = 6;
  std::string in_file;
  std::uint32_t primes = 64;

  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::uint32_t trials = 0;
  std::uint64_t samples = 0;
  std::uint32_t restarts = 0;
  std::uint32_t polys = 0;
  std::uint32_t p = 0;
  std::uint32_t instances = 0;
  std::vector<double> z;
  std::uint32_t truncation = 30;
  double kappa = 1.01;
  std::string family = "multinomial";
  double max_ratio = 0.0;

  std::uint32_t big_n = 0;
  std::uint32_t iterations = 0;
  bool sweep = false;

  std::string suite;
  std::string spec_file;
};

struct App {
  CLI::App app{"Numerics for Dirichlet series, their Bohr lifts and l1-multipliers", "bohr"};
  Options o;
  CLI::Option* seed = nullptr;
  CLI::App* classify = nullptr;
  CLI::App* table = nullptr;
  CLI::App* membership = nullptr;
  CLI::App* bfunc = nullptr;
  CLI::App* counterexample = nullptr;
  CLI::App* transform = nullptr;
  CLI::App* verify = nullptr;
  CLI::App* sidon = nullptr;
  CLI::App* suite = nullptr;
};

std::unique_ptr<App> build() {
  auto a = std::make_unique<App>();
  auto& app = a->app;
  auto& o = a->o;
  app.require_subcommand(1);
  a->seed = app.add_option("--seed", o.seed, "Seed for randomized verbs (required by them; suites default to 1729)");
  app.add_option("--out", o.out, "Ledger path (default: $BOHR_LEDGER, else bohr_ledger.jsonl)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto sub = [&](const char* name, const char* desc) {
    auto* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  a->classify = sub("classify", "Classify a multiplicative sequence as an l1-multiplier of a Hardy space");
  a->classify->add_option("--seq", o.seq_file, "JSON file with the prime values (a sequence spec)")->required();
  a->classify->add_option("--space", o.space, "hinf | hp:<p> | hinfm:<m> | hpm:<p>:<m>")->required();
  a->classify->add_option("--name", o.name, "Row label");
  a->classify->add_option("--horizon", o.horizon, "Finite horizon for numeric evidence");

  a->table = sub("verdict-table", "Verdict table of the canonical multiplier rows");
  a->table->add_option("--suite", o.table_suite, "Table to build (canonical)");
  a->table->add_option("--horizon", o.horizon, "Finite horizon for numeric evidence");

  a->membership = sub("membership", "Decide membership of a sequence in a sequence space");
  a->membership->add_option("--seq", o.seq_file, "JSON file with a sequence spec")->required();
  a->membership->add_option("--space", o.space, "lp:<p> | lqweak:<q> | l20 | l2log")->required();
  a->membership->add_option("--horizon", o.horizon, "Finite horizon for numeric evidence");

  a->bfunc = sub("bfunc", "Checkpoints of (1/log n) sum z*_j^2 and the b functional");
  a->bfunc->add_option("--seq", o.seq_file, "JSON file with a sequence spec")->required();
  a->bfunc->add_option("--horizon", o.horizon, "Largest checkpoint");
  a->bfunc->add_option("--below", o.below, "Assert every checkpoint is below this value");

  a->counterexample = sub("counterexample", "Block counterexample over n_k = a^{k^2(k+1)} and its certificate");
  a->counterexample->add_option("--base", o.base, "Base a >= 2");
  a->counterexample->add_option("--kmax", o.k_max, "Number of blocks to certify");

  a->transform = sub("transform", "Bohr transform of a series file (Dirichlet <-> power form)");
  a->transform->add_option("--in", o.in_file, "JSON series file")->required();
  a->transform->add_option("--primes", o.primes, "Size of the prime table");

  a->verify = sub("verify", "Inequality experiments on the polytorus");
  a->verify->require_subcommand(1);
  a->verify->add_option("--m", o.m, "Degree of homogeneity");
  a->verify->add_option("--n", o.n, "Number of variables (fred1: largest n)");
  a->verify->add_option("--trials", o.trials, "Random sign patterns (ksz)");
  a->verify->add_option("--samples", o.samples, "Monte-Carlo samples (khinchine, parseval)");
  a->verify->add_option("--restarts", o.restarts, "Restarts of the sup-norm search");
  a->verify->add_option("--polys", o.polys, "Random polynomials per run");
  a->verify->add_option("--p", o.p, "Split index p (fred1, fred2)");
  a->verify->add_option("--instances", o.instances, "Random instances (fred1)");
  a->verify->add_option("--z", o.z, "Point of the unit polydisc, comma separated (h2)")->delimiter(',');
  a->verify->add_option("--truncation", o.truncation, "Multi-degree truncation N (h2)");
  a->verify->add_option("--kappa", o.kappa, "Reference factor kappa > 1 (fred2)");
  a->verify->add_option("--family", o.family, "Coefficients: multinomial | random (ksz)");
  a->verify->add_option("--max-ratio", o.max_ratio, "Assert the best ratio is at most this (ksz)");
  for (const char* name : {"ksz", "khinchine", "bh", "fred1", "fred2", "h2", "parseval", "bcq"}) {
    a->verify->add_subcommand(name, std::string("Run the ") + name + " experiment")->fallthrough();
  }

  a->sidon = sub("sidon", "Lower bound for the Sidon constant S(N)");
  a->sidon->add_option("--N", o.big_n, "Number of Dirichlet terms")->required();
  a->sidon->add_option("--restarts", o.restarts, "Outer restarts");
  a->sidon->add_option("--iterations", o.iterations, "Hill-climbing steps per restart");
  a->sidon->add_flag("--sweep", o.sweep, "Compute S(1) .. S(N), warm-starting each from the previous");

  a->suite = sub("suite", "Run a named experiment suite and append its records");
  a->suite->add_option("name", o.suite,
                       "canonical-multipliers | inequality-batch | sidon-sweep | counterexamples | custom")
      ->required();
  a->suite->add_option("--spec", o.spec_file, "JSON file {\"steps\": [...]} for the custom suite");
  return a;
}

void set_if(Json& j, const char* key, const CLI::App* app, const char* flag, const auto& value) {
  if (app->count(flag) > 0) j[key] = value;
}

// Scalar result fields as key,value lines.
std::string flat_csv(const Json& result) {
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [k, v] : result.items()) {
    if (v.is_primitive()) os << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return os.str();
}

std::string render(const RunRecord& rec, const std::string& format) {
  if (format == "json") return rec.to_json().dump(2) + "\n";
  if (rec.command == "verdict-table") return rec.result.at("csv").get<std::string>();
  if (rec.command == "sidon-sweep") {
    std::ostringstream os;
    os << "N,estimate,sup,upper_bound\n";
    for (const auto& r : rec.result.at("rows")) {
      os << r.at("N").dump() << ',' << r.at("estimate").dump() << ',' << r.at("sup").dump() << ','
         << r.at("upper_bound").dump() << '\n';
    }
    return os.str();
  }
  return flat_csv(rec.result);
}

std::pair<std::string, Json> verify_params(const App& a) {
  const auto& o = a.o;
  const auto* v = a.verify;
  std::string cmd;
  for (const auto* s : v->get_subcommands()) {
    if (s->parsed()) cmd = s->get_name();
  }
  Json j = Json::object();
  if (cmd == "fred1") {
    set_if(j, "instances", v, "--instances", o.instances);
    set_if(j, "n_max", v, "--n", o.n);
    set_if(j, "m_max", v, "--m", o.m);
    if (v->count("--p") > 0) j["p"] = Json::array({o.p});
  } else if (cmd == "h2") {
    if (v->count("--z") == 0) throw ParseError("--z", "h2 needs --z");
    j["z"] = o.z;
    set_if(j, "truncation", v, "--truncation", o.truncation);
  } else if (cmd == "parseval") {
    set_if(j, "polys", v, "--polys", o.polys);
    set_if(j, "samples", v, "--samples", o.samples);
    set_if(j, "m_max", v, "--m", o.m);
    set_if(j, "n_max", v, "--n", o.n);
  } else if (cmd == "bcq") {
    set_if(j, "m", v, "--m", o.m);
    set_if(j, "n_max", v, "--n", o.n);
    set_if(j, "restarts", v, "--restarts", o.restarts);
  } else {
    set_if(j, "m", v, "--m", o.m);
    set_if(j, "n", v, "--n", o.n);
    set_if(j, "restarts", v, "--restarts", o.restarts);
    if (cmd == "ksz") {
      set_if(j, "trials", v, "--trials", o.trials);
      set_if(j, "family", v, "--family", o.family);
      set_if(j, "max_ratio", v, "--max-ratio", o.max_ratio);
    }
    if (cmd == "khinchine") {
      j.erase("restarts");
      set_if(j, "samples", v, "--samples", o.samples);
      set_if(j, "polys", v, "--polys", o.polys);
    }
    if (cmd == "bh" || cmd == "fred2") set_if(j, "polys", v, "--polys", o.polys);
    if (cmd == "fred2") {
      set_if(j, "p", v, "--p", o.p);
      set_if(j, "kappa", v, "--kappa", o.kappa);
    }
  }
  // Flags that the chosen experiment does not read are usage errors.
  for (const auto* opt : v->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto flag = opt->get_name();
    static const std::map<std::string, std::vector<std::string>> used = {
        {"ksz", {"--m", "--n", "--restarts", "--trials", "--family", "--max-ratio"}},
        {"khinchine", {"--m", "--n", "--samples", "--polys"}},
        {"bh", {"--m", "--n", "--restarts", "--polys"}},
        {"fred1", {"--instances", "--n", "--m", "--p"}},
        {"fred2", {"--m", "--n", "--restarts", "--polys", "--p", "--kappa"}},
        {"h2", {"--z", "--truncation"}},
        {"parseval", {"--polys", "--samples", "--m", "--n"}},
        {"bcq", {"--m", "--n", "--restarts"}},
    };
    const auto& ok = used.at(cmd);
    if (std::find(ok.begin(), ok.end(), flag) == ok.end()) throw ParseError(flag, "not used by verify " + cmd);
  }
  return {cmd, j};
}

std::pair<std::string, Json> single_params(const App& a) {
  const auto& o = a.o;
  Json j = Json::object();
  if (a.classify->parsed()) {
    j["sequence"] = io::read_json_file(o.seq_file);
    j["space"] = o.space;
    set_if(j, "name", a.classify, "--name", o.name);
    set_if(j, "horizon", a.classify, "--horizon", o.horizon);
    return {"classify", j};
  }
  if (a.table->parsed()) {
    j["suite"] = o.table_suite;
    set_if(j, "horizon", a.table, "--horizon", o.horizon);
    return {"verdict-table", j};
  }
  if (a.membership->parsed()) {
    j["sequence"] = io::read_json_file(o.seq_file);
    j["space"] = o.space;
    set_if(j, "horizon", a.membership, "--horizon", o.horizon);
    return {"membership", j};
  }
  if (a.bfunc->parsed()) {
    j["sequence"] = io::read_json_file(o.seq_file);
    set_if(j, "horizon", a.bfunc, "--horizon", o.horizon);
    set_if(j, "below", a.bfunc, "--below", o.below);
    return {"bfunc", j};
  }
  if (a.counterexample->parsed()) {
    j["base"] = o.base;
    j["k_max"] = o.k_max;
    return {"counterexample", j};
  }
  if (a.transform->parsed()) {
    j["series"] = io::read_json_file(o.in_file);
    set_if(j, "primes", a.transform, "--primes", o.primes);
    return {"transform", j};
  }
  if (a.verify->parsed()) return verify_params(a);
  if (a.sidon->parsed()) {
    j[o.sweep ? "N_max" : "N"] = o.big_n;
    set_if(j, "restarts", a.sidon, "--restarts", o.restarts);
    set_if(j, "iterations", a.sidon, "--iterations", o.iterations);
    return {o.sweep ? "sidon-sweep" : "sidon", j};
  }
  return {"", j};
}

int run_parsed(App& a, std::ostream& out, std::ostream& err) {
  const auto& o = a.o;
  const std::optional<std::string> out_flag = a.app.count("--out") ? std::optional(o.out) : std::nullopt;
  const Ledger ledger(Ledger::resolve(out_flag));
  const std::optional<std::uint64_t> seed = a.seed->count() ? std::optional(o.seed) : std::nullopt;

  if (a.suite->parsed()) {
    std::vector<SuiteStep> steps;
    if (o.suite == "custom") {
      if (o.spec_file.empty()) throw ParseError("--spec", "the custom suite needs --spec");
      steps = custom_steps(io::read_json_file(o.spec_file));
    } else {
      if (a.suite->count("--spec")) throw ParseError("--spec", "only the custom suite takes --spec");
      steps = suite_steps(o.suite);
    }
    const auto res = run_steps(o.suite, steps, seed.value_or(kPublishedSeed));
    for (const auto& rec : res.records) ledger.append(rec);
    Json summary = {{"suite", o.suite},
                    {"seed", seed.value_or(kPublishedSeed)},
                    {"records", res.records.size()},
                    {"passed", res.passed()},
                    {"failures", res.failures()},
                    {"ledger", ledger.path().string()}};
    out << summary.dump(2) << '\n';
    if (!res.passed()) {
      err << Json{{"failures", res.failures()}}.dump() << '\n';
      return kExitAssertion;
    }
    return kExitPass;
  }

  const auto [command, params] = single_params(a);
  if (is_randomized(command) && !seed) throw PreconditionViolation(command + " is randomized: pass --seed");
  const auto rec = run_operation(command, params, seed);
  ledger.append(rec);
  out << render(rec, o.format);
  if (!rec.passed()) {
    err << Json{{"failures", rec.failures}}.dump() << '\n';
    return kExitAssertion;
  }
  return kExitPass;
}

}  // namespace

std::string cli_help() {
  auto a = build();
  return a->app.help("", CLI::AppFormatMode::All);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto a = build();
  try {
    a->app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << cli_help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << cli_help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    return run_parsed(*a, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace bohr
