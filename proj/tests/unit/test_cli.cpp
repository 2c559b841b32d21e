#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "bohr/cli.hpp"
#include "bohr/json_io.hpp"
#include "bohr/ledger.hpp"

using namespace bohr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path dir() {
  const auto d = fs::temp_directory_path() / "bohr_cli_test";
  fs::create_directories(d);
  return d;
}

fs::path file(const std::string& name, const std::string& text) {
  const auto p = dir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

fs::path ledger_path() { return dir() / "ledger.jsonl"; }

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), {"bohr", "--out", ledger_path().string()});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

io::Json last_record() { return Ledger(ledger_path()).read().back().to_json(); }

const std::string kHalf = R"({"family":"primepower","c":1,"a":0.5})";

}  // namespace

TEST_CASE("classify and membership") {
  const auto seq = file("pp.json", kHalf).string();
  auto r = run({"classify", "--seq", seq, "--space", "hinf"});
  CHECK(r.code == kExitPass);
  const auto j = io::parse_json(r.out);
  CHECK(j["command"] == "classify");
  CHECK(j["result"]["verdict"] == "YES");
  CHECK(j["seed"].is_null());
  CHECK(last_record()["result"]["verdict"] == "YES");

  r = run({"classify", "--seq", seq, "--space", "hp:2", "--format", "csv"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("verdict,NO") != std::string::npos);

  r = run({"membership", "--seq", seq, "--space", "l20"});
  CHECK(r.code == kExitPass);
  CHECK(io::parse_json(r.out)["result"]["verdict"] == "IN");

  r = run({"classify", "--seq", seq, "--space", "hq"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.rfind("error: ", 0) == 0);
  r = run({"classify", "--seq", (dir() / "none.json").string(), "--space", "hinf"});
  CHECK(r.code == kExitUsage);
  r = run({"classify", "--space", "hinf"});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("verdict table, bfunc, counterexample and transform") {
  auto r = run({"verdict-table", "--format", "csv"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("sequence,space,verdict,clause,sup_abs,b,reason\n", 0) == 0);
  CHECK(r.out.find("conversegap@primes,hinf,UNDECIDED,2b") != std::string::npos);

  const auto seq = file("pl.json", R"({"family":"powerlog","c":1,"a":0.5,"b":0})").string();
  r = run({"bfunc", "--seq", seq, "--horizon", "4096"});
  CHECK(r.code == kExitPass);
  // Checkpoints sit near 1 + 0.577 / log n, so a bound of 1 must fail.
  r = run({"bfunc", "--seq", seq, "--horizon", "4096", "--below", "1"});
  CHECK(r.code == kExitAssertion);
  CHECK(io::parse_json(r.err)["failures"].size() >= 1);
  CHECK(last_record()["status"] == "fail");

  r = run({"counterexample", "--base", "2"});
  CHECK(r.code == kExitPass);
  CHECK(io::parse_json(r.out)["result"]["accepted"] == true);
  r = run({"counterexample", "--base", "1"});
  CHECK(r.code == kExitUsage);

  const auto ser = file("s.json", R"({"form":"dirichlet","terms":[[6,[2,0]]]})").string();
  r = run({"transform", "--in", ser});
  CHECK(r.code == kExitPass);
  const auto out = io::parse_json(r.out)["result"]["series"];
  CHECK(out["form"] == "power");
  CHECK(io::canonical_dump(out["terms"]) == "[[[[1,1],[2,1]],[2.0,0.0]]]");
}

TEST_CASE("randomized verbs need a seed") {
  auto r = run({"verify", "ksz", "--m", "2", "--n", "2", "--trials", "4"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--seed") != std::string::npos);

  r = run({"--seed", "3", "verify", "ksz", "--m", "2", "--n", "2", "--trials", "4"});
  CHECK(r.code == kExitPass);
  const auto j = io::parse_json(r.out);
  CHECK(j["seed"] == 3);
  CHECK(j["params"]["trials"] == 4);

  const auto again = run({"--seed", "3", "verify", "ksz", "--m", "2", "--n", "2", "--trials", "4"});
  CHECK(io::parse_json(again.out)["result"] == j["result"]);

  r = run({"--seed", "3", "verify", "ksz", "--m", "2", "--n", "2", "--trials", "4", "--max-ratio", "0.01"});
  CHECK(r.code == kExitAssertion);
  r = run({"--seed", "3", "verify", "ksz", "--m", "1", "--n", "2"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("error: ") == 0);
  r = run({"--seed", "3", "sidon", "--N", "2", "--restarts", "1", "--iterations", "5"});
  CHECK(r.code == kExitPass);
  r = run({"sidon", "--N", "2"});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("verify experiments") {
  auto r = run({"verify", "h2", "--z", "0.5,0.3333333333333333", "--truncation", "30"});
  CHECK(r.code == kExitPass);
  const auto j = io::parse_json(r.out)["result"];
  CHECK(j["exact_constant"].get<double>() == doctest::Approx(std::sqrt(1.5)));

  r = run({"verify", "h2", "--z", "0.5", "--trials", "3"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--trials") != std::string::npos);
  r = run({"verify", "h2"});
  CHECK(r.code == kExitUsage);
  r = run({"verify"});
  CHECK(r.code == kExitUsage);

  r = run({"--seed", "1", "verify", "fred1", "--instances", "20"});
  CHECK(r.code == kExitPass);
  r = run({"--seed", "1", "verify", "parseval", "--polys", "5", "--samples", "2000", "--format", "csv"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  r = run({"--seed", "1", "verify", "bh", "--m", "2", "--n", "2", "--polys", "2"});
  CHECK(r.code == kExitPass);
  r = run({"--seed", "1", "verify", "khinchine", "--m", "2", "--n", "2", "--polys", "2", "--samples", "2000"});
  CHECK(r.code == kExitPass);
}

TEST_CASE("suites") {
  fs::remove(ledger_path());
  auto r = run({"suite", "canonical-multipliers"});
  CHECK(r.code == kExitPass);
  const auto j = io::parse_json(r.out);
  CHECK(j["seed"] == 1729);
  CHECK(j["passed"] == true);
  CHECK(Ledger(ledger_path()).read().size() == j["records"].get<std::size_t>());

  const auto empty = file("empty.json", R"({"steps":[]})").string();
  r = run({"suite", "custom", "--spec", empty});
  CHECK(r.code == kExitPass);
  CHECK(io::parse_json(r.out)["records"] == 0);

  const auto failing = file("fail.json",
                            R"({"steps":[{"command":"classify","params":{"sequence":)" + kHalf +
                                R"(,"space":"hinf","expect":"NO"}}]})")
                           .string();
  r = run({"suite", "custom", "--spec", failing});
  CHECK(r.code == kExitAssertion);
  CHECK(r.err.find("0:classify") != std::string::npos);

  const auto bad = file("bad.json", R"({"steps":[{"command":"nope","params":{}}]})").string();
  CHECK(run({"suite", "custom", "--spec", bad}).code != kExitPass);
  CHECK(run({"suite", "custom"}).code == kExitUsage);
  CHECK(run({"suite", "no-such-suite"}).code == kExitUsage);
}

TEST_CASE("help lists every verb and flag") {
  const auto help = cli_help();
  for (const char* word :
       {"classify", "verdict-table", "membership", "bfunc", "counterexample", "transform", "verify", "sidon", "suite",
        "ksz", "khinchine", "bh", "fred1", "fred2", "h2", "parseval", "bcq", "--seed", "--out", "--format", "--seq",
        "--space", "--name", "--horizon", "--below", "--base", "--kmax", "--in", "--primes", "--m", "--n", "--trials",
        "--samples", "--restarts", "--polys", "--p", "--instances", "--z", "--truncation", "--kappa", "--family",
        "--max-ratio", "--N", "--iterations", "--sweep", "--spec", "--suite"}) {
    CAPTURE(word);
    CHECK(help.find(word) != std::string::npos);
  }
  const auto r = run({"--help"});
  CHECK(r.code == kExitPass);
  CHECK(r.out == help);
}

TEST_CASE("ledger location follows BOHR_LEDGER when --out is absent") {
  const auto target = dir() / "env_ledger.jsonl";
  fs::remove(target);
  ::setenv("BOHR_LEDGER", target.string().c_str(), 1);
  const char* argv[] = {"bohr", "counterexample"};
  std::ostringstream out;
  std::ostringstream err;
  CHECK(run_cli(2, argv, out, err) == kExitPass);
  ::unsetenv("BOHR_LEDGER");
  CHECK(Ledger(target).read().size() == 1);
}

TEST_CASE("the installed binary reports exit codes") {
  const char* bin = std::getenv("BOHR_CLI");
  if (bin == nullptr) return;
  const auto status = [&](const std::string& args) {
    const auto cmd = std::string(bin) + " --out " + (dir() / "bin.jsonl").string() + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  CHECK(status("counterexample") == 0);
  CHECK(status("verify ksz --m 2 --n 2") == 2);
  CHECK(status("--seed 1 verify ksz --m 2 --n 2 --trials 2 --max-ratio 0.01") == 1);
  CHECK(status("no-such-verb") == 2);
}
