#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bohr/json_io.hpp"
#include "bohr/ledger.hpp"

namespace bohr {

/// Seed used by the named suites when none is given.
inline constexpr std::uint64_t kPublishedSeed = 1729;

// Experiments are addressed by a command name and a JSON parameter object:
//
//   classify       sequence, space, [name, horizon, expect]
//   verdict-table  [suite = "canonical", horizon]
//   membership     sequence, space (lp:<p> | lqweak:<q> | l20 | l2log), [horizon, expect]
//   bfunc          sequence, [horizon, below]
//   counterexample [base = 2, k_max = 6]
//   transform      series
//   h2             z, [truncation = 30, tolerance]
//   ksz            m, n, [trials = 256, restarts = 8, family = multinomial|random, max_ratio]
//   khinchine      m, n, [polys = 10, samples = 20000, pairs]
//   bh             m, n, [polys = 4, restarts = 16]
//   fred1          [instances = 100, n_max = 3, p = [2,3], rho = [0.7,0.9], m_max = 4]
//   fred2          m, n, p, [polys = 4, restarts = 16, kappa = 1.01]
//   parseval       [polys = 100, m_max = 4, n_max = 4, samples = 20000, min_pass = 97% of polys]
//   bcq            m, [n_max = 30, restarts = 16]
//   sidon          N, [restarts = 32, iterations = 160]
//   sidon-sweep    N_max, [restarts = 8, iterations = 160]
//
// Hard assertions (constant-free inequalities, expected verdicts) land in
// RunRecord::failures; quantities with unknown constants are only reported.

std::vector<std::string> operation_names();
bool is_randomized(const std::string& command);

/// Runs one experiment. Randomized commands require a seed
/// (PreconditionViolation otherwise). Malformed parameters raise ParseError.
RunRecord run_operation(const std::string& command, const io::Json& params, std::optional<std::uint64_t> seed);

struct SuiteStep {
  std::string command;
  io::Json params = io::Json::object();
};

struct SuiteResult {
  std::string name;
  std::vector<RunRecord> records;

  bool passed() const;
  /// "<step>:<command>: <message>" for every failed assertion.
  std::vector<std::string> failures() const;
};

/// canonical-multipliers, inequality-batch, sidon-sweep, counterexamples.
std::vector<std::string> suite_names();
std::vector<SuiteStep> suite_steps(const std::string& name);

/// {"steps":[{"command":..,"params":{..}}, ...]}
std::vector<SuiteStep> custom_steps(const io::Json& doc);

/// Step i runs with seed derive_seed(seed, i) when randomized. An error in a
/// step is recorded as a failure of that step.
SuiteResult run_steps(const std::string& name, const std::vector<SuiteStep>& steps, std::uint64_t seed);
SuiteResult run_suite(const std::string& name, std::uint64_t seed = kPublishedSeed);

}  // namespace bohr
