#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bohr/errors.hpp"
#include "bohr/kernel.hpp"
#include "bohr/suites.hpp"
#include "bohr/torus.hpp"

namespace py = pybind11;

namespace {

using Exponents = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

bohr::MultiIndex to_index(const Exponents& e) {
  std::vector<bohr::MultiIndex::Entry> entries;
  for (const auto& [pos, exp] : e) entries.push_back({pos, exp});
  return bohr::MultiIndex(std::move(entries));
}

Exponents from_index(const bohr::MultiIndex& a) {
  Exponents out;
  for (const auto& e : a.entries()) out.emplace_back(e.position, e.exponent);
  return out;
}

bohr::TrigPolynomial to_poly(const std::map<Exponents, bohr::Complex>& coeffs, std::uint32_t nvars) {
  bohr::TrigPolynomial poly(nvars);
  for (const auto& [e, c] : coeffs) poly.add(to_index(e), c);
  return poly;
}

std::string run(const std::string& command, const std::string& params, std::optional<std::uint64_t> seed) {
  return bohr::run_operation(command, bohr::io::parse_json(params, "params"), seed).to_json().dump();
}

std::string run_suite(const std::string& name, std::uint64_t seed) {
  const auto res = bohr::run_suite(name, seed);
  auto records = bohr::io::Json::array();
  for (const auto& r : res.records) records.push_back(r.to_json());
  return bohr::io::Json{{"suite", name}, {"passed", res.passed()}, {"failures", res.failures()}, {"records", records}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_bohrkit, m) {
  m.doc() = "Bindings for the bohr numerics library";

  auto base = py::register_exception<bohr::Error>(m, "BohrError");
  py::register_exception<bohr::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<bohr::PreconditionViolation>(m, "PreconditionViolation", base.ptr());
  py::register_exception<bohr::DegenerateDegree>(m, "DegenerateDegree", base.ptr());
  py::register_exception<bohr::BoundExceeded>(m, "BoundExceeded", base.ptr());
  py::register_exception<bohr::Overflow>(m, "Overflow", base.ptr());

  m.def(
      "factor",
      [](std::uint64_t n, std::size_t primes) {
        return from_index(bohr::factor_to_index(n, bohr::PrimeTable(primes)));
      },
      py::arg("n"), py::arg("primes") = 1000, "Exponent vector of n over the first `primes` primes");
  m.def(
      "to_integer",
      [](const Exponents& e, std::size_t primes) { return bohr::index_to_integer(to_index(e), bohr::PrimeTable(primes)); },
      py::arg("alpha"), py::arg("primes") = 1000);
  m.def(
      "enumerate_lambda",
      [](std::uint32_t mdeg, std::uint32_t k) {
        std::vector<Exponents> out;
        bohr::for_each_lambda(mdeg, k, [&](const bohr::MultiIndex& a) { out.push_back(from_index(a)); });
        return out;
      },
      py::arg("m"), py::arg("k"));
  m.def(
      "multinomial", [](const Exponents& e) { return bohr::multinomial(to_index(e)); }, py::arg("alpha"));

  m.def(
      "l2_norm", [](const std::map<Exponents, bohr::Complex>& c, std::uint32_t k) { return bohr::l2_norm(to_poly(c, k)).value; },
      py::arg("coeffs"), py::arg("nvars"));
  m.def(
      "lp_norm_mc",
      [](const std::map<Exponents, bohr::Complex>& c, std::uint32_t k, double p, std::uint64_t samples, std::uint64_t seed) {
        const auto r = bohr::lp_norm_mc(to_poly(c, k), p, samples, seed);
        return std::pair{r.value, r.stderr_};
      },
      py::arg("coeffs"), py::arg("nvars"), py::arg("p"), py::arg("samples"), py::arg("seed"),
      "Returns (estimate, jackknife stderr)");
  m.def(
      "sup_norm",
      [](const std::map<Exponents, bohr::Complex>& c, std::uint32_t k, std::uint32_t restarts, std::uint64_t seed) {
        const auto r = bohr::sup_norm(to_poly(c, k), restarts, seed);
        return std::pair{r.value, r.best_point.angles};
      },
      py::arg("coeffs"), py::arg("nvars"), py::arg("restarts") = 16, py::arg("seed") = 0,
      "Returns (value, witness angles)");
  m.def(
      "h2_sharp_constant",
      [](const std::vector<bohr::Complex>& z, std::uint32_t n) {
        const auto r = bohr::h2_sharp_constant(z, n);
        return std::pair{r.empirical_ratio, r.exact_constant};
      },
      py::arg("z"), py::arg("truncation"));

  m.def("run", &run, py::arg("command"), py::arg("params"), py::arg("seed") = std::nullopt,
        "Runs one experiment; params and the returned record are JSON text");
  m.def("run_suite", &run_suite, py::arg("name"), py::arg("seed") = bohr::kPublishedSeed);
  m.def("operations", &bohr::operation_names);
  m.attr("__version__") = bohr::kVersion;
}
