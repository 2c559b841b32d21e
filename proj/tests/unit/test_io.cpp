#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bohr/errors.hpp"
#include "bohr/json_io.hpp"
#include "bohr/ledger.hpp"
#include "oracles.hpp"

using namespace bohr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "bohr_io_test";
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error_of(const std::string& text) {
  try {
    io::series_from_json(io::parse_json(text, "doc"));
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("three-term Dirichlet file") {
  const auto p = scratch("three.json");
  write(p, R"({"form": "dirichlet", "terms": [[1, [1, 0]], [2, [0, 1]], [6, [-0.5, 0]]]})");
  const auto s = io::import_series(p);
  CHECK(s.form() == SeriesForm::Dirichlet);
  CHECK(s.size() == 3);
  CHECK(s.at(2) == Complex(0.0, 1.0));
  CHECK(s.at(6) == Complex(-0.5, 0.0));
}

TEST_CASE("power-series documents") {
  const auto s = io::series_from_json(
      io::parse_json(R"({"form":"power","homogeneity":2,"terms":[[[[1,1],[2,1]],[2,0]],[[[3,2]],1.5]]})"));
  CHECK(s.form() == SeriesForm::Power);
  CHECK(s.homogeneity() == 2u);
  CHECK(s.size() == 2);
  CHECK(s.at(MultiIndex::unit(3) + MultiIndex::unit(3)) == Complex(1.5));
}

TEST_CASE("malformed documents are rejected with a location") {
  const auto dup = parse_error_of(R"({"form":"dirichlet","terms":[[2,[1,0]],[2,[3,0]]]})");
  CHECK(dup.find("duplicate key n = 2") != std::string::npos);
  CHECK(dup.find("series.terms[1]") != std::string::npos);

  const auto dup_obj = parse_error_of(R"({"form":"dirichlet","form":"power","terms":[]})");
  CHECK(dup_obj.find("duplicate key 'form'") != std::string::npos);

  const auto syntax = parse_error_of("{\"form\": \"dirichlet\",\n  \"terms\": [[1, [1, 0]]\n}");
  CHECK(syntax.find("doc: line 3") != std::string::npos);

  CHECK(parse_error_of(R"({"form":"dirichlet","terms":[],"extra":1})").find("series.extra: unknown field") !=
        std::string::npos);
  CHECK(parse_error_of(R"({"form":"fourier","terms":[]})").find("series.form") != std::string::npos);
  CHECK(parse_error_of(R"({"form":"dirichlet","terms":[[0,[1,0]]]})").find("series.terms[0][0]") !=
        std::string::npos);
  CHECK(parse_error_of(R"({"form":"dirichlet","homogeneity":1,"terms":[[4,[1,0]]]})").find("series.terms[0]") !=
        std::string::npos);
  CHECK(parse_error_of(R"({"form":"power","terms":[[[[1,1],[1,2]],[1,0]]]})").find("series.terms[0]") !=
        std::string::npos);
  CHECK_THROWS_AS(io::read_json_file(scratch("missing.json")), ParseError);
}

TEST_CASE("export then import is byte-identical") {
  oracle::Gen g(31);
  for (int rep = 0; rep < 30; ++rep) {
    auto d = CoeffSeries::dirichlet();
    for (int t = 0; t < 25; ++t) d.set(g.between(1, 1u << 20), g.complex() * std::pow(10.0, g.normal() * 5));
    auto pw = CoeffSeries::power();
    for (int t = 0; t < 25; ++t) pw.set(g.index(20, 4), g.complex());

    for (const auto& s : {d, pw}) {
      const auto a = scratch("a.json");
      const auto b = scratch("b.json");
      io::export_series(s, a);
      const auto back = io::import_series(a);
      CHECK(back == s);
      io::export_series(back, b);
      CHECK(slurp(a) == slurp(b));
    }
  }
}

TEST_CASE("sequence documents round trip") {
  const std::vector<SequenceSpec> specs{
      SequenceSpec::power_log(1.5, 0.5, -0.25), SequenceSpec::prime_power(1.0, 0.5),
      SequenceSpec::counterexample25(3),        SequenceSpec::converse_gap(),
      SequenceSpec::eventually_zero({0.5, 1.0}), SequenceSpec::sampled({0.1, 0.2, 0.3})};
  for (const auto& z : specs) {
    const auto j = io::to_json(z);
    const auto back = io::sequence_from_json(io::parse_json(io::canonical_dump(j)));
    CHECK(back == z);
    CHECK(io::canonical_dump(io::to_json(back)) == io::canonical_dump(j));
  }
  CHECK(io::sequence_from_json(io::parse_json(R"({"family":"powerlog","c":1,"a":0.5})")).b() == 0.0);
  CHECK_THROWS_AS(io::sequence_from_json(io::parse_json(R"({"family":"nope"})")), ParseError);
  CHECK_THROWS_AS(io::sequence_from_json(io::parse_json(R"({"family":"counterexample25","base":1})")), ParseError);
  CHECK_THROWS_AS(io::sequence_from_json(io::parse_json(R"({"family":"sampled","values":[1,-1]})")), ParseError);
}

TEST_CASE("complex numbers and multi-indices") {
  CHECK(io::complex_from_json(io::parse_json("[1.5, -2]"), "c") == Complex(1.5, -2.0));
  CHECK(io::complex_from_json(io::parse_json("3"), "c") == Complex(3.0, 0.0));
  CHECK_THROWS_AS(io::complex_from_json(io::parse_json("[1]"), "c"), ParseError);
  CHECK_THROWS_AS(io::complex_from_json(io::parse_json("\"x\""), "c"), ParseError);
  const auto a = io::multi_index_from_json(io::parse_json("[[3,1],[1,2]]"), "a");
  CHECK(io::canonical_dump(io::to_json(a)) == "[[1,2],[3,1]]");
  CHECK_THROWS_AS(io::multi_index_from_json(io::parse_json("[[1,1],[1,2]]"), "a"), ParseError);
}

TEST_CASE("ledger append and read") {
  const auto p = scratch("ledger.jsonl");
  Ledger ledger(p);
  RunRecord a;
  a.timestamp = "2020-01-01T00:00:00Z";
  a.command = "verify h2";
  a.params = {{"z", {0.5}}};
  a.result = {{"ratio", 1.25}};
  RunRecord b = a;
  b.seed = 7;
  b.failures = {"too large"};
  ledger.append(a);
  ledger.append(b);

  const auto text = slurp(p);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  const auto recs = ledger.read();
  REQUIRE(recs.size() == 2);
  CHECK_FALSE(recs[0].seed.has_value());
  CHECK(recs[0].passed());
  CHECK(recs[1].seed == 7u);
  CHECK_FALSE(recs[1].passed());
  CHECK(recs[1].to_json() == b.to_json());
  CHECK(a.to_json()["status"] == "pass");
  CHECK(b.to_json()["status"] == "fail");
  CHECK(a.to_json()["seed"].is_null());
  CHECK(a.to_json()["version"] == kVersion);
}

TEST_CASE("ledger location and pinned timestamps") {
  ::unsetenv("BOHR_LEDGER");
  CHECK(Ledger::resolve(std::nullopt) == fs::path("bohr_ledger.jsonl"));
  ::setenv("BOHR_LEDGER", "/tmp/x.jsonl", 1);
  CHECK(Ledger::resolve(std::nullopt) == fs::path("/tmp/x.jsonl"));
  CHECK(Ledger::resolve(std::string("out.jsonl")) == fs::path("out.jsonl"));
  ::unsetenv("BOHR_LEDGER");

  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  CHECK(current_timestamp() == "1970-01-01T00:00:00Z");
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  CHECK(current_timestamp() == "2023-11-14T22:13:20Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
  CHECK(current_timestamp().size() == 20);
}
