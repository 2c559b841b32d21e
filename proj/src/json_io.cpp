#include "bohr/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "bohr/errors.hpp"

namespace bohr::io {

namespace {

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void require_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(where + "." + key, "unknown field");
  }
}

const Json& field(const Json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "." + key, "missing field");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where, "expected a number");
  return j.get<double>();
}

std::uint64_t positive_integer(const Json& j, const std::string& where) {
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > 0) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() > 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw ParseError(where, "expected a positive integer");
}

std::vector<double> number_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  std::vector<std::set<std::string>> keys;
  auto callback = [&](int, Json::parse_event_t event, Json& parsed) {
    switch (event) {
      case Json::parse_event_t::object_start:
        keys.emplace_back();
        break;
      case Json::parse_event_t::object_end:
        keys.pop_back();
        break;
      case Json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!keys.back().insert(key).second) throw ParseError(source, "duplicate key '" + key + "'");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return Json::parse(text.begin(), text.end(), callback);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": " + location(text, e.byte), "malformed JSON");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

std::string canonical_dump(const Json& j) { return j.dump(); }

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError(where, "expected [re, im]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

Json to_json(const MultiIndex& alpha) {
  Json out = Json::array();
  for (const auto& e : alpha.entries()) out.push_back(Json::array({e.position, e.exponent}));
  return out;
}

MultiIndex multi_index_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected [[position, exponent], ...]");
  std::vector<MultiIndex::Entry> entries;
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto at = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw ParseError(at, "expected [position, exponent]");
    const auto pos = positive_integer(j[i][0], at + "[0]");
    if (!j[i][1].is_number_unsigned() && !j[i][1].is_number_integer()) throw ParseError(at + "[1]", "expected an integer");
    const auto e = j[i][1].get<std::int64_t>();
    if (e < 0 || e > UINT32_MAX || pos > UINT32_MAX) throw ParseError(at, "value out of range");
    if (!seen.insert(pos).second) throw ParseError(at, "repeated position " + std::to_string(pos));
    entries.push_back({static_cast<std::uint32_t>(pos), static_cast<std::uint32_t>(e)});
  }
  return MultiIndex(std::move(entries));
}

Json to_json(const CoeffSeries& s) {
  Json out;
  Json terms = Json::array();
  if (s.form() == SeriesForm::Dirichlet) {
    out["form"] = "dirichlet";
    for (const auto& [n, c] : s.dirichlet_terms()) terms.push_back(Json::array({n, to_json(c)}));
  } else {
    out["form"] = "power";
    for (const auto& [alpha, c] : s.power_terms()) terms.push_back(Json::array({to_json(alpha), to_json(c)}));
  }
  out["terms"] = std::move(terms);
  if (s.homogeneity()) out["homogeneity"] = *s.homogeneity();
  return out;
}

CoeffSeries series_from_json(const Json& j, const std::string& where) {
  require_keys(j, where, {"form", "terms", "homogeneity"});
  const auto& form = field(j, where, "form");
  if (!form.is_string() || (form != "dirichlet" && form != "power")) {
    throw ParseError(where + ".form", "expected \"dirichlet\" or \"power\"");
  }
  std::optional<std::uint32_t> m;
  if (j.contains("homogeneity")) {
    const auto& h = j["homogeneity"];
    if (!(h.is_number_unsigned() || (h.is_number_integer() && h.get<std::int64_t>() >= 0)) ||
        h.get<std::uint64_t>() > 64) {
      throw ParseError(where + ".homogeneity", "expected a small nonnegative integer");
    }
    m = h.get<std::uint32_t>();
  }
  const bool dirichlet = form == "dirichlet";
  auto s = dirichlet ? CoeffSeries::dirichlet(m) : CoeffSeries::power(m);
  const auto& terms = field(j, where, "terms");
  if (!terms.is_array()) throw ParseError(where + ".terms", "expected an array");
  std::set<std::uint64_t> seen_n;
  std::set<MultiIndex> seen_alpha;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto at = where + ".terms[" + std::to_string(i) + "]";
    const auto& t = terms[i];
    if (!t.is_array() || t.size() != 2) throw ParseError(at, "expected [key, [re, im]]");
    const auto c = complex_from_json(t[1], at + "[1]");
    try {
      if (dirichlet) {
        const auto n = positive_integer(t[0], at + "[0]");
        if (!seen_n.insert(n).second) throw ParseError(at, "duplicate key n = " + std::to_string(n));
        s.set(n, c);
      } else {
        auto alpha = multi_index_from_json(t[0], at + "[0]");
        if (!seen_alpha.insert(alpha).second) throw ParseError(at, "duplicate key " + alpha.to_string());
        s.set(alpha, c);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(at, e.what());
    }
  }
  return s;
}

CoeffSeries import_series(const std::filesystem::path& path) {
  return series_from_json(read_json_file(path), path.string());
}

void export_series(const CoeffSeries& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path.string(), "cannot write file");
  out << canonical_dump(to_json(s)) << '\n';
}

Json to_json(const SequenceSpec& z) {
  Json out;
  switch (z.family()) {
    case Family::PowerLog:
      out = {{"family", "powerlog"}, {"c", z.c()}, {"a", z.a()}, {"b", z.b()}};
      break;
    case Family::PrimePower:
      out = {{"family", "primepower"}, {"c", z.c()}, {"a", z.a()}};
      break;
    case Family::Counterexample25:
      out = {{"family", "counterexample25"}, {"base", z.base()}};
      break;
    case Family::ConverseGap:
      out = {{"family", "conversegap"}};
      break;
    case Family::EventuallyZero:
      out = {{"family", "eventuallyzero"}, {"values", z.values()}};
      break;
    case Family::Sampled:
      out = {{"family", "sampled"}, {"values", z.values()}};
      break;
  }
  return out;
}

SequenceSpec sequence_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  const auto& fam = field(j, where, "family");
  if (!fam.is_string()) throw ParseError(where + ".family", "expected a string");
  const auto name = fam.get<std::string>();
  try {
    if (name == "powerlog") {
      require_keys(j, where, {"family", "c", "a", "b"});
      const double b = j.contains("b") ? number(j["b"], where + ".b") : 0.0;
      return SequenceSpec::power_log(number(field(j, where, "c"), where + ".c"),
                                     number(field(j, where, "a"), where + ".a"), b);
    }
    if (name == "primepower") {
      require_keys(j, where, {"family", "c", "a"});
      return SequenceSpec::prime_power(number(field(j, where, "c"), where + ".c"),
                                       number(field(j, where, "a"), where + ".a"));
    }
    if (name == "counterexample25") {
      require_keys(j, where, {"family", "base"});
      const auto base = positive_integer(field(j, where, "base"), where + ".base");
      if (base > 1000) throw ParseError(where + ".base", "base out of range");
      return SequenceSpec::counterexample25(static_cast<std::uint32_t>(base));
    }
    if (name == "conversegap") {
      require_keys(j, where, {"family"});
      return SequenceSpec::converse_gap();
    }
    if (name == "eventuallyzero") {
      require_keys(j, where, {"family", "values"});
      return SequenceSpec::eventually_zero(number_list(field(j, where, "values"), where + ".values"));
    }
    if (name == "sampled") {
      require_keys(j, where, {"family", "values"});
      return SequenceSpec::sampled(number_list(field(j, where, "values"), where + ".values"));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where + ".family", "unknown family '" + name + "'");
}

}  // namespace bohr::io
