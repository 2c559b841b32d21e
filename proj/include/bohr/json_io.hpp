#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bohr/kernel.hpp"
#include "bohr/seqlab.hpp"
#include "bohr/series.hpp"

namespace bohr::io {

using Json = nlohmann::json;

/// Parses a JSON document. Syntax errors and duplicate object keys raise
/// ParseError naming `source` and the line/column or key.
Json parse_json(std::string_view text, const std::string& source = "<input>");
Json read_json_file(const std::filesystem::path& path);

/// Compact dump with sorted keys; equal documents give equal bytes.
std::string canonical_dump(const Json& j);

Json to_json(Complex c);
Complex complex_from_json(const Json& j, const std::string& where);

/// [[position, exponent], ...]
Json to_json(const MultiIndex& alpha);
MultiIndex multi_index_from_json(const Json& j, const std::string& where);

/// {"form":"dirichlet","terms":[[n,[re,im]],...]} or
/// {"form":"power","terms":[[[[pos,exp],...],[re,im]],...]}, with an
/// optional "homogeneity". Repeated keys are a ParseError.
Json to_json(const CoeffSeries& s);
CoeffSeries series_from_json(const Json& j, const std::string& where = "series");

CoeffSeries import_series(const std::filesystem::path& path);
void export_series(const CoeffSeries& s, const std::filesystem::path& path);

/// {"family":"powerlog","c":..,"a":..,"b":..}, {"family":"primepower","c":..,"a":..},
/// {"family":"counterexample25","base":..}, {"family":"conversegap"},
/// {"family":"eventuallyzero"|"sampled","values":[...]}.
Json to_json(const SequenceSpec& z);
SequenceSpec sequence_from_json(const Json& j, const std::string& where = "sequence");

}  // namespace bohr::io
