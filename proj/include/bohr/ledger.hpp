#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bohr/json_io.hpp"

namespace bohr {

inline constexpr const char* kVersion = "0.1.0";

/// One experiment: what ran, with which seed, and what came out.
struct RunRecord {
  std::string timestamp;
  std::string command;
  io::Json params = io::Json::object();
  std::optional<std::uint64_t> seed;
  io::Json result = io::Json::object();
  std::vector<std::string> failures;
  std::string version = kVersion;

  bool passed() const noexcept { return failures.empty(); }

  io::Json to_json() const;
  static RunRecord from_json(const io::Json& j);
};

/// UTC time in ISO 8601. SOURCE_DATE_EPOCH, when set, replaces the clock so
/// that replays produce identical ledgers.
std::string current_timestamp();

/// Append-only JSON-lines file; one record per line.
class Ledger {
 public:
  explicit Ledger(std::filesystem::path path) : path_(std::move(path)) {}

  /// --out if given, else $BOHR_LEDGER, else bohr_ledger.jsonl.
  static std::filesystem::path resolve(const std::optional<std::string>& out);

  const std::filesystem::path& path() const noexcept { return path_; }
  void append(const RunRecord& record) const;
  std::vector<RunRecord> read() const;

 private:
  std::filesystem::path path_;
};

}  // namespace bohr
