#include "bohr/ledger.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "bohr/errors.hpp"

namespace bohr {

io::Json RunRecord::to_json() const {
  io::Json j;
  j["timestamp"] = timestamp;
  j["command"] = command;
  j["params"] = params;
  j["seed"] = seed ? io::Json(*seed) : io::Json(nullptr);
  j["result"] = result;
  j["failures"] = failures;
  j["status"] = passed() ? "pass" : "fail";
  j["version"] = version;
  return j;
}

RunRecord RunRecord::from_json(const io::Json& j) {
  if (!j.is_object()) throw ParseError("record", "expected an object");
  RunRecord r;
  try {
    r.timestamp = j.at("timestamp").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    r.result = j.at("result");
    r.failures = j.at("failures").get<std::vector<std::string>>();
    r.version = j.at("version").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("record", e.what());
  }
  return r;
}

std::string current_timestamp() {
  std::time_t t = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path Ledger::resolve(const std::optional<std::string>& out) {
  if (out && !out->empty()) return *out;
  if (const char* env = std::getenv("BOHR_LEDGER"); env && *env) return env;
  return "bohr_ledger.jsonl";
}

void Ledger::append(const RunRecord& record) const {
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot open ledger " + path_.string());
  out << io::canonical_dump(record.to_json()) << '\n';
}

std::vector<RunRecord> Ledger::read() const {
  std::ifstream in(path_, std::ios::binary);
  std::vector<RunRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    out.push_back(RunRecord::from_json(io::parse_json(line, path_.string() + ":" + std::to_string(number))));
  }
  return out;
}

}  // namespace bohr
