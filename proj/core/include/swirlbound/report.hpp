#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace swirlbound {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;       // one human-readable line
  nlohmann::json data;      // numbers backing the call

  nlohmann::json to_json() const;
};

struct ArtifactRecord {
  std::string name;
  std::string path;
  std::string checksum;  // FNV-1a of the file bytes, hex

  nlohmann::json to_json() const;
};

// One experiment's outcome: per-criterion results, witnesses for anything
// that failed, wall-clock timings per stage, artifact inventory.
struct Verdict {
  std::string scenario;
  std::vector<CriterionResult> criteria;
  std::vector<std::string> witnesses;
  std::map<std::string, double> timings;  // seconds
  std::vector<ArtifactRecord> artifacts;

  bool pass() const;
  void add(const std::string& name, bool pass, const std::string& detail,
           nlohmann::json data = nlohmann::json::object());
  // records the file and its checksum; call after the file is written
  void attach(const std::string& name, const std::string& path);

  nlohmann::json to_json() const;
  void write(const std::string& path) const;
};

// Wall-clock stage timer feeding Verdict::timings.
class StageTimer {
 public:
  StageTimer(Verdict& verdict, std::string stage);
  ~StageTimer();
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  Verdict& verdict_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

// Column-oriented CSV writer; every cell rendered %.17g so reruns are
// byte-identical.
void write_csv_columns(const std::string& path,
                       const std::vector<std::string>& headers,
                       const std::vector<const std::vector<double>*>& columns);

// Creates the directory (and parents); throws Error on failure.
void ensure_directory(const std::string& path);

}  // namespace swirlbound
