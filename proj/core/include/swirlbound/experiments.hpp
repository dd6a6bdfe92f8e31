#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swirlbound/config.hpp"
#include "swirlbound/report.hpp"

namespace swirlbound {

enum class ScenarioKind {
  Lemma1,
  Lemma2,
  RobinConsistency,
  MovingOracle,
  ExteriorMeasure,
  LambdaChain,
  GammaChain,
  Proposition,
  Counterexample,
};

// throws ConfigInvalid for unknown names
ScenarioKind scenario_kind_from_string(const std::string& name);
std::string to_string(ScenarioKind kind);
const std::vector<ScenarioKind>& all_scenario_kinds();

struct Scenario {
  std::string name;  // artifact prefix; defaults to the kind string
  ScenarioKind kind = ScenarioKind::Lemma1;
  Config params;
  std::string out_dir;  // empty: verdict only, no files
};

// Validates the parameter block against the kind's schema, runs the
// experiment, writes artifacts and verdict.json under out_dir when set.
// Configuration problems throw ConfigInvalid before any solve starts.
Verdict run_scenario(const Scenario& scenario);

struct SweepCell {
  std::string value;
  bool pass = false;
  std::string detail;  // failure text when the cell threw
  nlohmann::json verdict;
};

struct SweepReport {
  std::string axis;
  std::vector<SweepCell> cells;
  nlohmann::json table;  // kind-specific aggregate (orders, constants)
  bool pass = false;

  nlohmann::json to_json() const;
};

// One scenario per value with `axis` overridden, run concurrently (capped by
// the SWIRLBOUND_WORKERS environment variable); kinds with a convergence or
// monotonicity story across the axis get an aggregate table and extra gate.
SweepReport run_sweep(const Scenario& base, const std::string& axis,
                      const std::vector<std::string>& values);

}  // namespace swirlbound
