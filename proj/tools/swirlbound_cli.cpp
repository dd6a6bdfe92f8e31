#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swirlbound/config.hpp"
#include "swirlbound/errors.hpp"
#include "swirlbound/experiments.hpp"

namespace {

std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& v : out) {
    const auto a = v.find_first_not_of(" \t");
    const auto b = v.find_last_not_of(" \t");
    v = (a == std::string::npos) ? std::string() : v.substr(a, b - a + 1);
  }
  return out;
}

std::string kinds_help() {
  std::string s = "scenario kind (";
  bool first = true;
  for (auto k : swirlbound::all_scenario_kinds()) {
    if (!first) s += ", ";
    s += swirlbound::to_string(k);
    first = false;
  }
  return s + ")";
}

swirlbound::Scenario make_scenario(const std::string& kind,
                                   const std::string& config_path,
                                   const std::string& out_dir) {
  swirlbound::Scenario scenario;
  scenario.kind = swirlbound::scenario_kind_from_string(kind);
  if (!config_path.empty())
    scenario.params = swirlbound::Config::parse_file(config_path);
  scenario.out_dir = out_dir;
  return scenario;
}

int run_one(const std::string& kind, const std::string& config_path,
            const std::string& out_dir) {
  const auto verdict =
      swirlbound::run_scenario(make_scenario(kind, config_path, out_dir));
  std::size_t passed = 0;
  for (const auto& c : verdict.criteria) {
    std::printf("  [%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    if (c.pass) ++passed;
  }
  std::printf("verdict %s: %s (%zu/%zu criteria)\n", verdict.scenario.c_str(),
              verdict.pass() ? "PASS" : "FAIL", passed,
              verdict.criteria.size());
  if (!out_dir.empty())
    std::printf("artifacts: %s (%zu files)\n", out_dir.c_str(),
                verdict.artifacts.size());
  return verdict.pass() ? 0 : 1;
}

int run_sweep_cmd(const std::string& kind, const std::string& config_path,
                  const std::string& out_dir, const std::string& axis,
                  const std::string& values) {
  const auto base = make_scenario(kind, config_path, out_dir);
  const auto report = swirlbound::run_sweep(base, axis, split_values(values));
  std::size_t passed = 0;
  for (const auto& cell : report.cells) {
    std::printf("  [%s] %s=%s%s%s\n", cell.pass ? "PASS" : "FAIL",
                axis.c_str(), cell.value.c_str(),
                cell.detail.empty() ? "" : ": ",
                cell.detail.c_str());
    if (cell.pass) ++passed;
  }
  if (!report.table.empty())
    std::printf("aggregate:\n%s\n", report.table.dump(2).c_str());
  std::printf("sweep %s over %s: %s (%zu/%zu cells)\n", kind.c_str(),
              axis.c_str(), report.pass ? "PASS" : "FAIL", passed,
              report.cells.size());
  if (!out_dir.empty()) {
    swirlbound::ensure_directory(out_dir);
    const std::string path = out_dir + "/sweep.json";
    if (FILE* f = std::fopen(path.c_str(), "wb")) {
      const std::string text = report.to_json().dump(2) + "\n";
      std::fwrite(text.data(), 1, text.size(), f);
      std::fclose(f);
      std::printf("report: %s\n", path.c_str());
    }
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finite-difference experiment runner: drift-diffusion comparison "
      "bounds, moving-frame oracles, swirl modulus chains; emits CSV traces "
      "and JSON verdicts"};
  app.require_subcommand(1);

  std::string kind, config_path, out_dir, axis, values;

  auto* run = app.add_subcommand("run", "execute one scenario");
  run->add_option("kind", kind, kinds_help())->required();
  run->add_option("--config", config_path, "key = value parameter file")
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "artifact directory (created if missing)");

  auto* sweep =
      app.add_subcommand("sweep", "run one scenario across an axis of values");
  sweep->add_option("kind", kind, kinds_help())->required();
  sweep->add_option("--axis", axis, "parameter to vary")->required();
  sweep->add_option("--values", values, "comma-separated axis values")
      ->required();
  sweep->add_option("--config", config_path, "key = value parameter file")
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "artifact directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_one(kind, config_path, out_dir);
    return run_sweep_cmd(kind, config_path, out_dir, axis, values);
  } catch (const swirlbound::ConfigInvalid& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
