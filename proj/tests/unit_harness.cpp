#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "swirlbound/config.hpp"
#include "swirlbound/errors.hpp"
#include "swirlbound/experiments.hpp"
#include "swirlbound/field.hpp"
#include "swirlbound/report.hpp"

using namespace swirlbound;

namespace {

std::filesystem::path fresh_dir(const std::string& leaf) {
  const auto dir = std::filesystem::temp_directory_path() / "swb_harness" / leaf;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("key-value parsing") {
  const auto cfg = Config::parse_string(
      "# header comment\n"
      "K = 2.5\n"
      "\n"
      "label = two words\n"
      "cells=512\n"
      "flag = yes\n"
      "vals = 1, 2,3\n");
  CHECK(cfg.has("K"));
  CHECK_FALSE(cfg.has("missing"));
  CHECK(cfg.get_double("K", 0.0) == 2.5);
  CHECK(cfg.get_double("absent", 7.0) == 7.0);
  CHECK(cfg.get_int("cells", 0) == 512);
  CHECK(cfg.get_string("label", "") == "two words");
  CHECK(cfg.get_bool("flag", false));
  const auto vals = cfg.get_list("vals", {});
  REQUIRE(vals.size() == 3);
  CHECK(vals[1] == 2.0);
}

TEST_CASE("malformed configuration lines and values") {
  CHECK_THROWS_AS(Config::parse_string("justakey\n"), ConfigInvalid);
  CHECK_THROWS_AS(Config::parse_string("= 3\n"), ConfigInvalid);
  const auto cfg = Config::parse_string(
      "K = abc\nn = 3.5\nb = perhaps\nl = 1,,2\n");
  CHECK_THROWS_AS(cfg.get_double("K", 0.0), ConfigInvalid);
  try {
    cfg.get_double("K", 0.0);
  } catch (const ConfigInvalid& e) {
    CHECK(e.key == "K");
  }
  CHECK_THROWS_AS(cfg.get_int("n", 0), ConfigInvalid);
  CHECK_THROWS_AS(cfg.get_bool("b", false), ConfigInvalid);
  CHECK_THROWS_AS(cfg.get_list("l", {}), ConfigInvalid);
}

TEST_CASE("boolean spellings") {
  const auto cfg = Config::parse_string(
      "a = true\nb = 1\nc = on\nd = false\ne = 0\nf = off\ng = no\n");
  CHECK(cfg.get_bool("a", false));
  CHECK(cfg.get_bool("b", false));
  CHECK(cfg.get_bool("c", false));
  CHECK_FALSE(cfg.get_bool("d", true));
  CHECK_FALSE(cfg.get_bool("e", true));
  CHECK_FALSE(cfg.get_bool("f", true));
  CHECK_FALSE(cfg.get_bool("g", true));
}

TEST_CASE("unknown keys are named") {
  const auto cfg = Config::parse_string("K = 1\nbogus = 2\n");
  try {
    cfg.restrict_keys({"K", "T"});
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(e.key == "bogus");
  }
}

TEST_CASE("file round trip") {
  const auto dir = fresh_dir("config");
  const std::string path = (dir / "a.cfg").string();
  {
    std::ofstream out(path);
    out << "# comment\nK = 3\n";
  }
  const auto cfg = Config::parse_file(path);
  CHECK(cfg.get_double("K", 0.0) == 3.0);
}

TEST_CASE("verdict bookkeeping") {
  Verdict v;
  v.scenario = "unit";
  v.add("first", true, "fine", {{"x", 1.5}});
  CHECK(v.pass());
  v.add("second", false, "broke at r=2");
  CHECK_FALSE(v.pass());
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].find("second") != std::string::npos);
  {
    StageTimer timer(v, "stage");
  }
  CHECK(v.timings.count("stage") == 1);
  CHECK(v.timings["stage"] >= 0.0);

  const auto j = v.to_json();
  CHECK(j.at("scenario") == "unit");
  CHECK(j.at("pass").get<bool>() == false);
  CHECK(j.at("criteria").size() == 2);
  CHECK(j.at("criteria")[0].at("data").at("x").get<double>() == 1.5);

  const auto dir = fresh_dir("verdict");
  const std::string path = (dir / "verdict.json").string();
  v.write(path);
  const auto parsed = nlohmann::json::parse(read_file(path));
  CHECK(parsed.at("criteria").size() == 2);
}

TEST_CASE("artifact checksums match the file bytes") {
  const auto dir = fresh_dir("artifacts");
  const std::string path = (dir / "data.csv").string();
  {
    std::ofstream out(path, std::ios::binary);
    out << "a,b\n1,2\n";
  }
  Verdict v;
  v.attach("data", path);
  REQUIRE(v.artifacts.size() == 1);
  char expect[32];
  std::snprintf(expect, sizeof expect, "%016llx",
                static_cast<unsigned long long>(fnv1a64_file(path)));
  CHECK(v.artifacts[0].checksum == expect);
  CHECK(v.artifacts[0].path == path);
}

TEST_CASE("column CSV writer: exact text and reproducibility") {
  const auto dir = fresh_dir("csv");
  const std::vector<double> a{0.5, 1.0};
  const std::vector<double> b{0.25, 2.0};
  const std::string p1 = (dir / "t1.csv").string();
  const std::string p2 = (dir / "t2.csv").string();
  write_csv_columns(p1, {"a", "b"}, {&a, &b});
  write_csv_columns(p2, {"a", "b"}, {&a, &b});
  CHECK(read_file(p1) == "a,b\n0.5,0.25\n1,2\n");
  CHECK(fnv1a64_file(p1) == fnv1a64_file(p2));

  const std::vector<double> ragged{1.0};
  CHECK_THROWS_AS(write_csv_columns((dir / "bad.csv").string(), {"a", "b"},
                                    {&a, &ragged}),
                  Error);
  CHECK_THROWS_AS(write_csv_columns((dir / "bad2.csv").string(), {"a"},
                                    {&a, &b}),
                  Error);
}

TEST_CASE("scenario kinds round-trip by name") {
  for (const auto kind : all_scenario_kinds())
    CHECK(scenario_kind_from_string(to_string(kind)) == kind);
  CHECK_THROWS_AS(scenario_kind_from_string("not_a_kind"), ConfigInvalid);
}

TEST_CASE("schema validation runs before any solve") {
  Scenario s;
  s.kind = ScenarioKind::RobinConsistency;
  s.params = Config::parse_string("bogus = 1\n");
  try {
    run_scenario(s);
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(e.key == "bogus");
  }

  Scenario neg;
  neg.kind = ScenarioKind::Lemma1;
  neg.params = Config::parse_string("K = -1\n");
  try {
    run_scenario(neg);
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(e.key == "K");
  }

  Scenario coarse;
  coarse.kind = ScenarioKind::Lemma1;
  coarse.params = Config::parse_string("cells = 8\n");
  CHECK_THROWS_AS(run_scenario(coarse), ConfigInvalid);
}

TEST_CASE("sweep refuses an axis outside the kind's schema") {
  Scenario base;
  base.kind = ScenarioKind::MovingOracle;
  try {
    run_sweep(base, "bogus_axis", {"1", "2"});
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(e.key == "bogus_axis");
  }
}

TEST_CASE("verdict-only scenario writes nothing") {
  Scenario s;
  s.kind = ScenarioKind::RobinConsistency;
  const auto verdict = run_scenario(s);
  CHECK(verdict.pass());
  CHECK(verdict.artifacts.empty());
  CHECK(verdict.scenario == "robin_consistency");
}

TEST_CASE("identical configurations give byte-identical artifacts") {
  const auto run_into = [](const std::string& dir) {
    Scenario s;
    s.kind = ScenarioKind::RobinConsistency;
    s.out_dir = dir;
    return run_scenario(s);
  };
  const auto d1 = fresh_dir("det1");
  const auto d2 = fresh_dir("det2");
  const auto v1 = run_into(d1.string());
  const auto v2 = run_into(d2.string());
  CHECK(v1.pass());
  REQUIRE(v1.artifacts.size() == v2.artifacts.size());
  REQUIRE(!v1.artifacts.empty());
  for (std::size_t i = 0; i < v1.artifacts.size(); ++i) {
    CHECK(v1.artifacts[i].name == v2.artifacts[i].name);
    CHECK(v1.artifacts[i].checksum == v2.artifacts[i].checksum);
    CHECK(fnv1a64_file(v1.artifacts[i].path) ==
          fnv1a64_file(v2.artifacts[i].path));
  }
  // the verdict file itself is parseable and marked passing
  const auto parsed =
      nlohmann::json::parse(read_file((d1 / "verdict.json").string()));
  CHECK(parsed.at("pass").get<bool>());
}
