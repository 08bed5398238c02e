#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "swarmkit/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kTinyScenario = R"({
  "seed": 42,
  "world": {"bounds": [0, 0, 20, 20],
            "body": {"kind": "differential_drive",
                     "noise": {"position": 0.0, "heading_deg": 0.0}}},
  "agents": {
    "count": 4,
    "placement": {"type": "cluster", "center": [10, 10], "radius": 2.0,
                  "headings": "random"},
    "behavior": {"kind": "consensus", "cruise_speed": 0.1}
  },
  "network": {"loss": "off"},
  "run": {"max_ticks": 40, "tick_duration": 0.5}
})";

struct TempDir {
  fs::path path;
  TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("swarmkit_test_" + name);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_scenario(const TempDir& dir, const std::string& text) {
  const fs::path file = dir.path / "scenario.json";
  std::ofstream out(file);
  out << text;
  return file;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("run: happy path writes the three outputs") {
  TempDir dir("run_ok");
  swarmkit::cli::RunOptions options;
  options.scenario_path = write_scenario(dir, kTinyScenario);
  options.out_dir = dir.path / "out";
  std::string error;
  CHECK(swarmkit::cli::run_command(options, &error) == swarmkit::cli::kOk);
  CHECK(fs::exists(options.out_dir / "trajectory.csv"));
  CHECK(fs::exists(options.out_dir / "metrics.csv"));
  CHECK(fs::exists(options.out_dir / "summary.json"));

  const json summary = json::parse(slurp(options.out_dir / "summary.json"));
  CHECK(summary["seed"] == 42);
  CHECK(summary["n_agents"] == 4);
  CHECK(summary["ticks"] == 40);
}

TEST_CASE("run: missing seed exits 2 and names the key") {
  TempDir dir("run_noseed");
  swarmkit::cli::RunOptions options;
  options.scenario_path = write_scenario(dir, R"({"agents": {"count": 1,
    "behavior": {"kind": "consensus"}}})");
  options.out_dir = dir.path / "out";
  std::string error;
  CHECK(swarmkit::cli::run_command(options, &error) ==
        swarmkit::cli::kConfigError);
  CHECK(error.find("seed") != std::string::npos);
}

TEST_CASE("run: unreadable scenario path is an I/O failure") {
  swarmkit::cli::RunOptions options;
  options.scenario_path = "/nonexistent/nowhere.json";
  std::string error;
  CHECK(swarmkit::cli::run_command(options, &error) == swarmkit::cli::kIoError);
}

TEST_CASE("run: overrides reach the summary") {
  TempDir dir("run_override");
  swarmkit::cli::RunOptions options;
  options.scenario_path = write_scenario(dir, kTinyScenario);
  options.out_dir = dir.path / "out";
  options.overrides = {"n_agents=7"};
  std::string error;
  REQUIRE(swarmkit::cli::run_command(options, &error) == swarmkit::cli::kOk);
  const json summary = json::parse(slurp(options.out_dir / "summary.json"));
  CHECK(summary["n_agents"] == 7);
}

TEST_CASE("run: env seed overrides the file, flag overrides env") {
  TempDir dir("run_env");
  swarmkit::cli::RunOptions options;
  options.scenario_path = write_scenario(dir, kTinyScenario);
  options.out_dir = dir.path / "out";
  options.env_seed = 1234;
  std::string error;
  REQUIRE(swarmkit::cli::run_command(options, &error) == swarmkit::cli::kOk);
  json summary = json::parse(slurp(options.out_dir / "summary.json"));
  CHECK(summary["seed"] == 1234);

  options.overrides = {"seed=77"};
  REQUIRE(swarmkit::cli::run_command(options, &error) == swarmkit::cli::kOk);
  summary = json::parse(slurp(options.out_dir / "summary.json"));
  CHECK(summary["seed"] == 77);
}

TEST_CASE("run: reruns are byte-identical") {
  TempDir dir("run_repro");
  swarmkit::cli::RunOptions options;
  options.scenario_path = write_scenario(dir, kTinyScenario);
  std::string error;

  options.out_dir = dir.path / "a";
  REQUIRE(swarmkit::cli::run_command(options, &error) == swarmkit::cli::kOk);
  options.out_dir = dir.path / "b";
  REQUIRE(swarmkit::cli::run_command(options, &error) == swarmkit::cli::kOk);

  for (const char* name : {"trajectory.csv", "metrics.csv", "summary.json"}) {
    CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
  }
}

TEST_CASE("sweep: grid rows plus aggregates, deterministic") {
  TempDir dir("sweep");
  const std::string search_scenario = R"({
    "seed": 5,
    "world": {"bounds": [0, 0, 13.5, 6.2],
              "lights": [{"center": [11.0, 5.0], "radius": 2.0}],
              "body": {"noise": {"position": 0.0, "heading_deg": 0.0}}},
    "agents": {
      "count": 4,
      "placement": {"type": "cluster", "center": [5.0, 3.0], "radius": 1.0,
                    "min_separation": 0.2, "headings": "random"},
      "behavior": {"kind": "search_and_explore", "p0": 0.5,
                   "cruise_speed": 0.1, "speed_gain": 0.4,
                   "wall_standoff": 0.3}
    },
    "run": {"max_ticks": 400, "tick_duration": 0.5,
            "termination": "all_reached_target"}
  })";
  swarmkit::cli::SweepOptions options;
  options.scenario_path = write_scenario(dir, search_scenario);
  options.agent_counts = {2, 4};
  options.seeds = 2;
  options.out_dir = dir.path / "out";
  options.workers = 2;
  std::string error;
  REQUIRE(swarmkit::cli::sweep_command(options, &error) == swarmkit::cli::kOk);

  const std::string csv = slurp(options.out_dir / "sweep.csv");
  // Header + 4 run rows (some may be timeouts) + one aggregate row per n.
  int lines = 0, aggregates = 0;
  for (const char c : csv) lines += c == '\n' ? 1 : 0;
  for (std::size_t pos = csv.find("aggregate,"); pos != std::string::npos;
       pos = csv.find("aggregate,", pos + 1)) {
    ++aggregates;
  }
  CHECK(lines == 1 + 4 + 2);
  CHECK(aggregates == 2);

  options.out_dir = dir.path / "out2";
  options.workers = 1;
  REQUIRE(swarmkit::cli::sweep_command(options, &error) == swarmkit::cli::kOk);
  CHECK(slurp(dir.path / "out" / "sweep.csv") ==
        slurp(dir.path / "out2" / "sweep.csv"));

  // A single seed has zero variance by definition.
  options.seeds = 1;
  options.agent_counts = {4};
  options.out_dir = dir.path / "out3";
  REQUIRE(swarmkit::cli::sweep_command(options, &error) == swarmkit::cli::kOk);
  const std::string single = slurp(dir.path / "out3" / "sweep.csv");
  const std::size_t agg = single.find("aggregate,4");
  REQUIRE(agg != std::string::npos);
  std::istringstream agg_row(single.substr(agg));
  std::string line;
  std::getline(agg_row, line);
  // row,n,seed,ff_ticks,ar_ticks,ff_speed,ar_speed,var_ff,var_ar,std_ff,
  // std_ar,timeouts
  std::vector<std::string> cols;
  std::string col;
  std::istringstream fields(line);
  while (std::getline(fields, col, ',')) cols.push_back(col);
  REQUIRE(cols.size() == 12);
  CHECK(cols[7] == "0");   // variance of a single sample
  CHECK(cols[8] == "0");
  CHECK(cols[9] == "0");   // and its standard deviation
  CHECK(cols[10] == "0");
}
