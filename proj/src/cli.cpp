#include "swarmkit/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "swarmkit/engine.hpp"
#include "swarmkit/errors.hpp"
#include "swarmkit/metrics.hpp"
#include "swarmkit/text.hpp"

namespace swarmkit::cli {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<const AgentRecord*> active_agents(const StepRecord& record) {
  std::vector<const AgentRecord*> out;
  for (const AgentRecord& a : record.agents) {
    if (!a.removed) out.push_back(&a);
  }
  return out;
}

std::string trajectory_csv(const RunResult& result) {
  std::string csv = "tick,agent,x,y,hx,hy,speed,phase\n";
  for (const StepRecord& record : result.records) {
    for (const AgentRecord& a : record.agents) {
      csv += std::to_string(record.tick);
      csv += ',';
      csv += std::to_string(a.id);
      csv += ',';
      csv += format_double(a.true_position.x);
      csv += ',';
      csv += format_double(a.true_position.y);
      csv += ',';
      csv += format_double(a.true_heading.x());
      csv += ',';
      csv += format_double(a.true_heading.y());
      csv += ',';
      csv += format_double(a.speed);
      csv += ',';
      csv += std::to_string(a.removed ? -1 : a.phase);
      csv += '\n';
    }
  }
  return csv;
}

std::string metrics_csv(const RunResult& result) {
  std::string csv =
      "tick,heading_order,coverage_area_m2,min_pair_dist_m,"
      "messages_sent,messages_delivered\n";
  for (const StepRecord& record : result.records) {
    std::vector<Heading> headings;
    std::vector<Vec2> positions;
    for (const AgentRecord* a : active_agents(record)) {
      headings.push_back(a->true_heading);
      positions.push_back(a->true_position);
    }
    const double min_pair =
        positions.size() >= 2 ? min_pairwise_distance(positions) : 0.0;
    csv += std::to_string(record.tick);
    csv += ',';
    csv += format_double(heading_order(std::span<const Heading>{headings}));
    csv += ',';
    csv += format_double(coverage_area(std::span<const Vec2>{positions}));
    csv += ',';
    csv += format_double(min_pair);
    csv += ',';
    csv += std::to_string(record.messages_sent);
    csv += ',';
    csv += std::to_string(record.messages_delivered);
    csv += '\n';
  }
  return csv;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::MaxTicks: return "max_ticks";
    case Termination::AllReachedTarget: return "all_reached_target";
    case Termination::ConsensusReached: return "consensus_reached";
  }
  return "max_ticks";
}

std::optional<Tick> first_find_tick(const RunResult& result) {
  return time_to_event(result, [](const StepRecord& r) {
    for (const AgentRecord& a : r.agents) {
      if (!a.removed && a.target_found) return true;
    }
    return false;
  });
}

std::string summary_json(const ScenarioConfig& config, const RunResult& result) {
  json summary;
  summary["seed"] = config.seed;
  summary["n_agents"] = config.n_agents;
  summary["config_hash"] = config_hash(config);
  summary["termination"] = termination_name(result.termination);
  summary["ticks"] = result.final_tick;
  summary["tick_duration"] = config.run.tick_duration;

  std::vector<Heading> headings;
  std::vector<Vec2> positions;
  for (const AgentState& s : result.final_states) {
    headings.push_back(s.heading);
    positions.push_back(s.position);
  }
  summary["final_heading_order"] =
      heading_order(std::span<const Heading>{headings});
  summary["final_coverage_area_m2"] =
      coverage_area(std::span<const Vec2>{positions});
  summary["final_min_pair_dist_m"] =
      positions.size() >= 2 ? min_pairwise_distance(positions) : 0.0;

  long sent = 0, delivered = 0;
  for (const StepRecord& r : result.records) {
    sent += r.messages_sent;
    delivered += r.messages_delivered;
  }
  summary["messages_sent"] = sent;
  summary["messages_delivered"] = delivered;

  if (const auto find = first_find_tick(result)) {
    summary["first_find_tick"] = *find;
  } else {
    summary["first_find_tick"] = nullptr;
  }
  if (result.termination == Termination::AllReachedTarget) {
    summary["all_reach_tick"] = result.final_tick;
  } else {
    summary["all_reach_tick"] = nullptr;
  }
  return summary.dump(2) + "\n";
}

std::string effective_scenario_text(const std::filesystem::path& path,
                                    const std::vector<std::string>& overrides,
                                    std::optional<std::uint64_t> env_seed) {
  std::string text = read_file(path);
  if (env_seed) {
    text = apply_override(text, "seed", std::to_string(*env_seed));
  }
  for (const std::string& entry : overrides) {
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override must look like key=value: " + entry);
    }
    text = apply_override(text, entry.substr(0, eq), entry.substr(eq + 1));
  }
  return text;
}

int guarded(std::string* error, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    if (error) *error = e.what();
    return kConfigError;
  } catch (const IoError& e) {
    if (error) *error = e.what();
    return kIoError;
  } catch (const SwarmError& e) {
    if (error) *error = e.what();
    return kConfigError;
  }
}

}  // namespace

int run_command(const RunOptions& options, std::string* error) {
  return guarded(error, [&] {
    const std::string text = effective_scenario_text(
        options.scenario_path, options.overrides, options.env_seed);
    ScenarioConfig config = parse_scenario(text);
    if (options.verbose_net) config.run.verbose_net = true;

    const RunResult result = run_scenario(config);

    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    write_file(options.out_dir / "trajectory.csv", trajectory_csv(result));
    write_file(options.out_dir / "metrics.csv", metrics_csv(result));
    write_file(options.out_dir / "summary.json", summary_json(config, result));
    return kOk;
  });
}

int sweep_command(const SweepOptions& options, std::string* error) {
  return guarded(error, [&] {
    if (options.agent_counts.empty()) {
      throw ConfigError("sweep: --agents list is empty");
    }
    if (options.seeds < 1) throw ConfigError("sweep: --seeds must be >= 1");

    const std::string base_text = effective_scenario_text(
        options.scenario_path, {}, options.env_seed);
    const std::uint64_t base_seed = parse_scenario(base_text).seed;

    struct Row {
      int n = 0;
      std::uint64_t seed = 0;
      std::optional<Tick> first_find;
      std::optional<Tick> all_reach;
      double dt = 1.0;
      bool failed = false;
      std::string message;
    };
    std::vector<Row> rows(options.agent_counts.size() *
                          static_cast<std::size_t>(options.seeds));
    for (std::size_t ni = 0; ni < options.agent_counts.size(); ++ni) {
      for (int si = 0; si < options.seeds; ++si) {
        Row& row = rows[ni * options.seeds + si];
        row.n = options.agent_counts[ni];
        row.seed = base_seed + static_cast<std::uint64_t>(si);
      }
    }

    const auto run_one = [&](Row& row) {
      try {
        std::string text = apply_override(base_text, "n_agents",
                                          std::to_string(row.n));
        text = apply_override(text, "seed", std::to_string(row.seed));
        const ScenarioConfig config = parse_scenario(text);
        const RunResult result = run_scenario(config);
        row.dt = config.run.tick_duration;
        row.first_find = first_find_tick(result);
        if (result.termination == Termination::AllReachedTarget) {
          row.all_reach = result.final_tick;
        }
      } catch (const SwarmError& e) {
        row.failed = true;
        row.message = e.what();
      }
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1) {
      for (Row& row : rows) run_one(row);
    } else {
      std::vector<std::thread> pool;
      const std::size_t stride = static_cast<std::size_t>(workers);
      for (std::size_t w = 0; w < stride; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < rows.size(); i += stride) run_one(rows[i]);
        });
      }
      for (std::thread& t : pool) t.join();
    }

    const auto speed = [](Tick ticks, double dt) {
      return 1.0 / (static_cast<double>(ticks) * dt);
    };

    std::string csv =
        "row,n,seed,first_find_ticks,all_reach_ticks,first_find_speed,"
        "all_reach_speed,var_first_find_speed,var_all_reach_speed,"
        "std_first_find_speed,std_all_reach_speed,timeouts\n";
    for (const Row& row : rows) {
      if (row.failed) {
        csv += "failed," + std::to_string(row.n) + ',' +
               std::to_string(row.seed) + ",,,,,,,,,\n";
        continue;
      }
      const bool timeout = !row.all_reach.has_value();
      csv += timeout ? "timeout," : "run,";
      csv += std::to_string(row.n);
      csv += ',';
      csv += std::to_string(row.seed);
      csv += ',';
      if (row.first_find) csv += std::to_string(*row.first_find);
      csv += ',';
      if (row.all_reach) csv += std::to_string(*row.all_reach);
      csv += ',';
      if (row.first_find && *row.first_find > 0) {
        csv += format_double(speed(*row.first_find, row.dt));
      }
      csv += ',';
      if (row.all_reach && *row.all_reach > 0) {
        csv += format_double(speed(*row.all_reach, row.dt));
      }
      csv += ",,,,,\n";
    }

    // One aggregate row per n over completed runs; timeouts counted there.
    for (const int n : options.agent_counts) {
      std::vector<double> find_speeds, reach_speeds;
      long timeouts = 0;
      for (const Row& row : rows) {
        if (row.n != n || row.failed) continue;
        if (!row.all_reach) {
          ++timeouts;
          continue;
        }
        if (row.first_find && *row.first_find > 0) {
          find_speeds.push_back(speed(*row.first_find, row.dt));
        }
        reach_speeds.push_back(speed(*row.all_reach, row.dt));
      }
      const auto mean = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        double s = 0.0;
        for (const double x : v) s += x;
        return s / static_cast<double>(v.size());
      };
      const auto variance = [&mean](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        const double m = mean(v);
        double s = 0.0;
        for (const double x : v) s += (x - m) * (x - m);
        return s / static_cast<double>(v.size());
      };
      const double var_find = variance(find_speeds);
      const double var_reach = variance(reach_speeds);
      csv += "aggregate," + std::to_string(n) + ",,,," +
             format_double(mean(find_speeds)) + ',' +
             format_double(mean(reach_speeds)) + ',' +
             format_double(var_find) + ',' + format_double(var_reach) + ',' +
             format_double(std::sqrt(var_find)) + ',' +
             format_double(std::sqrt(var_reach)) + ',' +
             std::to_string(timeouts) + '\n';
    }

    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    write_file(options.out_dir / "sweep.csv", csv);
    return kOk;
  });
}

}  // namespace swarmkit::cli
