#include "swarmkit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <thread>

#include "swarmkit/errors.hpp"
#include "swarmkit/metrics.hpp"

namespace swarmkit {
namespace {

// Everything one agent owns across the run. Behaviors touch none of this
// directly; they see value snapshots only.
struct AgentRuntime {
  AgentState state;  // pose fields track the body between ticks
  BehaviorSpec spec;
  bool removed = false;
  bool anchored = false;
  bool radius_tracks_p0 = false;  // consensus_radius was defaulted from p0
  double max_speed_cap = std::numeric_limits<double>::infinity();
  Mailbox mailbox;
  SeededRng sense_rng;
  std::optional<Vec2> leader_last_known;
  std::optional<Heading> pinned_heading;  // set by SetLeader, held exactly
  std::size_t next_waypoint = 0;

  // per-tick scratch
  SensorReading sensed;
  AgentState estimated;  // state as the agent knows it: sensed pose
  MotionCommand command;
  int phase = 0;
  bool anomaly = false;
  std::vector<NeighborEntry> neighbors;

  AgentRuntime(AgentState s, BehaviorSpec sp, SeededRng rng)
      : state(std::move(s)), spec(std::move(sp)), sense_rng(rng) {}
};

void parallel_for(std::size_t n, bool parallel,
                  const std::function<void(std::size_t)>& fn) {
  if (!parallel || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(2u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::vector<Pose> place_agents(const ScenarioConfig& config, SeededRng& init) {
  const Placement& pl = config.placement;
  const int n = config.n_agents;
  std::vector<Pose> poses(n);

  const auto far_enough = [&](Vec2 p, int placed) {
    for (int j = 0; j < placed; ++j) {
      if (distance(p, poses[j].position) < pl.min_separation) return false;
    }
    return true;
  };

  switch (pl.type) {
    case Placement::Type::List:
      for (int i = 0; i < n; ++i) poses[i].position = pl.positions[i];
      break;
    case Placement::Type::Cluster:
      for (int i = 0; i < n; ++i) {
        for (int attempt = 0;; ++attempt) {
          if (attempt >= 10000) {
            throw ConfigError("placement: cannot fit cluster with the given "
                              "radius and min_separation");
          }
          const double a = init.uniform(0.0, 2.0 * M_PI);
          const double r = pl.radius * std::sqrt(init.next_double());
          const Vec2 p = pl.center + Vec2{r * std::cos(a), r * std::sin(a)};
          if (config.world.bounds.contains(p) && far_enough(p, i)) {
            poses[i].position = p;
            break;
          }
        }
      }
      break;
    case Placement::Type::Uniform: {
      const Rect& b = config.world.bounds;
      const double margin =
          std::min({pl.min_separation, b.width() / 10, b.height() / 10});
      for (int i = 0; i < n; ++i) {
        for (int attempt = 0;; ++attempt) {
          if (attempt >= 10000) {
            throw ConfigError("placement: cannot fit agents uniformly");
          }
          const Vec2 p{init.uniform(b.xmin + margin, b.xmax - margin),
                       init.uniform(b.ymin + margin, b.ymax - margin)};
          if (far_enough(p, i)) {
            poses[i].position = p;
            break;
          }
        }
      }
      break;
    }
    case Placement::Type::Grid: {
      const int cols = pl.columns > 0
                           ? pl.columns
                           : static_cast<int>(std::ceil(std::sqrt(double(n))));
      const int rows = (n + cols - 1) / cols;
      const Vec2 origin = pl.center - Vec2{(cols - 1) * pl.spacing / 2.0,
                                           (rows - 1) * pl.spacing / 2.0};
      for (int i = 0; i < n; ++i) {
        const Vec2 p = origin + Vec2{(i % cols) * pl.spacing,
                                     (i / cols) * pl.spacing};
        if (!config.world.bounds.contains(p)) {
          throw ConfigError("placement: grid cell outside world bounds");
        }
        poses[i].position = p;
      }
      break;
    }
  }

  for (int i = 0; i < n; ++i) {
    switch (pl.headings) {
      case Placement::Headings::Random:
        poses[i].heading = Heading::from_angle(init.uniform(-M_PI, M_PI));
        break;
      case Placement::Headings::Fixed:
        poses[i].heading = Heading::from_angle(pl.fixed_heading_rad);
        break;
      case Placement::Headings::List:
        poses[i].heading = Heading::from_angle(pl.heading_list[i]);
        break;
    }
  }
  return poses;
}

void dispatch_behavior(AgentRuntime& a, NeighborView view) {
  switch (a.spec.kind) {
    case BehaviorKind::Consensus:
      a.command = consensus_step(a.estimated, view, a.spec);
      break;
    case BehaviorKind::PerimeterDefense:
      a.command = perimeter_step(a.estimated, view, a.sensed, a.spec);
      break;
    case BehaviorKind::Exploration: {
      BehaviorSpec spec = a.spec;
      if (spec.leader) {
        const auto goal =
            leader_follower_goal(*spec.leader, view, a.leader_last_known);
        a.leader_last_known = goal;
        if (goal) {
          spec.goal = goal;
        } else {
          spec.heading_weight = 0;  // cold start: no goal heard yet
        }
      }
      a.command = exploration_step(a.estimated, view, spec);
      break;
    }
    case BehaviorKind::SearchAndExplore: {
      const SearchStepResult r =
          search_and_explore_step(a.estimated, view, a.sensed, a.spec);
      a.command = r.command;
      a.state.target_found = r.target_found;
      a.estimated.target_found = r.target_found;
      a.phase = r.phase;
      break;
    }
    case BehaviorKind::ScriptedPath: {
      const ScriptedStepResult r =
          scripted_path_step(a.estimated, a.spec, a.next_waypoint);
      a.command = r.command;
      a.next_waypoint = r.next_waypoint;
      break;
    }
  }
}

// Largest |angle to the mean heading| over alive agents; pi when the mean
// direction is undefined.
double heading_spread(const std::vector<AgentRuntime>& agents) {
  Vec2 sum{0.0, 0.0};
  int alive = 0;
  for (const AgentRuntime& a : agents) {
    if (a.removed) continue;
    sum += a.state.heading.vec();
    ++alive;
  }
  if (alive == 0) return 0.0;
  const auto mean = try_normalize(sum);
  if (!mean) return M_PI;
  double spread = 0.0;
  for (const AgentRuntime& a : agents) {
    if (a.removed) continue;
    spread = std::max(spread, std::abs(mean->angle_to(a.state.heading)));
  }
  return spread;
}

}  // namespace

Engine::Engine(ScenarioConfig config) : config_(std::move(config)) {
  if (config_.n_agents < 1) throw ConfigError("n_agents must be >= 1");
  for (const ScheduledEvent& e : config_.events) {
    if (e.tick < 0 || e.tick >= config_.run.max_ticks) {
      throw ConfigError("event tick outside the run horizon");
    }
  }
}

void Engine::inject_event(Tick tick, EventAction action) {
  const auto check_id = [&](AgentId id) {
    if (id < 0 || id >= config_.n_agents) {
      throw UnknownAgentError("unknown agent id " + std::to_string(id));
    }
  };
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, SetP0Event>) {
          if (e.id) check_id(*e.id);
        } else {
          check_id(e.id);
        }
      },
      action);
  config_.events.push_back({tick, std::move(action)});
  std::stable_sort(config_.events.begin(), config_.events.end(),
                   [](const ScheduledEvent& a, const ScheduledEvent& b) {
                     return a.tick < b.tick;
                   });
}

RunResult Engine::run() {
  const ScenarioConfig& cfg = config_;
  const int n = cfg.n_agents;
  const double dt = cfg.run.tick_duration;

  SeededRng init_rng(cfg.seed, "init");
  const std::vector<Pose> poses = place_agents(cfg, init_rng);

  std::map<AgentId, const AgentOverride*> override_by_id;
  for (const AgentOverride& ov : cfg.overrides) override_by_id[ov.id] = &ov;

  std::vector<AgentRuntime> agents;
  agents.reserve(n);
  std::vector<AgentId> ids(n);
  for (int i = 0; i < n; ++i) {
    const AgentId id = cfg.placement.ids.empty()
                           ? static_cast<AgentId>(i)
                           : cfg.placement.ids[i];
    ids[i] = id;
    AgentState state;
    state.id = id;
    state.position = poses[i].position;
    state.heading = poses[i].heading;

    BehaviorSpec spec = cfg.behavior;
    bool anchored = false;
    if (const auto it = override_by_id.find(id); it != override_by_id.end()) {
      if (it->second->behavior) spec = *it->second->behavior;
      anchored = it->second->anchored;
    }
    AgentRuntime rt(state, spec,
                    SeededRng(cfg.seed, "sense/" + std::to_string(id)));
    rt.anchored = anchored;
    rt.radius_tracks_p0 = spec.consensus_radius == spec.p0;
    agents.push_back(std::move(rt));
  }

  MeshNetwork mesh(cfg.network, SeededRng(cfg.seed, "net"));

  std::map<Tick, std::vector<const EventAction*>> events;
  for (const ScheduledEvent& e : cfg.events) {
    events[e.tick].push_back(&e.action);
  }

  RunResult result;
  result.records.reserve(static_cast<std::size_t>(cfg.run.max_ticks));
  int consensus_streak = 0;

  const auto slot_of = [&](AgentId id) -> AgentRuntime& {
    for (int i = 0; i < n; ++i) {
      if (ids[i] == id) return agents[i];
    }
    throw UnknownAgentError("unknown agent id " + std::to_string(id));
  };

  for (Tick tick = 0; tick < cfg.run.max_ticks; ++tick) {
    // Scheduled interventions first.
    if (const auto it = events.find(tick); it != events.end()) {
      for (const EventAction* action : it->second) {
        std::visit(
            [&](const auto& e) {
              using T = std::decay_t<decltype(e)>;
              if constexpr (std::is_same_v<T, RemoveAgentEvent>) {
                slot_of(e.id).removed = true;
              } else if constexpr (std::is_same_v<T, SetLeaderEvent>) {
                AgentRuntime& a = slot_of(e.id);
                a.state.role_flags |= role::kLeader;
                if (e.heading_rad) {
                  a.state.heading = Heading::from_angle(*e.heading_rad);
                }
                a.pinned_heading = a.state.heading;
              } else if constexpr (std::is_same_v<T, DegradeAgentEvent>) {
                AgentRuntime& a = slot_of(e.id);
                a.state.role_flags |= role::kDegraded;
                a.max_speed_cap = cfg.world.body.max_speed / 2.0;
              } else if constexpr (std::is_same_v<T, SetP0Event>) {
                for (int i = 0; i < n; ++i) {
                  if (e.id && ids[i] != *e.id) continue;
                  AgentRuntime& a = agents[i];
                  a.spec.p0 = e.p0;
                  if (a.radius_tracks_p0) a.spec.consensus_radius = e.p0;
                }
              } else if constexpr (std::is_same_v<T, SetGoalEvent>) {
                AgentRuntime& a = slot_of(e.id);
                a.spec.goal = e.goal;
                a.spec.leader = std::nullopt;
                a.spec.heading_weight = 1;
              }
            },
            *action);
      }
    }

    // Phase 1: deliver last tick's broadcasts.
    std::vector<Vec2> positions(n);
    std::vector<bool> alive(n);
    for (int i = 0; i < n; ++i) {
      positions[i] = agents[i].state.position;
      alive[i] = !agents[i].removed;
    }
    const DeliveryReport report =
        mesh.resolve_tick(positions, alive, ids, cfg.run.verbose_net);
    for (const auto& d : report.deliveries) {
      agents[d.receiver].mailbox.accept(d.state, d.sent_tick, tick);
    }

    // Phases 2+3: sense and decide against the previous snapshot. Every
    // input is per-agent, so evaluation order (or thread) cannot matter.
    parallel_for(
        static_cast<std::size_t>(n), cfg.run.parallel, [&](std::size_t i) {
          AgentRuntime& a = agents[i];
          if (a.removed) {
            a.command = {a.state.heading, 0.0};
            a.phase = -1;
            return;
          }
          a.sensed = sense(cfg.world, {a.state.position, a.state.heading},
                           a.sense_rng);
          // Decisions run on the estimated state; the true pose stays with
          // the body and the log. A forced leader knows its heading exactly.
          a.estimated = a.state;
          a.estimated.position = a.sensed.pose.position;
          a.estimated.heading =
              a.pinned_heading ? *a.pinned_heading : a.sensed.pose.heading;

          a.neighbors.clear();
          for (auto& [state, age] :
               a.mailbox.fresh(tick, mesh.model().staleness_ticks)) {
            a.neighbors.push_back({state, age});
          }
          const NeighborView view{a.neighbors};

          a.phase = 0;
          a.anomaly = false;
          try {
            dispatch_behavior(a, view);
          } catch (const SwarmError&) {
            // Degrade, don't crash: hold the heading for one tick.
            a.command = {a.estimated.heading, 0.0};
            a.anomaly = true;
          }
        });

    // Phase 4: broadcast the estimated state the decisions were made with.
    for (int i = 0; i < n; ++i) {
      AgentRuntime& a = agents[i];
      if (a.removed) continue;
      a.state.tick = tick;
      a.state.speed = std::min({a.command.target_speed,
                                cfg.world.body.max_speed, a.max_speed_cap});
      a.estimated.tick = tick;
      a.estimated.speed = a.state.speed;
      mesh.broadcast(static_cast<AgentId>(i), a.estimated);
    }

    // Record the tick before the bodies move.
    StepRecord record;
    record.tick = tick;
    record.agents.reserve(n);
    for (const AgentRuntime& a : agents) {
      AgentRecord ar;
      ar.id = a.state.id;
      ar.true_position = a.state.position;
      ar.true_heading = a.state.heading;
      ar.sensed_position = a.sensed.pose.position;
      ar.sensed_heading = a.sensed.pose.heading;
      ar.command = a.command;
      ar.speed = a.removed ? 0.0 : a.state.speed;
      ar.phase = a.phase;
      ar.target_found = a.state.target_found;
      ar.removed = a.removed;
      record.agents.push_back(std::move(ar));
    }
    record.messages_sent = report.sent;
    record.messages_delivered = report.delivered;
    for (const AgentRuntime& a : agents) {
      record.behavior_anomalies += a.anomaly ? 1 : 0;
    }
    if (cfg.run.verbose_net) record.pair_outcomes = report.pair_outcomes;
    result.records.push_back(std::move(record));

    // Phase 5: bodies execute the window.
    parallel_for(
        static_cast<std::size_t>(n), cfg.run.parallel, [&](std::size_t i) {
          AgentRuntime& a = agents[i];
          if (a.removed || a.anchored) return;
          const Pose next = step_body(
              cfg.world.body, cfg.world, {a.state.position, a.state.heading},
              a.command.target_speed, a.command.target_heading, dt,
              a.max_speed_cap);
          a.state.position = next.position;
          a.state.heading = next.heading;
        });

    result.final_tick = tick + 1;

    // Termination predicates, evaluated on the post-step snapshot.
    if (cfg.run.termination == TerminationRule::Consensus) {
      if (heading_spread(agents) < cfg.run.consensus_spread_rad) {
        ++consensus_streak;
        if (consensus_streak >= cfg.run.consensus_hold_ticks) {
          result.termination = Termination::ConsensusReached;
          break;
        }
      } else {
        consensus_streak = 0;
      }
    } else if (cfg.run.termination == TerminationRule::AllReachedTarget) {
      bool all = true;
      for (const AgentRuntime& a : agents) {
        if (a.removed) continue;
        if (!a.state.target_found ||
            distance(a.state.position, *a.state.target_found) >
                cfg.run.reach_radius_factor * a.spec.p0) {
          all = false;
          break;
        }
      }
      if (all) {
        result.termination = Termination::AllReachedTarget;
        break;
      }
    }
  }

  result.final_states.reserve(n);
  for (AgentRuntime& a : agents) {
    a.state.tick = result.final_tick;
    result.final_states.push_back(a.state);
  }
  return result;
}

RunResult run_scenario(ScenarioConfig config) {
  return Engine(std::move(config)).run();
}

}  // namespace swarmkit
