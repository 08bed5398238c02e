#include "swarmkit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "swarmkit/errors.hpp"

namespace swarmkit {
namespace {

using nlohmann::json;

constexpr double kDegToRad = M_PI / 180.0;

[[noreturn]] void bad(const std::string& message) { throw ConfigError(message); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      bad(where + ": unknown key `" + key + "`");
    }
  }
}

const json& require(const json& obj, const std::string& where,
                    const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing required key `" + key + "`");
  return *it;
}

double num(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where + ": expected a number");
  return v.get<double>();
}

Vec2 vec2(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) bad(where + ": expected [x, y]");
  const Vec2 out{num(v[0], where), num(v[1], where)};
  if (!out.finite()) bad(where + ": non-finite coordinate");
  return out;
}

BehaviorKind behavior_kind(const std::string& name, const std::string& where) {
  if (name == "consensus") return BehaviorKind::Consensus;
  if (name == "perimeter_defense") return BehaviorKind::PerimeterDefense;
  if (name == "exploration") return BehaviorKind::Exploration;
  if (name == "search_and_explore") return BehaviorKind::SearchAndExplore;
  if (name == "scripted_path") return BehaviorKind::ScriptedPath;
  bad(where + ": unknown behavior kind `" + name + "`");
}

std::string behavior_kind_name(BehaviorKind kind) {
  switch (kind) {
    case BehaviorKind::Consensus: return "consensus";
    case BehaviorKind::PerimeterDefense: return "perimeter_defense";
    case BehaviorKind::Exploration: return "exploration";
    case BehaviorKind::SearchAndExplore: return "search_and_explore";
    case BehaviorKind::ScriptedPath: return "scripted_path";
  }
  return "consensus";
}

BehaviorSpec parse_behavior(const json& obj, const std::string& where,
                            double tick_duration) {
  check_keys(obj, where,
             {"kind", "p0", "h", "delta", "goal", "consensus_radius",
              "cruise_speed", "speed_gain", "wall_standoff", "wall_mode",
              "waypoints", "waypoint_tolerance"});
  BehaviorSpec spec;
  spec.kind = behavior_kind(
      require(obj, where, "kind").get<std::string>(), where);
  if (obj.contains("p0")) spec.p0 = num(obj["p0"], where + ".p0");
  if (obj.contains("h")) {
    const int h = obj["h"].get<int>();
    if (h != 0 && h != 1) bad(where + ".h: must be 0 or 1");
    spec.heading_weight = h;
  }
  if (obj.contains("delta")) spec.delta = num(obj["delta"], where + ".delta");
  if (obj.contains("goal")) {
    const json& g = obj["goal"];
    if (g.is_array()) {
      spec.goal = vec2(g, where + ".goal");
    } else if (g.is_object()) {
      check_keys(g, where + ".goal", {"leader"});
      spec.leader = require(g, where + ".goal", "leader").get<AgentId>();
    } else if (!g.is_null()) {
      bad(where + ".goal: expected [x, y], {\"leader\": id}, or null");
    }
  }
  spec.consensus_radius = obj.contains("consensus_radius")
                              ? num(obj["consensus_radius"], where)
                              : spec.p0;  // R_i defaults to distance p0
  if (obj.contains("cruise_speed")) {
    spec.cruise_speed = num(obj["cruise_speed"], where);
  }
  spec.speed_gain = obj.contains("speed_gain")
                        ? num(obj["speed_gain"], where)
                        : spec.delta / tick_duration;
  if (obj.contains("wall_standoff")) {
    spec.wall_standoff = num(obj["wall_standoff"], where);
  }
  if (obj.contains("wall_mode")) {
    const std::string mode = obj["wall_mode"].get<std::string>();
    if (mode == "stop") {
      spec.wall_mode = WallMode::Stop;
    } else if (mode == "virtual") {
      spec.wall_mode = WallMode::Virtual;
    } else {
      bad(where + ".wall_mode: expected \"stop\" or \"virtual\"");
    }
  }
  if (obj.contains("waypoints")) {
    for (const json& w : obj["waypoints"]) {
      spec.waypoints.push_back(vec2(w, where + ".waypoints"));
    }
  }
  if (obj.contains("waypoint_tolerance")) {
    spec.waypoint_tolerance = num(obj["waypoint_tolerance"], where);
  }

  if (spec.p0 <= 0.0) bad(where + ": p0 must be > 0");
  if (spec.delta <= 0.0) bad(where + ": delta must be > 0");
  if (spec.consensus_radius <= 0.0) bad(where + ": consensus_radius must be > 0");
  if (spec.cruise_speed < 0.0) bad(where + ": cruise_speed must be >= 0");
  if (spec.speed_gain < 0.0) bad(where + ": speed_gain must be >= 0");
  if (spec.kind == BehaviorKind::Exploration && spec.heading_weight == 1 &&
      !spec.goal && !spec.leader) {
    bad(where + ": exploration with h=1 needs a goal or leader");
  }
  if (spec.kind == BehaviorKind::ScriptedPath && spec.waypoints.empty()) {
    bad(where + ": scripted_path needs waypoints");
  }
  return spec;
}

json behavior_to_json(const BehaviorSpec& spec) {
  json obj;
  obj["kind"] = behavior_kind_name(spec.kind);
  obj["p0"] = spec.p0;
  obj["h"] = spec.heading_weight;
  obj["delta"] = spec.delta;
  if (spec.goal) {
    obj["goal"] = {spec.goal->x, spec.goal->y};
  } else if (spec.leader) {
    obj["goal"] = {{"leader", *spec.leader}};
  } else {
    obj["goal"] = nullptr;
  }
  obj["consensus_radius"] = spec.consensus_radius;
  obj["cruise_speed"] = spec.cruise_speed;
  obj["speed_gain"] = spec.speed_gain;
  obj["wall_standoff"] = spec.wall_standoff;
  obj["wall_mode"] = spec.wall_mode == WallMode::Virtual ? "virtual" : "stop";
  if (!spec.waypoints.empty()) {
    json pts = json::array();
    for (const Vec2& w : spec.waypoints) pts.push_back({w.x, w.y});
    obj["waypoints"] = pts;
    obj["waypoint_tolerance"] = spec.waypoint_tolerance;
  }
  return obj;
}

World parse_world(const json& obj) {
  check_keys(obj, "world", {"bounds", "walls", "lights", "body"});
  World world;
  if (obj.contains("bounds")) {
    const json& b = obj["bounds"];
    if (!b.is_array() || b.size() != 4) {
      bad("world.bounds: expected [xmin, ymin, xmax, ymax]");
    }
    world.bounds = {num(b[0], "bounds"), num(b[1], "bounds"),
                    num(b[2], "bounds"), num(b[3], "bounds")};
    if (world.bounds.width() <= 0.0 || world.bounds.height() <= 0.0) {
      bad("world.bounds: empty rectangle");
    }
  }
  if (obj.contains("walls")) {
    for (const json& w : obj["walls"]) {
      if (!w.is_array() || w.size() != 4) {
        bad("world.walls: expected [x1, y1, x2, y2] entries");
      }
      const Segment seg{{num(w[0], "walls"), num(w[1], "walls")},
                        {num(w[2], "walls"), num(w[3], "walls")}};
      if (!world.bounds.contains(seg.a) || !world.bounds.contains(seg.b)) {
        bad("world.walls: wall endpoint outside bounds");
      }
      world.walls.push_back(seg);
    }
  }
  if (obj.contains("lights")) {
    for (const json& l : obj["lights"]) {
      check_keys(l, "world.lights", {"center", "radius"});
      Light light;
      light.center = vec2(require(l, "world.lights", "center"), "light center");
      light.detection_radius = num(require(l, "world.lights", "radius"), "light radius");
      if (light.detection_radius <= 0.0) bad("world.lights: radius must be > 0");
      if (!world.bounds.contains(light.center)) bad("world.lights: center outside bounds");
      world.lights.push_back(light);
    }
  }
  if (obj.contains("body")) {
    const json& b = obj["body"];
    check_keys(b, "world.body",
               {"kind", "max_speed", "max_turn_rate", "sensor_range", "noise"});
    const std::string kind =
        b.contains("kind") ? b["kind"].get<std::string>() : "differential_drive";
    if (kind == "differential_drive") {
      world.body = ground_robot_body();
    } else if (kind == "holonomic") {
      world.body = buoy_body();
    } else {
      bad("world.body.kind: unknown kind `" + kind + "`");
    }
    if (b.contains("max_speed")) world.body.max_speed = num(b["max_speed"], "body");
    if (b.contains("max_turn_rate")) {
      world.body.max_turn_rate = num(b["max_turn_rate"], "body");
    }
    if (b.contains("sensor_range")) {
      world.body.sensor_range = num(b["sensor_range"], "body");
    }
    if (b.contains("noise")) {
      const json& n = b["noise"];
      check_keys(n, "world.body.noise", {"position", "heading_deg"});
      if (n.contains("position")) {
        world.body.noise_pos_sigma = num(n["position"], "noise");
      }
      if (n.contains("heading_deg")) {
        world.body.noise_heading_sigma = num(n["heading_deg"], "noise") * kDegToRad;
      }
    }
    if (world.body.max_speed <= 0.0 || world.body.max_turn_rate <= 0.0 ||
        world.body.sensor_range <= 0.0) {
      bad("world.body: limits must be positive");
    }
    if (world.body.noise_pos_sigma < 0.0 || world.body.noise_heading_sigma < 0.0) {
      bad("world.body.noise: sigmas must be >= 0");
    }
  }
  return world;
}

json world_to_json(const World& world) {
  json obj;
  obj["bounds"] = {world.bounds.xmin, world.bounds.ymin, world.bounds.xmax,
                   world.bounds.ymax};
  json walls = json::array();
  for (const Segment& w : world.walls) {
    walls.push_back({w.a.x, w.a.y, w.b.x, w.b.y});
  }
  obj["walls"] = walls;
  json lights = json::array();
  for (const Light& l : world.lights) {
    lights.push_back({{"center", {l.center.x, l.center.y}},
                      {"radius", l.detection_radius}});
  }
  obj["lights"] = lights;
  obj["body"] = {
      {"kind", world.body.kind == BodyKindTag::Holonomic ? "holonomic"
                                                         : "differential_drive"},
      {"max_speed", world.body.max_speed},
      {"max_turn_rate", world.body.max_turn_rate},
      {"sensor_range", world.body.sensor_range},
      {"noise",
       {{"position", world.body.noise_pos_sigma},
        {"heading_deg", world.body.noise_heading_sigma / kDegToRad}}},
  };
  return obj;
}

Placement parse_placement(const json& obj, int n_agents) {
  check_keys(obj, "agents.placement",
             {"type", "center", "radius", "min_separation", "spacing",
              "columns", "positions", "ids", "headings"});
  Placement placement;
  const std::string type =
      obj.contains("type") ? obj["type"].get<std::string>() : "cluster";
  if (type == "cluster") {
    placement.type = Placement::Type::Cluster;
  } else if (type == "uniform") {
    placement.type = Placement::Type::Uniform;
  } else if (type == "grid") {
    placement.type = Placement::Type::Grid;
  } else if (type == "list") {
    placement.type = Placement::Type::List;
  } else {
    bad("agents.placement.type: unknown type `" + type + "`");
  }
  if (obj.contains("center")) placement.center = vec2(obj["center"], "placement.center");
  if (obj.contains("radius")) placement.radius = num(obj["radius"], "placement");
  if (obj.contains("min_separation")) {
    placement.min_separation = num(obj["min_separation"], "placement");
  }
  if (obj.contains("spacing")) placement.spacing = num(obj["spacing"], "placement");
  if (obj.contains("columns")) placement.columns = obj["columns"].get<int>();
  if (obj.contains("positions")) {
    for (const json& p : obj["positions"]) {
      placement.positions.push_back(vec2(p, "placement.positions"));
    }
  }
  if (obj.contains("ids")) {
    for (const json& i : obj["ids"]) {
      placement.ids.push_back(i.get<AgentId>());
    }
  }
  if (obj.contains("headings")) {
    const json& h = obj["headings"];
    if (h.is_string() && h.get<std::string>() == "random") {
      placement.headings = Placement::Headings::Random;
    } else if (h.is_number()) {
      placement.headings = Placement::Headings::Fixed;
      placement.fixed_heading_rad = h.get<double>() * kDegToRad;
    } else if (h.is_array()) {
      placement.headings = Placement::Headings::List;
      for (const json& a : h) {
        placement.heading_list.push_back(num(a, "headings") * kDegToRad);
      }
    } else {
      bad("agents.placement.headings: expected \"random\", degrees, or a list");
    }
  }

  if (placement.type == Placement::Type::List) {
    if (static_cast<int>(placement.positions.size()) != n_agents) {
      bad("agents.placement.positions: size must equal agents.count");
    }
    if (!placement.ids.empty()) {
      if (static_cast<int>(placement.ids.size()) != n_agents) {
        bad("agents.placement.ids: size must equal agents.count");
      }
      std::set<AgentId> seen(placement.ids.begin(), placement.ids.end());
      if (static_cast<int>(seen.size()) != n_agents ||
          *seen.begin() < 0) {
        bad("agents.placement.ids: ids must be unique and non-negative");
      }
    }
  } else if (!placement.positions.empty() || !placement.ids.empty()) {
    bad("agents.placement: positions/ids only valid with type \"list\"");
  }
  if (placement.headings == Placement::Headings::List &&
      static_cast<int>(placement.heading_list.size()) != n_agents) {
    bad("agents.placement.headings: list size must equal agents.count");
  }
  return placement;
}

json placement_to_json(const Placement& placement) {
  json obj;
  switch (placement.type) {
    case Placement::Type::Cluster: obj["type"] = "cluster"; break;
    case Placement::Type::Uniform: obj["type"] = "uniform"; break;
    case Placement::Type::Grid: obj["type"] = "grid"; break;
    case Placement::Type::List: obj["type"] = "list"; break;
  }
  obj["center"] = {placement.center.x, placement.center.y};
  obj["radius"] = placement.radius;
  obj["min_separation"] = placement.min_separation;
  obj["spacing"] = placement.spacing;
  obj["columns"] = placement.columns;
  if (placement.type == Placement::Type::List) {
    json pts = json::array();
    for (const Vec2& p : placement.positions) pts.push_back({p.x, p.y});
    obj["positions"] = pts;
    if (!placement.ids.empty()) obj["ids"] = placement.ids;
  }
  switch (placement.headings) {
    case Placement::Headings::Random:
      obj["headings"] = "random";
      break;
    case Placement::Headings::Fixed:
      obj["headings"] = placement.fixed_heading_rad / kDegToRad;
      break;
    case Placement::Headings::List: {
      json list = json::array();
      for (const double h : placement.heading_list) list.push_back(h / kDegToRad);
      obj["headings"] = list;
      break;
    }
  }
  return obj;
}

NetworkModel parse_network(const json& obj) {
  check_keys(obj, "network",
             {"comm_range", "loss", "relay", "ttl", "staleness_ticks",
              "loss_table"});
  NetworkModel model;
  if (obj.contains("comm_range")) model.comm_range = num(obj["comm_range"], "network");
  if (obj.contains("loss")) {
    const std::string loss = obj["loss"].get<std::string>();
    if (loss == "on") {
      model.loss_enabled = true;
    } else if (loss == "off") {
      model.loss_enabled = false;
    } else {
      bad("network.loss: expected \"on\" or \"off\"");
    }
  }
  if (obj.contains("relay")) model.relay = obj["relay"].get<bool>();
  if (obj.contains("ttl")) model.ttl = obj["ttl"].get<int>();
  if (obj.contains("staleness_ticks")) {
    model.staleness_ticks = obj["staleness_ticks"].get<int>();
  }
  if (obj.contains("loss_table")) {
    model.loss_table.clear();
    for (const json& r : obj["loss_table"]) {
      check_keys(r, "network.loss_table", {"n", "r0", "points"});
      LossRow row;
      row.n = require(r, "loss_table", "n").get<int>();
      if (r.contains("r0")) row.r0 = num(r["r0"], "loss_table");
      for (const json& p : require(r, "loss_table", "points")) {
        if (!p.is_array() || p.size() != 2) {
          bad("network.loss_table.points: expected [distance, probability]");
        }
        row.points.emplace_back(num(p[0], "points"), num(p[1], "points"));
      }
      model.loss_table.push_back(row);
    }
  }
  if (model.comm_range <= 0.0) bad("network.comm_range: must be > 0");
  if (model.ttl < 0) bad("network.ttl: must be >= 0");
  if (model.staleness_ticks < 0) bad("network.staleness_ticks: must be >= 0");
  for (const LossRow& row : model.loss_table) {
    double prev_d = -1.0, prev_p = 2.0;
    for (const auto& [d, p] : row.points) {
      if (p < 0.0 || p > 1.0) bad("network.loss_table: probability outside [0,1]");
      if (d <= prev_d) bad("network.loss_table: distances must increase");
      if (p > prev_p) bad("network.loss_table: success must be non-increasing");
      prev_d = d;
      prev_p = p;
    }
  }
  return model;
}

json network_to_json(const NetworkModel& model) {
  json obj;
  obj["comm_range"] = model.comm_range;
  obj["loss"] = model.loss_enabled ? "on" : "off";
  obj["relay"] = model.relay;
  obj["ttl"] = model.ttl;
  obj["staleness_ticks"] = model.staleness_ticks;
  json table = json::array();
  for (const LossRow& row : model.loss_table) {
    json points = json::array();
    for (const auto& [d, p] : row.points) points.push_back({d, p});
    table.push_back({{"n", row.n}, {"r0", row.r0}, {"points", points}});
  }
  obj["loss_table"] = table;
  return obj;
}

ScheduledEvent parse_event(const json& obj, int n_agents) {
  check_keys(obj, "run.events",
             {"tick", "type", "id", "heading_deg", "p0", "goal"});
  ScheduledEvent event;
  event.tick = require(obj, "run.events", "tick").get<Tick>();
  if (event.tick < 0) bad("run.events: tick must be >= 0");
  const std::string type = require(obj, "run.events", "type").get<std::string>();

  const auto agent_id = [&](bool required) -> std::optional<AgentId> {
    if (!obj.contains("id")) {
      if (required) bad("run.events: `" + type + "` needs an `id`");
      return std::nullopt;
    }
    const AgentId id = obj["id"].get<AgentId>();
    if (id < 0 || id >= n_agents) {
      bad("run.events: unknown agent id " + std::to_string(id));
    }
    return id;
  };

  if (type == "remove_agent") {
    event.action = RemoveAgentEvent{*agent_id(true)};
  } else if (type == "set_leader") {
    SetLeaderEvent e{*agent_id(true), std::nullopt};
    if (obj.contains("heading_deg")) {
      e.heading_rad = num(obj["heading_deg"], "events") * kDegToRad;
    }
    event.action = e;
  } else if (type == "degrade_agent") {
    event.action = DegradeAgentEvent{*agent_id(true)};
  } else if (type == "set_p0") {
    SetP0Event e{agent_id(false), num(require(obj, "events", "p0"), "events")};
    if (e.p0 <= 0.0) bad("run.events: p0 must be > 0");
    event.action = e;
  } else if (type == "set_goal") {
    event.action = SetGoalEvent{
        *agent_id(true), vec2(require(obj, "events", "goal"), "events.goal")};
  } else {
    bad("run.events: unknown type `" + type + "`");
  }
  return event;
}

json event_to_json(const ScheduledEvent& event) {
  json obj;
  obj["tick"] = event.tick;
  std::visit(
      [&obj](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, RemoveAgentEvent>) {
          obj["type"] = "remove_agent";
          obj["id"] = e.id;
        } else if constexpr (std::is_same_v<T, SetLeaderEvent>) {
          obj["type"] = "set_leader";
          obj["id"] = e.id;
          if (e.heading_rad) obj["heading_deg"] = *e.heading_rad / kDegToRad;
        } else if constexpr (std::is_same_v<T, DegradeAgentEvent>) {
          obj["type"] = "degrade_agent";
          obj["id"] = e.id;
        } else if constexpr (std::is_same_v<T, SetP0Event>) {
          obj["type"] = "set_p0";
          if (e.id) obj["id"] = *e.id;
          obj["p0"] = e.p0;
        } else if constexpr (std::is_same_v<T, SetGoalEvent>) {
          obj["type"] = "set_goal";
          obj["id"] = e.id;
          obj["goal"] = {e.goal.x, e.goal.y};
        }
      },
      event.action);
  return obj;
}

RunSettings parse_run(const json& obj) {
  check_keys(obj, "run",
             {"max_ticks", "tick_duration", "termination",
              "consensus_spread_rad", "consensus_hold_ticks",
              "reach_radius_factor", "parallel", "verbose_net", "events"});
  RunSettings run;
  if (obj.contains("max_ticks")) run.max_ticks = obj["max_ticks"].get<Tick>();
  if (obj.contains("tick_duration")) {
    run.tick_duration = num(obj["tick_duration"], "run");
  }
  if (obj.contains("termination")) {
    const std::string t = obj["termination"].get<std::string>();
    if (t == "max_ticks") {
      run.termination = TerminationRule::MaxTicks;
    } else if (t == "consensus") {
      run.termination = TerminationRule::Consensus;
    } else if (t == "all_reached_target") {
      run.termination = TerminationRule::AllReachedTarget;
    } else {
      bad("run.termination: unknown rule `" + t + "`");
    }
  }
  if (obj.contains("consensus_spread_rad")) {
    run.consensus_spread_rad = num(obj["consensus_spread_rad"], "run");
  }
  if (obj.contains("consensus_hold_ticks")) {
    run.consensus_hold_ticks = obj["consensus_hold_ticks"].get<int>();
  }
  if (obj.contains("reach_radius_factor")) {
    run.reach_radius_factor = num(obj["reach_radius_factor"], "run");
  }
  if (obj.contains("parallel")) run.parallel = obj["parallel"].get<bool>();
  if (obj.contains("verbose_net")) run.verbose_net = obj["verbose_net"].get<bool>();
  if (run.max_ticks < 1) bad("run.max_ticks: must be >= 1");
  if (run.tick_duration <= 0.0) bad("run.tick_duration: must be > 0");
  return run;
}

json run_to_json(const RunSettings& run, const std::vector<ScheduledEvent>& events) {
  json obj;
  obj["max_ticks"] = run.max_ticks;
  obj["tick_duration"] = run.tick_duration;
  switch (run.termination) {
    case TerminationRule::MaxTicks: obj["termination"] = "max_ticks"; break;
    case TerminationRule::Consensus: obj["termination"] = "consensus"; break;
    case TerminationRule::AllReachedTarget:
      obj["termination"] = "all_reached_target";
      break;
  }
  obj["consensus_spread_rad"] = run.consensus_spread_rad;
  obj["consensus_hold_ticks"] = run.consensus_hold_ticks;
  obj["reach_radius_factor"] = run.reach_radius_factor;
  obj["parallel"] = run.parallel;
  obj["verbose_net"] = run.verbose_net;
  json evts = json::array();
  for (const ScheduledEvent& e : events) evts.push_back(event_to_json(e));
  obj["events"] = evts;
  return obj;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) bad("scenario: not valid JSON");
  check_keys(root, "scenario", {"seed", "world", "agents", "network", "run"});

  ScenarioConfig config;
  const json& seed = require(root, "scenario", "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    bad("scenario.seed: expected an integer");
  }
  config.seed = seed.get<std::uint64_t>();

  if (root.contains("run")) config.run = parse_run(root["run"]);

  const json& agents = require(root, "scenario", "agents");
  check_keys(agents, "agents", {"count", "placement", "behavior", "overrides"});
  config.n_agents = require(agents, "agents", "count").get<int>();
  if (config.n_agents < 1) bad("agents.count: must be >= 1");
  config.behavior = parse_behavior(require(agents, "agents", "behavior"),
                                   "agents.behavior", config.run.tick_duration);
  if (agents.contains("placement")) {
    config.placement = parse_placement(agents["placement"], config.n_agents);
  }
  if (agents.contains("overrides")) {
    std::set<AgentId> seen;
    for (const json& o : agents["overrides"]) {
      check_keys(o, "agents.overrides", {"id", "behavior", "anchored"});
      AgentOverride ov;
      ov.id = require(o, "agents.overrides", "id").get<AgentId>();
      if (ov.id < 0 || ov.id >= config.n_agents) {
        bad("agents.overrides: unknown agent id " + std::to_string(ov.id));
      }
      if (!seen.insert(ov.id).second) {
        bad("agents.overrides: duplicate id " + std::to_string(ov.id));
      }
      if (o.contains("behavior")) {
        ov.behavior = parse_behavior(o["behavior"], "agents.overrides.behavior",
                                     config.run.tick_duration);
      }
      if (o.contains("anchored")) ov.anchored = o["anchored"].get<bool>();
      config.overrides.push_back(std::move(ov));
    }
  }

  if (root.contains("world")) config.world = parse_world(root["world"]);
  if (root.contains("network")) config.network = parse_network(root["network"]);
  if (root.contains("run") && root["run"].contains("events")) {
    for (const json& e : root["run"]["events"]) {
      config.events.push_back(parse_event(e, config.n_agents));
    }
    std::stable_sort(config.events.begin(), config.events.end(),
                     [](const ScheduledEvent& a, const ScheduledEvent& b) {
                       return a.tick < b.tick;
                     });
  }

  // Placement has to stay inside the arena.
  const auto inside = [&](Vec2 p) { return config.world.bounds.contains(p); };
  if (config.placement.type == Placement::Type::List) {
    for (const Vec2& p : config.placement.positions) {
      if (!inside(p)) bad("agents.placement.positions: outside world bounds");
    }
  } else if (config.placement.type == Placement::Type::Cluster) {
    if (!inside(config.placement.center)) {
      bad("agents.placement.center: outside world bounds");
    }
  }
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open scenario file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string save_scenario(const ScenarioConfig& config) {
  json root;
  root["seed"] = config.seed;
  root["world"] = world_to_json(config.world);
  json agents;
  agents["count"] = config.n_agents;
  agents["placement"] = placement_to_json(config.placement);
  agents["behavior"] = behavior_to_json(config.behavior);
  json overrides = json::array();
  for (const AgentOverride& ov : config.overrides) {
    json o;
    o["id"] = ov.id;
    if (ov.behavior) o["behavior"] = behavior_to_json(*ov.behavior);
    o["anchored"] = ov.anchored;
    overrides.push_back(o);
  }
  agents["overrides"] = overrides;
  root["agents"] = agents;
  root["network"] = network_to_json(config.network);
  root["run"] = run_to_json(config.run, config.events);
  return root.dump(2) + "\n";
}

std::string apply_override(const std::string& json_text, const std::string& key,
                           const std::string& value) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) bad("scenario: not valid JSON");

  std::string path = key;
  if (key == "n_agents") path = "agents.count";
  if (key == "max_ticks") path = "run.max_ticks";

  json parsed_value = json::parse(value, nullptr, /*allow_exceptions=*/false);
  if (parsed_value.is_discarded()) parsed_value = value;  // plain string

  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string part = path.substr(start, dot - start);
    if (part.empty()) bad("override: empty path segment in `" + key + "`");
    if (!node->is_object()) bad("override: `" + key + "` path not an object");
    if (dot == std::string::npos) {
      (*node)[part] = parsed_value;
      break;
    }
    json& child = (*node)[part];
    if (child.is_null()) child = json::object();  // absent optional section
    node = &child;
    start = dot + 1;
  }
  return root.dump();
}

std::string config_hash(const ScenarioConfig& config) {
  const std::string canonical = save_scenario(config);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : canonical) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace swarmkit
