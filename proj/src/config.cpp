#include "sphereabout/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sphereabout/errors.hpp"

namespace sphereabout {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Parser {
  std::map<std::string, std::string> kv;
  const std::string& origin;

  [[noreturn]] void fail(const std::string& key, const std::string& expected,
                         const std::string& got) const {
    throw ConfigError(origin + ": key '" + key + "' expects " + expected +
                      ", got '" + got + "'");
  }

  bool take(const std::string& key, std::string* out) {
    const auto it = kv.find(key);
    if (it == kv.end()) return false;
    *out = it->second;
    kv.erase(it);
    return true;
  }

  void number(const std::string& key, double* out) {
    std::string v;
    if (!take(key, &v)) return;
    try {
      std::size_t pos = 0;
      *out = std::stod(v, &pos);
      if (pos != v.size()) fail(key, "a number", v);
    } catch (const std::logic_error&) {
      fail(key, "a number", v);
    }
  }

  void integer(const std::string& key, int* out) {
    std::string v;
    if (!take(key, &v)) return;
    try {
      std::size_t pos = 0;
      *out = std::stoi(v, &pos);
      if (pos != v.size()) fail(key, "an integer", v);
    } catch (const std::logic_error&) {
      fail(key, "an integer", v);
    }
  }

  void uint64(const std::string& key, std::uint64_t* out) {
    std::string v;
    if (!take(key, &v)) return;
    try {
      std::size_t pos = 0;
      *out = std::stoull(v, &pos);
      if (pos != v.size()) fail(key, "an unsigned integer", v);
    } catch (const std::logic_error&) {
      fail(key, "an unsigned integer", v);
    }
  }

  void text(const std::string& key, std::string* out) { take(key, out); }

  void number_list(const std::string& key, std::vector<double>* out) {
    std::string v;
    if (!take(key, &v)) return;
    std::vector<double> values;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      try {
        std::size_t pos = 0;
        values.push_back(std::stod(item, &pos));
        if (pos != item.size()) fail(key, "a comma-separated number list", v);
      } catch (const std::logic_error&) {
        fail(key, "a comma-separated number list", v);
      }
    }
    if (values.empty()) fail(key, "a comma-separated number list", v);
    *out = std::move(values);
  }
};

}  // namespace

Circulation AppConfig::circulation_value() const {
  if (circulation == "counterclockwise" || circulation == "ccw")
    return Circulation::Counterclockwise;
  if (circulation == "clockwise" || circulation == "cw")
    return Circulation::Clockwise;
  throw ConfigError("key 'circulation' expects counterclockwise|clockwise, got '" +
                    circulation + "'");
}

ClearanceSpec AppConfig::clearance() const {
  ClearanceSpec spec;
  spec.rotor_diameter_m = rotor_diameter_m;
  spec.cruise_speed_mps = cruise_speed_mps;
  spec.lateral_clearance_m = lateral_clearance_m;
  spec.vertical_clearance_m = vertical_clearance_m;
  spec.tube_inner_radius_m = tube_inner_radius_m;
  spec.tube_buffer_m = tube_buffer_m;
  return spec;
}

ConflictPolicy AppConfig::policy() const {
  ConflictPolicy p;
  p.d_min_m = d_min_m;
  p.uav_buffer_radius_m = uav_buffer_radius_m;
  p.max_spacing_m = max_spacing_m;
  p.shared_node_mask_radius_m = shared_node_mask_radius_m;
  if (shared_node_rule == "mask_near_shared_node") {
    p.shared_node_rule = SharedNodeRule::MaskNearSharedNode;
  } else if (shared_node_rule == "strict") {
    p.shared_node_rule = SharedNodeRule::Strict;
  } else {
    throw ConfigError(
        "key 'shared_node_rule' expects mask_near_shared_node|strict, got '" +
        shared_node_rule + "'");
  }
  if (conflict_metric == "synchronized") {
    p.metric = ConflictMetric::Synchronized;
  } else if (conflict_metric == "fraction_synchronized") {
    p.metric = ConflictMetric::FractionSynchronized;
  } else if (conflict_metric == "free_min") {
    p.metric = ConflictMetric::FreeMin;
  } else {
    throw ConfigError(
        "key 'conflict_metric' expects "
        "synchronized|fraction_synchronized|free_min, got '" +
        conflict_metric + "'");
  }
  return p;
}

ExperimentConfig AppConfig::experiment() const {
  ExperimentConfig e;
  e.radius_m = radius_m;
  e.d_min_m = d_min_m;
  e.equatorial_offset_deg = equatorial_offset_deg;
  e.polar_offset_deg = polar_offset_deg;
  e.circulation = circulation_value();
  e.policy = policy();
  e.n_uavs = mc_n_uavs;
  return e;
}

McConfig AppConfig::mc() const {
  McConfig m;
  m.n_experiments = n_experiments;
  m.seed = seed;
  m.velocity_min_mps = velocity_min_mps;
  m.velocity_max_mps = velocity_max_mps;
  m.dt_s = dt_s;
  m.reference_speed_mps = reference_speed_mps;
  m.target_set = mc_target_value();
  return m;
}

McTargetSet AppConfig::mc_target_value() const {
  if (mc_target_set == "collision_scenarios") return McTargetSet::CollisionScenarios;
  if (mc_target_set == "all_scenarios") return McTargetSet::AllScenarios;
  throw ConfigError(
      "key 'mc_target_set' expects collision_scenarios|all_scenarios, got '" +
      mc_target_set + "'");
}

TravelTimeSource AppConfig::travel_time_source_value() const {
  if (travel_time_source == "all_paths") return TravelTimeSource::AllCandidatePaths;
  if (travel_time_source == "sweep_served") return TravelTimeSource::SweepServed;
  throw ConfigError(
      "key 'travel_time_source' expects all_paths|sweep_served, got '" +
      travel_time_source + "'");
}

std::map<std::string, std::string> AppConfig::to_key_values() const {
  std::map<std::string, std::string> kv;
  kv["radius_m"] = fmt_double(radius_m);
  kv["equatorial_offset_deg"] = fmt_double(equatorial_offset_deg);
  kv["polar_offset_deg"] = fmt_double(polar_offset_deg);
  kv["circulation"] = circulation;
  kv["rotor_diameter_m"] = fmt_double(rotor_diameter_m);
  kv["cruise_speed_mps"] = fmt_double(cruise_speed_mps);
  kv["lateral_clearance_m"] = fmt_double(lateral_clearance_m);
  kv["vertical_clearance_m"] = fmt_double(vertical_clearance_m);
  kv["tube_inner_radius_m"] = fmt_double(tube_inner_radius_m);
  kv["tube_buffer_m"] = fmt_double(tube_buffer_m);
  kv["d_min_m"] = fmt_double(d_min_m);
  kv["uav_buffer_radius_m"] = fmt_double(uav_buffer_radius_m);
  kv["max_spacing_m"] = fmt_double(max_spacing_m);
  kv["shared_node_mask_radius_m"] = fmt_double(shared_node_mask_radius_m);
  kv["shared_node_rule"] = shared_node_rule;
  kv["conflict_metric"] = conflict_metric;
  kv["n_min_uavs"] = std::to_string(n_min_uavs);
  kv["n_max_uavs"] = std::to_string(n_max_uavs);
  kv["mc_n_uavs"] = std::to_string(mc_n_uavs);
  kv["n_experiments"] = std::to_string(n_experiments);
  kv["seed"] = std::to_string(seed);
  kv["velocity_min_mps"] = fmt_double(velocity_min_mps);
  kv["velocity_max_mps"] = fmt_double(velocity_max_mps);
  kv["dt_s"] = fmt_double(dt_s);
  kv["reference_speed_mps"] = fmt_double(reference_speed_mps);
  kv["mc_target_set"] = mc_target_set;
  std::string vels;
  for (std::size_t i = 0; i < travel_time_velocities_mps.size(); ++i) {
    if (i) vels += ",";
    vels += fmt_double(travel_time_velocities_mps[i]);
  }
  kv["travel_time_velocities_mps"] = vels;
  kv["travel_time_source"] = travel_time_source;
  return kv;
}

AppConfig parse_config_text(const std::string& text, const std::string& origin) {
  Parser parser{{}, origin};

  if (!text.empty() && trim(text).front() == '{') {
    // Run manifest: reuse its resolved_config block.
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(origin + ": invalid JSON manifest: " + e.what());
    }
    if (!doc.contains("resolved_config") || !doc["resolved_config"].is_object()) {
      throw ConfigError(origin + ": JSON config must carry a 'resolved_config' object");
    }
    for (const auto& [key, value] : doc["resolved_config"].items()) {
      parser.kv[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  } else {
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(origin + ":" + std::to_string(line_no) +
                          ": expected 'key = value', got '" + line + "'");
      }
      parser.kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
  }

  if (!parser.kv.count("radius_m")) {
    throw ConfigError(origin + ": required key 'radius_m' is missing");
  }

  AppConfig cfg;
  const bool has_lateral = parser.kv.count("lateral_clearance_m") > 0;
  const bool has_vertical = parser.kv.count("vertical_clearance_m") > 0;
  const bool has_mask = parser.kv.count("shared_node_mask_radius_m") > 0;

  parser.number("radius_m", &cfg.radius_m);
  parser.number("equatorial_offset_deg", &cfg.equatorial_offset_deg);
  parser.number("polar_offset_deg", &cfg.polar_offset_deg);
  parser.text("circulation", &cfg.circulation);
  parser.number("rotor_diameter_m", &cfg.rotor_diameter_m);
  parser.number("cruise_speed_mps", &cfg.cruise_speed_mps);
  parser.number("lateral_clearance_m", &cfg.lateral_clearance_m);
  parser.number("vertical_clearance_m", &cfg.vertical_clearance_m);
  parser.number("tube_inner_radius_m", &cfg.tube_inner_radius_m);
  parser.number("tube_buffer_m", &cfg.tube_buffer_m);
  parser.number("d_min_m", &cfg.d_min_m);
  parser.number("uav_buffer_radius_m", &cfg.uav_buffer_radius_m);
  parser.number("max_spacing_m", &cfg.max_spacing_m);
  parser.number("shared_node_mask_radius_m", &cfg.shared_node_mask_radius_m);
  parser.text("shared_node_rule", &cfg.shared_node_rule);
  parser.text("conflict_metric", &cfg.conflict_metric);
  parser.integer("n_min_uavs", &cfg.n_min_uavs);
  parser.integer("n_max_uavs", &cfg.n_max_uavs);
  parser.integer("mc_n_uavs", &cfg.mc_n_uavs);
  parser.integer("n_experiments", &cfg.n_experiments);
  parser.uint64("seed", &cfg.seed);
  parser.number("velocity_min_mps", &cfg.velocity_min_mps);
  parser.number("velocity_max_mps", &cfg.velocity_max_mps);
  parser.number("dt_s", &cfg.dt_s);
  parser.number("reference_speed_mps", &cfg.reference_speed_mps);
  parser.text("mc_target_set", &cfg.mc_target_set);
  parser.number_list("travel_time_velocities_mps", &cfg.travel_time_velocities_mps);
  parser.text("travel_time_source", &cfg.travel_time_source);

  if (!parser.kv.empty()) {
    throw ConfigError(origin + ": unknown key '" + parser.kv.begin()->first + "'");
  }

  if (!has_lateral) cfg.lateral_clearance_m = 4.0 * cfg.rotor_diameter_m;
  if (!has_vertical) cfg.vertical_clearance_m = 1.5 * cfg.rotor_diameter_m;
  if (!has_mask) cfg.shared_node_mask_radius_m = 2.0 * cfg.tube_inner_radius_m;

  // Validate enum-like values eagerly so errors surface at load time.
  cfg.circulation_value();
  cfg.policy();
  cfg.mc_target_value();
  cfg.travel_time_source_value();
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace sphereabout
