#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sphereabout/experiments.hpp"
#include "sphereabout/sensitivity.hpp"

namespace sphereabout {

/// Fully resolved tool configuration. Keys carry explicit units (_m, _mps,
/// _deg) to keep unit errors out of the config file.
struct AppConfig {
  // layout
  double radius_m = 13.0;
  double equatorial_offset_deg = 22.5;
  double polar_offset_deg = 22.5;
  std::string circulation = "counterclockwise";

  // clearances
  double rotor_diameter_m = 1.375;
  double cruise_speed_mps = 5.0;
  double lateral_clearance_m = 4.0 * 1.375;
  double vertical_clearance_m = 1.5 * 1.375;
  double tube_inner_radius_m = 2.0;
  double tube_buffer_m = 1.0;

  // conflict policy
  double d_min_m = 3.0;
  double uav_buffer_radius_m = 1.5;
  double max_spacing_m = 0.1;
  double shared_node_mask_radius_m = 4.0;
  std::string shared_node_rule = "mask_near_shared_node";
  std::string conflict_metric = "synchronized";

  // sweep
  int n_min_uavs = 2;
  int n_max_uavs = 6;

  // monte carlo
  int mc_n_uavs = 6;
  int n_experiments = 3000;
  std::uint64_t seed = 12345;
  double velocity_min_mps = 1.0;
  double velocity_max_mps = 5.0;
  double dt_s = 0.02;
  double reference_speed_mps = 5.0;
  std::string mc_target_set = "collision_scenarios";

  // travel-time grid
  std::vector<double> travel_time_velocities_mps = {1, 2, 3, 4, 5};
  std::string travel_time_source = "all_paths";

  Circulation circulation_value() const;
  ClearanceSpec clearance() const;
  ConflictPolicy policy() const;
  ExperimentConfig experiment() const;
  McConfig mc() const;
  McTargetSet mc_target_value() const;
  TravelTimeSource travel_time_source_value() const;

  /// Canonical key -> value form (round-trips through parse_config_text).
  std::map<std::string, std::string> to_key_values() const;
};

/// Parses a key = value config file ('#' comments). A JSON run manifest with
/// a "resolved_config" object is accepted too, so outputs can be reproduced
/// straight from their manifests. Unknown keys, missing radius_m, or type
/// mismatches raise ConfigError naming the file and key.
AppConfig load_config(const std::string& path);

AppConfig parse_config_text(const std::string& text, const std::string& origin);

}  // namespace sphereabout
