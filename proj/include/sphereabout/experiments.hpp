#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sphereabout/assignment.hpp"

namespace sphereabout {

struct ExperimentConfig {
  double radius_m = 13.0;
  double d_min_m = 3.0;
  double equatorial_offset_deg = 22.5;
  double polar_offset_deg = 22.5;
  Circulation circulation = Circulation::Counterclockwise;
  ConflictPolicy policy;  // policy.d_min_m kept equal to d_min_m
  int n_uavs = 6;         // demand size for the Monte Carlo target set

  SphereLayout make_layout() const {
    return build_layout(radius_m, equatorial_offset_deg, polar_offset_deg,
                        circulation);
  }
  ConflictPolicy make_policy() const {
    ConflictPolicy p = policy;
    p.d_min_m = d_min_m;
    return p;
  }
};

struct MetricsRow {
  int n_uavs = 0;
  long long scenarios = 0;
  long long collisions = 0;
  long long no_conflict = 0;
  long long resolved = 0;
  double avg_flow = 0.0;
  double path_load[3] = {0.0, 0.0, 0.0};
};

/// Unordered pair of (entry, exit) flow patterns, normalized.
struct FlowPairKey {
  FlowDirection entry_a, exit_a, entry_b, exit_b;
  auto tuple() const {
    return std::make_tuple(flow_index(entry_a), flow_index(exit_a),
                           flow_index(entry_b), flow_index(exit_b));
  }
  bool operator<(const FlowPairKey& o) const { return tuple() < o.tuple(); }
  bool operator==(const FlowPairKey& o) const { return tuple() == o.tuple(); }
};

FlowPairKey make_flow_pair_key(const Demand& a, const Demand& b);
std::string flow_pair_name(const FlowPairKey& key);

/// All C(6, N) entry subsets times the 5 feasible exits per entry, canonical
/// order (entries sorted, exits as an odometer over direction order). Throws
/// InputError for N outside [2, 6].
std::vector<Scenario> enumerate_scenarios(int n_uavs);

/// Demand pairs still in conflict under the assignment's flight plan (served
/// UAVs on their chosen kind, unserved on their direct path). Only pairs with
/// at least one unserved member qualify; these are the conflicts the timing
/// studies try to break.
std::vector<std::pair<int, int>> residual_conflict_pairs(
    const Scenario& scenario, const Assignment& assignment,
    const ConflictGraph& graph);

struct SweepResult {
  MetricsRow row;
  std::vector<std::size_t> collision_scenarios;       // indices into the sweep
  std::map<FlowPairKey, long long> residual_counts;   // over collision scenarios
};

/// Classify and solve every scenario for one N. Integer tallies only, so the
/// result is identical for any thread count.
SweepResult run_sweep(const ConflictGraph& graph, int n_uavs, int threads = 1);

/// MetricsRow per N in [n_min, n_max].
std::vector<MetricsRow> run_table(const ExperimentConfig& config, int n_min = 2,
                                  int n_max = 6, int threads = 1);

/// Residual conflict patterns across collision scenarios for all N in range,
/// ranked by descending frequency (key order breaks ties).
std::vector<std::pair<FlowPairKey, long long>> top_conflicting_flows(
    const ExperimentConfig& config, int n_min = 2, int n_max = 6,
    int threads = 1);

}  // namespace sphereabout
