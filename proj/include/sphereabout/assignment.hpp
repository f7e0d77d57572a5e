#pragma once

#include <map>
#include <set>
#include <vector>

#include "sphereabout/conflict.hpp"

namespace sphereabout {

/// One demand: a UAV at an entry corridor with a chosen feasible exit.
struct Demand {
  int uav_id = 0;
  FlowDirection entry = FlowDirection::XPos;
  FlowDirection exit = FlowDirection::YPos;
};

/// A demand instance; at most one UAV per entry corridor.
struct Scenario {
  std::vector<Demand> demands;
};

struct Assignment {
  std::map<int, PathKind> served;  // uav_id -> chosen path kind
  std::set<int> unserved;
  int objective = 0;  // served count
  double total_length_m = 0.0;
};

enum class ScenarioClass { NoConflict, Resolved, Collision };
std::string scenario_class_name(ScenarioClass c);

/// Exact maximum-throughput conflict-free assignment: maximize the weighted
/// served count, then minimize total served length, then the lexicographically
/// smallest kind choice by uav order. Depth-first enumeration with conflict
/// and count pruning; deterministic.
Assignment solve_max_flow(const Scenario& scenario, const ConflictGraph& graph,
                          const std::vector<double>* weights = nullptr);

/// Independent cross-check: literal subset enumeration, K = N down to 1, all
/// K-subsets and kind choices in canonical order, first conflict-free set
/// wins. Served count must agree with solve_max_flow.
Assignment assign_paths_oracle(const Scenario& scenario,
                               const ConflictGraph& graph);

/// no_conflict if every UAV on its direct path is already conflict-free;
/// resolved if the optimum serves all demands; collision otherwise.
ScenarioClass classify_scenario(const Scenario& scenario,
                                const ConflictGraph& graph);

/// Candidate path indices (direct, short arc, long arc) for each demand;
/// throws InputError for a demand outside A or a duplicated entry.
std::vector<std::array<int, 3>> demand_path_indices(const Scenario& scenario,
                                                    const ConflictGraph& graph);

}  // namespace sphereabout
