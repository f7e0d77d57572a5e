#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sphereabout/experiments.hpp"

namespace sphereabout {

enum class McTargetSet : std::uint8_t { CollisionScenarios, AllScenarios };

struct McConfig {
  int n_experiments = 3000;
  std::uint64_t seed = 0;
  double velocity_min_mps = 1.0;
  double velocity_max_mps = 5.0;
  double dt_s = 0.02;
  double reference_speed_mps = 5.0;
  McTargetSet target_set = McTargetSet::CollisionScenarios;
};

struct ConflictHistogram {
  std::map<int, long long> counts;  // conflicting pairs per experiment -> frequency
  long long n_experiments = 0;
  bool empty_target = false;

  double mean() const;
  double zero_fraction() const;
};

/// Target scenarios with their flight plans resolved once: served UAVs on
/// their assigned kind, unserved UAVs on their direct path.
struct McContext {
  SphereLayout layout;
  ConflictGraph graph;
  std::vector<std::vector<int>> plans;  // per target scenario: path index per UAV
  std::vector<PathTraverser> traversers;  // one per candidate path
};

McContext build_mc_context(const ExperimentConfig& experiment,
                           McTargetSet target_set, int threads = 1);

struct FixedLagResult {
  ConflictHistogram histogram;  // after lagging
  ConflictHistogram baseline;   // same draws, no lag
};

/// Per experiment: draw a target scenario, find its synchronized conflicts at
/// the reference speed, delay one UAV of each conflicting pair by the pair's
/// exit-arrival difference (floor d_min/v when zero), and count what remains.
FixedLagResult fixed_lag_mc(const McConfig& config, const McContext& context,
                            int threads = 1);
FixedLagResult fixed_lag_mc(const McConfig& config,
                            const ExperimentConfig& experiment, int threads = 1);

/// Per experiment: draw a target scenario and per-UAV speeds uniform in the
/// velocity range, all entries at t = 0; count synchronized conflicts.
ConflictHistogram random_velocity_mc(const McConfig& config,
                                     const McContext& context, int threads = 1);
ConflictHistogram random_velocity_mc(const McConfig& config,
                                     const ExperimentConfig& experiment,
                                     int threads = 1);

enum class TravelTimeSource : std::uint8_t { AllCandidatePaths, SweepServed };

struct TravelTimeSummary {
  double radius_m = 0.0;
  double velocity_mps = 0.0;
  long long n_paths = 0;
  double min_s = 0.0;
  double mean_s = 0.0;
  double max_s = 0.0;
  std::map<int, long long> histogram;  // 5 s bins: bin -> count
};

/// Travel time = path length / speed. Source picks the path population: the
/// 90 candidates, or the served paths across the N = [n_min, n_max] sweep.
std::vector<TravelTimeSummary> travel_time_stats(
    const ExperimentConfig& experiment, const std::vector<double>& velocities,
    TravelTimeSource source, int n_min = 2, int n_max = 6, int threads = 1);

}  // namespace sphereabout
