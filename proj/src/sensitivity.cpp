#include "sphereabout/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sphereabout/errors.hpp"
#include "sphereabout/rng.hpp"

namespace sphereabout {

double ConflictHistogram::mean() const {
  if (n_experiments == 0) return 0.0;
  long long sum = 0;
  for (const auto& [count, freq] : counts) sum += count * freq;
  return static_cast<double>(sum) / static_cast<double>(n_experiments);
}

double ConflictHistogram::zero_fraction() const {
  if (n_experiments == 0) return 0.0;
  const auto it = counts.find(0);
  const long long zeros = it == counts.end() ? 0 : it->second;
  return static_cast<double>(zeros) / static_cast<double>(n_experiments);
}

McContext build_mc_context(const ExperimentConfig& experiment,
                           McTargetSet target_set, int threads) {
  McContext ctx;
  ctx.layout = experiment.make_layout();
  ctx.graph = build_conflict_graph(ctx.layout, experiment.make_policy(), threads);

  const auto scenarios = enumerate_scenarios(experiment.n_uavs);
  std::vector<std::size_t> target_indices;
  if (target_set == McTargetSet::AllScenarios) {
    target_indices.resize(scenarios.size());
    for (std::size_t i = 0; i < scenarios.size(); ++i) target_indices[i] = i;
  } else {
    target_indices = run_sweep(ctx.graph, experiment.n_uavs, threads).collision_scenarios;
  }

  ctx.plans.reserve(target_indices.size());
  for (std::size_t idx : target_indices) {
    const Scenario& s = scenarios[idx];
    const auto candidates = demand_path_indices(s, ctx.graph);
    const Assignment best = solve_max_flow(s, ctx.graph);
    std::vector<int> plan(s.demands.size());
    for (std::size_t i = 0; i < s.demands.size(); ++i) {
      const auto it = best.served.find(s.demands[i].uav_id);
      // Unserved UAVs fly their direct path; these are the residual conflicts
      // the timing studies try to break.
      plan[i] = it != best.served.end() ? candidates[i][kind_index(it->second)]
                                        : candidates[i][0];
    }
    ctx.plans.push_back(std::move(plan));
  }

  ctx.traversers.reserve(ctx.graph.sampled.size());
  for (const SampledPath& sp : ctx.graph.sampled) {
    ctx.traversers.emplace_back(sp);
  }
  return ctx;
}

namespace {

/// Synchronized conflict pairs for one flight plan. The geometric conflict
/// graph is a valid prefilter: the synchronized minimum can never undercut
/// the polyline minimum under the same masking.
std::vector<std::pair<int, int>> plan_conflicts(
    const McContext& ctx, const std::vector<int>& plan,
    const std::vector<MotionProfile>& profiles, const ConflictPolicy& policy,
    double dt_s) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(plan.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (ctx.graph.free_min_dist(plan[a], plan[b]) > policy.threshold_m()) continue;
      if (temporal_conflict_pair(profiles[a], profiles[b], policy, dt_s)) {
        out.push_back({a, b});
      }
    }
  }
  return out;
}

template <typename PerExperiment>
void run_experiments(int n_experiments, int threads, PerExperiment&& body) {
  const int n_threads = std::max(threads, 1);
  if (n_threads == 1) {
    for (int e = 0; e < n_experiments; ++e) body(e, 0);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (n_experiments + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    const int begin = std::min(t * chunk, n_experiments);
    const int end = std::min(begin + chunk, n_experiments);
    if (begin < end) {
      pool.emplace_back([&body, begin, end, t]() {
        for (int e = begin; e < end; ++e) body(e, t);
      });
    }
  }
  for (auto& th : pool) th.join();
}

void merge_counts(std::map<int, long long>& into,
                  const std::map<int, long long>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

}  // namespace

FixedLagResult fixed_lag_mc(const McConfig& config, const McContext& context,
                            int threads) {
  if (config.n_experiments <= 0) throw ConfigError("n_experiments must be positive");
  FixedLagResult result;
  result.histogram.n_experiments = config.n_experiments;
  result.baseline.n_experiments = config.n_experiments;
  if (context.plans.empty()) {
    result.histogram.empty_target = true;
    result.baseline.empty_target = true;
    return result;
  }

  const ConflictPolicy policy = context.graph.policy;
  const int n_threads = std::max(threads, 1);
  std::vector<std::map<int, long long>> lagged(n_threads), base(n_threads);

  run_experiments(config.n_experiments, threads, [&](int e, int worker) {
    std::mt19937_64 rng(derive_subseed(config.seed, static_cast<std::uint64_t>(e)));
    const auto& plan =
        context.plans[uniform_index(rng, context.plans.size())];

    std::vector<MotionProfile> profiles(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
      profiles[i] = {&context.traversers[plan[i]], config.reference_speed_mps, 0.0};
    }
    const auto baseline_pairs =
        plan_conflicts(context, plan, profiles, policy, config.dt_s);
    ++base[worker][static_cast<int>(baseline_pairs.size())];

    for (const auto& [a, b] : baseline_pairs) {
      const double ta = profiles[a].exit_time_s();
      const double tb = profiles[b].exit_time_s();
      double lag = std::abs(ta - tb);
      int receiver;
      if (ta > tb) {
        receiver = a;
      } else if (tb > ta) {
        receiver = b;
      } else {
        // Symmetric pair: the exact-lag rule degenerates to a no-op, so fall
        // back to a minimum lag of one separation distance at speed.
        lag = policy.threshold_m() / config.reference_speed_mps;
        receiver = coin_flip(rng) ? a : b;
      }
      profiles[receiver].entry_time_s += lag;
    }

    const auto residual = plan_conflicts(context, plan, profiles, policy, config.dt_s);
    ++lagged[worker][static_cast<int>(residual.size())];
  });

  for (int t = 0; t < n_threads; ++t) {
    merge_counts(result.histogram.counts, lagged[t]);
    merge_counts(result.baseline.counts, base[t]);
  }
  return result;
}

FixedLagResult fixed_lag_mc(const McConfig& config,
                            const ExperimentConfig& experiment, int threads) {
  return fixed_lag_mc(config, build_mc_context(experiment, config.target_set, threads),
                      threads);
}

ConflictHistogram random_velocity_mc(const McConfig& config,
                                     const McContext& context, int threads) {
  if (config.n_experiments <= 0) throw ConfigError("n_experiments must be positive");
  if (!(config.velocity_min_mps > 0.0 &&
        config.velocity_max_mps >= config.velocity_min_mps)) {
    throw ConfigError("velocity range must be positive and ordered");
  }
  ConflictHistogram hist;
  hist.n_experiments = config.n_experiments;
  if (context.plans.empty()) {
    hist.empty_target = true;
    return hist;
  }

  const ConflictPolicy policy = context.graph.policy;
  const int n_threads = std::max(threads, 1);
  std::vector<std::map<int, long long>> partial(n_threads);

  run_experiments(config.n_experiments, threads, [&](int e, int worker) {
    std::mt19937_64 rng(derive_subseed(config.seed, static_cast<std::uint64_t>(e)));
    const auto& plan =
        context.plans[uniform_index(rng, context.plans.size())];

    std::vector<MotionProfile> profiles(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
      const double v =
          uniform_range(rng, config.velocity_min_mps, config.velocity_max_mps);
      profiles[i] = {&context.traversers[plan[i]], v, 0.0};
    }
    const auto pairs = plan_conflicts(context, plan, profiles, policy, config.dt_s);
    ++partial[worker][static_cast<int>(pairs.size())];
  });

  for (int t = 0; t < n_threads; ++t) merge_counts(hist.counts, partial[t]);
  return hist;
}

ConflictHistogram random_velocity_mc(const McConfig& config,
                                     const ExperimentConfig& experiment,
                                     int threads) {
  return random_velocity_mc(
      config, build_mc_context(experiment, config.target_set, threads), threads);
}

std::vector<TravelTimeSummary> travel_time_stats(
    const ExperimentConfig& experiment, const std::vector<double>& velocities,
    TravelTimeSource source, int n_min, int n_max, int threads) {
  for (double v : velocities) {
    if (!(v > 0.0)) throw ConfigError("velocities must be positive");
  }
  const SphereLayout layout = experiment.make_layout();
  const ConflictGraph graph =
      build_conflict_graph(layout, experiment.make_policy(), threads);

  // Path length population with multiplicities.
  std::map<int, long long> path_counts;  // path index -> count
  if (source == TravelTimeSource::AllCandidatePaths) {
    for (int i = 0; i < graph.size(); ++i) path_counts[i] = 1;
  } else {
    for (int n = n_min; n <= n_max; ++n) {
      for (const Scenario& s : enumerate_scenarios(n)) {
        const auto candidates = demand_path_indices(s, graph);
        const Assignment best = solve_max_flow(s, graph);
        for (std::size_t i = 0; i < s.demands.size(); ++i) {
          const auto it = best.served.find(s.demands[i].uav_id);
          if (it != best.served.end()) {
            ++path_counts[candidates[i][kind_index(it->second)]];
          }
        }
      }
    }
  }

  std::vector<TravelTimeSummary> summaries;
  for (double v : velocities) {
    TravelTimeSummary s;
    s.radius_m = experiment.radius_m;
    s.velocity_mps = v;
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& [idx, count] : path_counts) {
      const double t = graph.paths[idx].length_m / v;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
      sum += t * static_cast<double>(count);
      s.n_paths += count;
      s.histogram[static_cast<int>(std::floor(t / 5.0))] += count;
    }
    s.min_s = s.n_paths > 0 ? lo : 0.0;
    s.max_s = hi;
    s.mean_s = s.n_paths > 0 ? sum / static_cast<double>(s.n_paths) : 0.0;
    summaries.push_back(std::move(s));
  }
  return summaries;
}

}  // namespace sphereabout
