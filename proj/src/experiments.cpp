#include "sphereabout/experiments.hpp"

#include <algorithm>
#include <thread>

#include "sphereabout/errors.hpp"

namespace sphereabout {

FlowPairKey make_flow_pair_key(const Demand& a, const Demand& b) {
  FlowPairKey k1{a.entry, a.exit, b.entry, b.exit};
  FlowPairKey k2{b.entry, b.exit, a.entry, a.exit};
  return std::min(k1, k2);
}

std::string flow_pair_name(const FlowPairKey& key) {
  return flow_name(key.entry_a) + "->" + flow_name(key.exit_a) + " | " +
         flow_name(key.entry_b) + "->" + flow_name(key.exit_b);
}

std::vector<Scenario> enumerate_scenarios(int n_uavs) {
  if (n_uavs < 2 || n_uavs > kNumFlows) {
    throw InputError("n_uavs must lie in [2, 6], got " + std::to_string(n_uavs));
  }
  std::vector<Scenario> scenarios;

  std::vector<int> entries(n_uavs);
  for (int i = 0; i < n_uavs; ++i) entries[i] = i;

  while (true) {
    std::vector<std::vector<FlowDirection>> exits(n_uavs);
    for (int i = 0; i < n_uavs; ++i) {
      exits[i] = feasible_exits(kFlowOrder[entries[i]]);
    }
    std::vector<int> pick(n_uavs, 0);
    while (true) {
      Scenario s;
      s.demands.reserve(n_uavs);
      for (int i = 0; i < n_uavs; ++i) {
        s.demands.push_back({i, kFlowOrder[entries[i]], exits[i][pick[i]]});
      }
      scenarios.push_back(std::move(s));
      int pos = n_uavs - 1;
      while (pos >= 0 && pick[pos] == 4) pick[pos--] = 0;
      if (pos < 0) break;
      ++pick[pos];
    }
    int pos = n_uavs - 1;
    while (pos >= 0 && entries[pos] == kNumFlows - n_uavs + pos) --pos;
    if (pos < 0) break;
    ++entries[pos];
    for (int i = pos + 1; i < n_uavs; ++i) entries[i] = entries[i - 1] + 1;
  }
  return scenarios;
}

std::vector<std::pair<int, int>> residual_conflict_pairs(
    const Scenario& scenario, const Assignment& assignment,
    const ConflictGraph& graph) {
  const auto candidates = demand_path_indices(scenario, graph);
  const int n = static_cast<int>(scenario.demands.size());

  // Flight plan under the assignment: served UAVs on their chosen kind,
  // unserved UAVs on their direct path (the conflicts that denied them entry).
  std::vector<int> plan(n);
  std::vector<bool> served(n);
  for (int i = 0; i < n; ++i) {
    const auto it = assignment.served.find(scenario.demands[i].uav_id);
    served[i] = it != assignment.served.end();
    plan[i] = served[i] ? candidates[i][kind_index(it->second)] : candidates[i][0];
  }

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (served[a] && served[b]) continue;
      if (graph.conflict(plan[a], plan[b])) pairs.push_back({a, b});
    }
  }
  return pairs;
}

SweepResult run_sweep(const ConflictGraph& graph, int n_uavs, int threads) {
  const auto scenarios = enumerate_scenarios(n_uavs);

  struct Tally {
    long long collisions = 0, no_conflict = 0, resolved = 0;
    long long served_sum = 0;
    long long served_by_kind[3] = {0, 0, 0};
    std::vector<std::size_t> collision_scenarios;
    std::map<FlowPairKey, long long> residual;
  };

  auto process = [&](std::size_t begin, std::size_t end, Tally& tally) {
    for (std::size_t i = begin; i < end; ++i) {
      const Scenario& s = scenarios[i];
      const ScenarioClass cls = classify_scenario(s, graph);
      const Assignment best = solve_max_flow(s, graph);
      tally.served_sum += best.objective;
      for (const auto& [uav, kind] : best.served) {
        ++tally.served_by_kind[kind_index(kind)];
      }
      switch (cls) {
        case ScenarioClass::NoConflict: ++tally.no_conflict; break;
        case ScenarioClass::Resolved: ++tally.resolved; break;
        case ScenarioClass::Collision: {
          ++tally.collisions;
          tally.collision_scenarios.push_back(i);
          for (const auto& [a, b] : residual_conflict_pairs(s, best, graph)) {
            ++tally.residual[make_flow_pair_key(s.demands[a], s.demands[b])];
          }
          break;
        }
      }
    }
  };

  const int n_threads = std::max(threads, 1);
  std::vector<Tally> tallies(n_threads);
  if (n_threads == 1) {
    process(0, scenarios.size(), tallies[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (scenarios.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const std::size_t begin = std::min(static_cast<std::size_t>(t) * chunk,
                                         scenarios.size());
      const std::size_t end = std::min(begin + chunk, scenarios.size());
      pool.emplace_back(process, begin, end, std::ref(tallies[t]));
    }
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  Tally total;
  for (const Tally& t : tallies) {
    total.collisions += t.collisions;
    total.no_conflict += t.no_conflict;
    total.resolved += t.resolved;
    total.served_sum += t.served_sum;
    for (int k = 0; k < 3; ++k) total.served_by_kind[k] += t.served_by_kind[k];
    result.collision_scenarios.insert(result.collision_scenarios.end(),
                                      t.collision_scenarios.begin(),
                                      t.collision_scenarios.end());
    for (const auto& [key, count] : t.residual) {
      result.residual_counts[key] += count;
    }
  }
  std::sort(result.collision_scenarios.begin(), result.collision_scenarios.end());

  MetricsRow& row = result.row;
  row.n_uavs = n_uavs;
  row.scenarios = static_cast<long long>(scenarios.size());
  row.collisions = total.collisions;
  row.no_conflict = total.no_conflict;
  row.resolved = total.resolved;
  const double denom = static_cast<double>(row.scenarios);
  row.avg_flow = static_cast<double>(total.served_sum) / denom;
  for (int k = 0; k < 3; ++k) {
    row.path_load[k] = static_cast<double>(total.served_by_kind[k]) / denom;
  }
  return result;
}

std::vector<MetricsRow> run_table(const ExperimentConfig& config, int n_min,
                                  int n_max, int threads) {
  const SphereLayout layout = config.make_layout();
  const ConflictGraph graph = build_conflict_graph(layout, config.make_policy(), threads);
  std::vector<MetricsRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    rows.push_back(run_sweep(graph, n, threads).row);
  }
  return rows;
}

std::vector<std::pair<FlowPairKey, long long>> top_conflicting_flows(
    const ExperimentConfig& config, int n_min, int n_max, int threads) {
  const SphereLayout layout = config.make_layout();
  const ConflictGraph graph = build_conflict_graph(layout, config.make_policy(), threads);
  std::map<FlowPairKey, long long> counts;
  for (int n = n_min; n <= n_max; ++n) {
    for (const auto& [key, count] : run_sweep(graph, n, threads).residual_counts) {
      counts[key] += count;
    }
  }
  std::vector<std::pair<FlowPairKey, long long>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranked;
}

}  // namespace sphereabout
