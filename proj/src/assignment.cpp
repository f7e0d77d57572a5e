#include "sphereabout/assignment.hpp"

#include <algorithm>

#include "sphereabout/errors.hpp"

namespace sphereabout {

std::string scenario_class_name(ScenarioClass c) {
  switch (c) {
    case ScenarioClass::NoConflict: return "no_conflict";
    case ScenarioClass::Resolved: return "resolved";
    case ScenarioClass::Collision: return "collision";
  }
  return "?";
}

std::vector<std::array<int, 3>> demand_path_indices(const Scenario& scenario,
                                                    const ConflictGraph& graph) {
  std::vector<std::array<int, 3>> out;
  out.reserve(scenario.demands.size());
  bool seen_entry[kNumFlows] = {};
  for (const Demand& d : scenario.demands) {
    if (seen_entry[flow_index(d.entry)]) {
      throw InputError("entry corridor " + flow_name(d.entry) +
                       " carries more than one UAV");
    }
    seen_entry[flow_index(d.entry)] = true;
    const int base = graph.path_index(d.entry, d.exit, PathKind::Direct);
    out.push_back({base, base + 1, base + 2});
  }
  return out;
}

namespace {

constexpr int kUnserved = 3;

struct Search {
  const ConflictGraph& graph;
  const std::vector<std::array<int, 3>>& candidates;
  const std::vector<double>& weights;
  std::vector<double> suffix_weight;

  std::vector<int> choice;       // per demand: kind index 0..2 or kUnserved
  std::vector<int> served_idx;   // path indices of served prefix
  double cur_weight = 0.0;
  double cur_length = 0.0;

  std::vector<int> best_choice;
  double best_weight = -1.0;
  double best_length = 0.0;
  bool have_best = false;

  void run() {
    const std::size_t n = candidates.size();
    suffix_weight.assign(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
      suffix_weight[i] = suffix_weight[i + 1] + weights[i];
    }
    choice.assign(n, kUnserved);
    dfs(0);
  }

  void dfs(std::size_t depth) {
    if (depth == candidates.size()) {
      // Option order (direct, short, long, unserved) makes the first complete
      // assignment among ties the lexicographically smallest kind choice, so
      // only strict improvements replace the incumbent.
      if (!have_best || cur_weight > best_weight ||
          (cur_weight == best_weight && cur_length < best_length)) {
        have_best = true;
        best_weight = cur_weight;
        best_length = cur_length;
        best_choice = choice;
      }
      return;
    }
    if (have_best && cur_weight + suffix_weight[depth] < best_weight) return;

    for (int k = 0; k < 3; ++k) {
      const int path = candidates[depth][k];
      bool feasible = true;
      for (int other : served_idx) {
        if (graph.conflict(path, other)) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      choice[depth] = k;
      served_idx.push_back(path);
      cur_weight += weights[depth];
      cur_length += graph.paths[path].length_m;
      dfs(depth + 1);
      cur_length -= graph.paths[path].length_m;
      cur_weight -= weights[depth];
      served_idx.pop_back();
    }
    choice[depth] = kUnserved;
    dfs(depth + 1);
  }
};

Assignment to_assignment(const Scenario& scenario, const ConflictGraph& graph,
                         const std::vector<std::array<int, 3>>& candidates,
                         const std::vector<int>& choice) {
  Assignment out;
  for (std::size_t i = 0; i < scenario.demands.size(); ++i) {
    const int uav = scenario.demands[i].uav_id;
    if (choice[i] == kUnserved) {
      out.unserved.insert(uav);
    } else {
      out.served[uav] = kKindOrder[choice[i]];
      out.total_length_m += graph.paths[candidates[i][choice[i]]].length_m;
      ++out.objective;
    }
  }
  return out;
}

}  // namespace

Assignment solve_max_flow(const Scenario& scenario, const ConflictGraph& graph,
                          const std::vector<double>* weights) {
  const auto candidates = demand_path_indices(scenario, graph);
  std::vector<double> w(scenario.demands.size(), 1.0);
  if (weights) {
    if (weights->size() != w.size()) {
      throw InputError("weights size does not match demand count");
    }
    w = *weights;
  }
  Search search{graph, candidates, w};
  search.run();
  return to_assignment(scenario, graph, candidates, search.best_choice);
}

Assignment assign_paths_oracle(const Scenario& scenario,
                               const ConflictGraph& graph) {
  const auto candidates = demand_path_indices(scenario, graph);
  const int n = static_cast<int>(scenario.demands.size());

  for (int k = n; k >= 1; --k) {
    // K-subsets of {0..n-1} in lexicographic order.
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    while (true) {
      // All kind choices, first subset member most significant.
      std::vector<int> kinds(k, 0);
      while (true) {
        bool feasible = true;
        for (int a = 0; a < k && feasible; ++a) {
          for (int b = a + 1; b < k && feasible; ++b) {
            if (graph.conflict(candidates[subset[a]][kinds[a]],
                               candidates[subset[b]][kinds[b]])) {
              feasible = false;
            }
          }
        }
        if (feasible) {
          std::vector<int> choice(n, kUnserved);
          for (int a = 0; a < k; ++a) choice[subset[a]] = kinds[a];
          return to_assignment(scenario, graph, candidates, choice);
        }
        int pos = k - 1;
        while (pos >= 0 && kinds[pos] == 2) kinds[pos--] = 0;
        if (pos < 0) break;
        ++kinds[pos];
      }
      int pos = k - 1;
      while (pos >= 0 && subset[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
    }
  }
  // Unreachable: any single path alone is conflict-free.
  Assignment empty;
  for (const Demand& d : scenario.demands) empty.unserved.insert(d.uav_id);
  return empty;
}

ScenarioClass classify_scenario(const Scenario& scenario,
                                const ConflictGraph& graph) {
  const auto candidates = demand_path_indices(scenario, graph);
  bool all_direct_ok = true;
  for (std::size_t a = 0; a < candidates.size() && all_direct_ok; ++a) {
    for (std::size_t b = a + 1; b < candidates.size() && all_direct_ok; ++b) {
      if (graph.conflict(candidates[a][0], candidates[b][0])) {
        all_direct_ok = false;
      }
    }
  }
  if (all_direct_ok) return ScenarioClass::NoConflict;
  const Assignment best = solve_max_flow(scenario, graph);
  return best.objective == static_cast<int>(scenario.demands.size())
             ? ScenarioClass::Resolved
             : ScenarioClass::Collision;
}

}  // namespace sphereabout
