#include "sphereabout/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sphereabout/errors.hpp"

namespace sphereabout {

const char* kToolVersion = "sphereabout 0.1.0";

std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_f3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write to '" + path + "'");
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string layout_json(const SphereLayout& layout, const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["radius_m"] = layout.radius_m;
  doc["equatorial_offset_deg"] = layout.equatorial_offset_deg;
  doc["polar_offset_deg"] = layout.polar_offset_deg;
  doc["circulation"] = layout.circulation == Circulation::Counterclockwise
                           ? "counterclockwise"
                           : "clockwise";
  doc["nodes"] = nlohmann::ordered_json::array();
  for (NodeId id : layout.all_node_ids()) {
    const Vec3& p = layout.node(id);
    doc["nodes"].push_back({{"id", node_name(id)},
                            {"x_m", p.x},
                            {"y_m", p.y},
                            {"z_m", p.z}});
  }
  doc["validation"] = nlohmann::ordered_json::array();
  for (const auto& check : report.checks) {
    doc["validation"].push_back({{"name", check.name},
                                 {"passed", check.passed},
                                 {"measured", check.measured},
                                 {"threshold", check.threshold},
                                 {"detail", check.detail}});
  }
  doc["validation_passed"] = report.all_passed();
  return doc.dump(2) + "\n";
}

std::string conflict_graph_csv(const ConflictGraph& graph) {
  std::string out =
      "entry_a,exit_a,kind_a,entry_b,exit_b,kind_b,min_dist_m,conflict_flag\n";
  const int n = graph.size();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const PathSpec& pa = graph.paths[a];
      const PathSpec& pb = graph.paths[b];
      out += flow_name(pa.entry.flow) + "," + flow_name(pa.exit.flow) + "," +
             std::to_string(static_cast<int>(pa.kind)) + "," +
             flow_name(pb.entry.flow) + "," + flow_name(pb.exit.flow) + "," +
             std::to_string(static_cast<int>(pb.kind)) + "," +
             format_g6(graph.min_dist(a, b)) + "," +
             (graph.conflict(a, b) ? "1" : "0") + "\n";
    }
  }
  return out;
}

std::string metrics_table_csv(const std::vector<MetricsRow>& rows,
                              double radius_m, double d_min_m) {
  std::string out =
      "radius_m,d_min_m,n_uavs,scenarios,collisions,no_conflict,resolved,"
      "avg_flow,path_load_1,path_load_2,path_load_3\n";
  for (const MetricsRow& r : rows) {
    out += format_g6(radius_m) + "," + format_g6(d_min_m) + "," +
           std::to_string(r.n_uavs) + "," + std::to_string(r.scenarios) + "," +
           std::to_string(r.collisions) + "," + std::to_string(r.no_conflict) +
           "," + std::to_string(r.resolved) + "," + format_f3(r.avg_flow) + "," +
           format_f3(r.path_load[0]) + "," + format_f3(r.path_load[1]) + "," +
           format_f3(r.path_load[2]) + "\n";
  }
  return out;
}

std::string histogram_csv(const ConflictHistogram& hist) {
  std::string out = "conflict_count,frequency\n";
  for (const auto& [count, freq] : hist.counts) {
    out += std::to_string(count) + "," + std::to_string(freq) + "\n";
  }
  return out;
}

std::string mc_summary_json(const ConflictHistogram& hist, const AppConfig& config,
                            const std::string& mode,
                            const ConflictHistogram* baseline) {
  nlohmann::ordered_json doc;
  doc["mode"] = mode;
  doc["n_experiments"] = hist.n_experiments;
  doc["mean_conflicts"] = hist.mean();
  doc["zero_conflict_fraction"] = hist.zero_fraction();
  doc["empty_target"] = hist.empty_target;
  if (baseline) {
    doc["baseline_mean_conflicts"] = baseline->mean();
    doc["baseline_zero_conflict_fraction"] = baseline->zero_fraction();
  }
  doc["seed"] = config.seed;
  doc["rng"] = "mt19937_64 (splitmix64 per-experiment sub-seeds)";
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config.to_key_values()) doc["config"][k] = v;
  return doc.dump(2) + "\n";
}

std::string travel_time_csv(const std::vector<TravelTimeSummary>& summaries) {
  std::string out = "radius_m,velocity_mps,n_paths,min_s,mean_s,max_s\n";
  for (const auto& s : summaries) {
    out += format_g6(s.radius_m) + "," + format_g6(s.velocity_mps) + "," +
           std::to_string(s.n_paths) + "," + format_g6(s.min_s) + "," +
           format_g6(s.mean_s) + "," + format_g6(s.max_s) + "\n";
  }
  return out;
}

std::string assignment_json(const Scenario& scenario, const Assignment& assignment,
                            ScenarioClass cls) {
  nlohmann::ordered_json doc;
  doc["demands"] = nlohmann::ordered_json::array();
  for (const Demand& d : scenario.demands) {
    doc["demands"].push_back({{"uav_id", d.uav_id},
                              {"entry", flow_name(d.entry)},
                              {"exit", flow_name(d.exit)}});
  }
  doc["served"] = nlohmann::ordered_json::object();
  for (const auto& [uav, kind] : assignment.served) {
    doc["served"][std::to_string(uav)] = static_cast<int>(kind);
  }
  doc["unserved"] = assignment.unserved;
  doc["objective"] = assignment.objective;
  doc["total_length_m"] = assignment.total_length_m;
  doc["class"] = scenario_class_name(cls);
  return doc.dump(2) + "\n";
}

std::string manifest_json(const AppConfig& config, const std::string& config_path,
                          const std::string& config_digest,
                          const std::vector<std::string>& outputs) {
  nlohmann::ordered_json doc;
  doc["tool_version"] = kToolVersion;
  doc["seed"] = config.seed;
  doc["config_path"] = config_path;
  doc["config_digest_fnv1a64"] = config_digest;
  doc["outputs"] = outputs;
  doc["resolved_config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config.to_key_values()) doc["resolved_config"][k] = v;
  return doc.dump(2) + "\n";
}

}  // namespace sphereabout
