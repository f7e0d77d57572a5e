#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphereabout/config.hpp"

namespace sphereabout {

/// Locale-independent formatting: 6 significant digits for general floats,
/// fixed 3 decimals for table metrics.
std::string format_g6(double v);
std::string format_f3(double v);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string layout_json(const SphereLayout& layout, const ValidationReport& report);

/// 4005-row CSV: entry_a, exit_a, kind_a, entry_b, exit_b, kind_b,
/// min_dist_m, conflict_flag.
std::string conflict_graph_csv(const ConflictGraph& graph);

std::string metrics_table_csv(const std::vector<MetricsRow>& rows,
                              double radius_m, double d_min_m);

std::string histogram_csv(const ConflictHistogram& hist);

std::string mc_summary_json(const ConflictHistogram& hist, const AppConfig& config,
                            const std::string& mode,
                            const ConflictHistogram* baseline = nullptr);

std::string travel_time_csv(const std::vector<TravelTimeSummary>& summaries);

/// One scenario's solve, as a JSON record.
std::string assignment_json(const Scenario& scenario, const Assignment& assignment,
                            ScenarioClass cls);

extern const char* kToolVersion;

/// Run manifest written alongside every output; feeding it back to --config
/// reproduces the run.
std::string manifest_json(const AppConfig& config, const std::string& config_path,
                          const std::string& config_digest,
                          const std::vector<std::string>& outputs);

}  // namespace sphereabout
