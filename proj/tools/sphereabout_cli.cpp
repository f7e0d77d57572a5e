// Command-line front end: layout | conflicts | table | montecarlo | traveltime.
// Every subcommand writes its output plus a <out>.manifest.json; feeding that
// manifest back through --config reproduces the output byte for byte.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sphereabout/errors.hpp"
#include "sphereabout/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitValidationFailure = 3;
constexpr int kExitInternalError = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  int threads = 1;
  // Optional overrides.
  double radius = -1.0;
  double dmin = -1.0;
  bool has_seed = false;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Config file (key = value) or run manifest")
      ->required();
  cmd->add_option("--out", args.out_path, "Output file path")->required();
  cmd->add_option("--threads", args.threads, "Worker threads (output-invariant)");
  cmd->add_option("--radius", args.radius, "Override radius_m");
  cmd->add_option("--dmin", args.dmin, "Override d_min_m");
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&args](const std::uint64_t& v) {
        args.seed = v;
        args.has_seed = true;
      },
      "Override master seed");
}

sphereabout::AppConfig load(const CommonArgs& args) {
  sphereabout::AppConfig cfg = sphereabout::load_config(args.config_path);
  if (args.radius > 0.0) cfg.radius_m = args.radius;
  if (args.dmin > 0.0) cfg.d_min_m = args.dmin;
  if (args.has_seed) cfg.seed = args.seed;
  return cfg;
}

void write_with_manifest(const sphereabout::AppConfig& cfg, const CommonArgs& args,
                         const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> names;
  for (const auto& [path, content] : files) {
    sphereabout::write_text_file(path, content);
    names.push_back(path);
  }
  const std::string digest = sphereabout::hex64(
      sphereabout::fnv1a64(sphereabout::read_text_file(args.config_path)));
  sphereabout::write_text_file(
      args.out_path + ".manifest.json",
      sphereabout::manifest_json(cfg, args.config_path, digest, names));
}

int cmd_layout(const CommonArgs& args) {
  using namespace sphereabout;
  const AppConfig cfg = load(args);
  const SphereLayout layout = cfg.experiment().make_layout();
  const ValidationReport report = validate_clearances(layout, cfg.clearance(), cfg.d_min_m);
  write_with_manifest(cfg, args, {{args.out_path, layout_json(layout, report)}});
  if (!report.all_passed()) {
    std::fprintf(stderr, "validation failed:");
    for (const std::string& name : report.failing_names()) {
      std::fprintf(stderr, " %s", name.c_str());
    }
    std::fprintf(stderr, "\n");
    return kExitValidationFailure;
  }
  return kExitOk;
}

int cmd_conflicts(const CommonArgs& args) {
  using namespace sphereabout;
  const AppConfig cfg = load(args);
  const ExperimentConfig exp = cfg.experiment();
  const ConflictGraph graph =
      build_conflict_graph(exp.make_layout(), exp.make_policy(), args.threads);
  write_with_manifest(cfg, args, {{args.out_path, conflict_graph_csv(graph)}});
  return kExitOk;
}

int cmd_table(const CommonArgs& args) {
  using namespace sphereabout;
  const AppConfig cfg = load(args);
  const auto rows =
      run_table(cfg.experiment(), cfg.n_min_uavs, cfg.n_max_uavs, args.threads);
  write_with_manifest(cfg, args,
                      {{args.out_path, metrics_table_csv(rows, cfg.radius_m, cfg.d_min_m)}});
  return kExitOk;
}

int cmd_montecarlo(const CommonArgs& args, const std::string& mode) {
  using namespace sphereabout;
  const AppConfig cfg = load(args);
  const McConfig mc = cfg.mc();
  const McContext context =
      build_mc_context(cfg.experiment(), mc.target_set, args.threads);

  ConflictHistogram hist;
  const ConflictHistogram* baseline = nullptr;
  FixedLagResult lag_result;
  if (mode == "fixed_lag") {
    lag_result = fixed_lag_mc(mc, context, args.threads);
    hist = lag_result.histogram;
    baseline = &lag_result.baseline;
  } else {
    hist = random_velocity_mc(mc, context, args.threads);
  }
  if (hist.empty_target) {
    std::fprintf(stderr, "warning: empty target set, histogram is empty\n");
  }
  const std::string summary_path = args.out_path + ".summary.json";
  write_with_manifest(cfg, args,
                      {{args.out_path, histogram_csv(hist)},
                       {summary_path, mc_summary_json(hist, cfg, mode, baseline)}});
  return kExitOk;
}

int cmd_traveltime(const CommonArgs& args) {
  using namespace sphereabout;
  const AppConfig cfg = load(args);
  const auto summaries = travel_time_stats(
      cfg.experiment(), cfg.travel_time_velocities_mps,
      cfg.travel_time_source_value(), cfg.n_min_uavs, cfg.n_max_uavs, args.threads);
  write_with_manifest(cfg, args, {{args.out_path, travel_time_csv(summaries)}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sphereabout spherical-intersection simulator and optimizer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sphereabout::kToolVersion);

  CommonArgs args;
  std::string mc_mode = "random_velocity";

  CLI::App* layout = app.add_subcommand("layout", "Node coordinates and clearance validation");
  add_common(layout, args);
  CLI::App* conflicts = app.add_subcommand("conflicts", "Pairwise conflict graph CSV");
  add_common(conflicts, args);
  CLI::App* table = app.add_subcommand("table", "Exhaustive sweep metrics per N");
  add_common(table, args);
  CLI::App* montecarlo = app.add_subcommand("montecarlo", "Timing sensitivity Monte Carlo");
  add_common(montecarlo, args);
  montecarlo->add_option("--mode", mc_mode, "fixed_lag | random_velocity")
      ->check(CLI::IsMember({"fixed_lag", "random_velocity"}));
  CLI::App* traveltime = app.add_subcommand("traveltime", "Travel time summaries per velocity");
  add_common(traveltime, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (layout->parsed()) return cmd_layout(args);
    if (conflicts->parsed()) return cmd_conflicts(args);
    if (table->parsed()) return cmd_table(args);
    if (montecarlo->parsed()) return cmd_montecarlo(args, mc_mode);
    if (traveltime->parsed()) return cmd_traveltime(args);
  } catch (const sphereabout::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternalError;
  }
  return kExitInternalError;
}
