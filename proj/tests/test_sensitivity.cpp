#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sphereabout/errors.hpp"
#include "sphereabout/sensitivity.hpp"

using namespace sphereabout;

namespace {

ExperimentConfig experiment(double radius = 13.0, double d_min = 3.0) {
  ExperimentConfig c;
  c.radius_m = radius;
  c.d_min_m = d_min;
  c.n_uavs = 6;
  return c;
}

McConfig mc_config(int n = 300, std::uint64_t seed = 42) {
  McConfig m;
  m.n_experiments = n;
  m.seed = seed;
  return m;
}

long long total(const ConflictHistogram& h) {
  long long sum = 0;
  for (const auto& [count, freq] : h.counts) sum += freq;
  return sum;
}

}  // namespace

TEST_CASE("travel time scales inversely with speed") {
  const auto summaries = travel_time_stats(
      experiment(), {1.0, 2.0, 5.0}, TravelTimeSource::AllCandidatePaths);
  REQUIRE(summaries.size() == 3);
  for (const auto& s : summaries) {
    CHECK(s.n_paths == 90);
    CHECK(s.min_s <= s.mean_s);
    CHECK(s.mean_s <= s.max_s);
    long long binned = 0;
    for (const auto& [bin, count] : s.histogram) binned += count;
    CHECK(binned == s.n_paths);
  }
  CHECK(summaries[0].max_s == doctest::Approx(2.0 * summaries[1].max_s));
  CHECK(summaries[0].mean_s == doctest::Approx(2.0 * summaries[1].mean_s));
  CHECK(summaries[0].min_s == doctest::Approx(5.0 * summaries[2].min_s));
}

TEST_CASE("the slow large sphere takes over a minute") {
  const auto summaries = travel_time_stats(
      experiment(26.0), {1.0}, TravelTimeSource::AllCandidatePaths);
  REQUIRE(summaries.size() == 1);
  CHECK(summaries[0].max_s > 60.0);
}

TEST_CASE("direct through path at cruise speed") {
  const auto summaries = travel_time_stats(
      experiment(), {5.0}, TravelTimeSource::AllCandidatePaths);
  // Shortest candidate is the adjacent direct chord; the x+ through direct
  // (24.020 m -> 4.804 s) must lie inside [min, max].
  CHECK(summaries[0].min_s <= 4.804);
  CHECK(summaries[0].max_s >= 4.804);
}

TEST_CASE("travel-time sources differ in population size") {
  const auto all = travel_time_stats(experiment(), {5.0},
                                     TravelTimeSource::AllCandidatePaths);
  const auto served = travel_time_stats(experiment(), {5.0},
                                        TravelTimeSource::SweepServed, 2, 3, 4);
  CHECK(all[0].n_paths == 90);
  CHECK(served[0].n_paths > 90);  // every served UAV across two full sweeps
  CHECK_THROWS_AS(
      travel_time_stats(experiment(), {0.0}, TravelTimeSource::AllCandidatePaths),
      ConfigError);
}

TEST_CASE("fixed-lag histograms are reproducible and thread invariant") {
  const McContext ctx =
      build_mc_context(experiment(), McTargetSet::CollisionScenarios, 4);
  CHECK_FALSE(ctx.plans.empty());
  const McConfig cfg = mc_config();
  const FixedLagResult serial = fixed_lag_mc(cfg, ctx, 1);
  const FixedLagResult parallel = fixed_lag_mc(cfg, ctx, 8);
  CHECK(serial.histogram.counts == parallel.histogram.counts);
  CHECK(serial.baseline.counts == parallel.baseline.counts);
  CHECK(total(serial.histogram) == cfg.n_experiments);
  CHECK(total(serial.baseline) == cfg.n_experiments);
  CHECK(serial.histogram.mean() <= serial.baseline.mean());
  // A different seed moves the histogram.
  const FixedLagResult other = fixed_lag_mc(mc_config(300, 43), ctx, 4);
  CHECK(other.histogram.counts != serial.histogram.counts);
}

TEST_CASE("random-velocity histograms are reproducible and bounded") {
  const McContext ctx =
      build_mc_context(experiment(), McTargetSet::CollisionScenarios, 4);
  const McConfig cfg = mc_config();
  const ConflictHistogram serial = random_velocity_mc(cfg, ctx, 1);
  const ConflictHistogram parallel = random_velocity_mc(cfg, ctx, 8);
  CHECK(serial.counts == parallel.counts);
  CHECK(total(serial) == cfg.n_experiments);
  const int max_pairs = 6 * 5 / 2;
  for (const auto& [count, freq] : serial.counts) {
    CHECK(count >= 0);
    CHECK(count <= max_pairs);
    CHECK(freq > 0);
  }
}

TEST_CASE("degenerate velocity draw equals the unlagged baseline") {
  const McContext ctx =
      build_mc_context(experiment(), McTargetSet::CollisionScenarios, 4);
  McConfig cfg = mc_config();
  cfg.velocity_min_mps = 5.0;
  cfg.velocity_max_mps = 5.0;
  const ConflictHistogram equal_speeds = random_velocity_mc(cfg, ctx, 4);
  const ConflictHistogram baseline = fixed_lag_mc(cfg, ctx, 4).baseline;
  CHECK(equal_speeds.counts == baseline.counts);
}

TEST_CASE("empty collision target reports an empty histogram") {
  // The larger sphere resolves every scenario, so the collision set is empty.
  const McContext ctx =
      build_mc_context(experiment(26.0), McTargetSet::CollisionScenarios, 4);
  CHECK(ctx.plans.empty());
  const FixedLagResult lag = fixed_lag_mc(mc_config(), ctx, 4);
  CHECK(lag.histogram.empty_target);
  CHECK(lag.histogram.counts.empty());
  const ConflictHistogram rv = random_velocity_mc(mc_config(), ctx, 4);
  CHECK(rv.empty_target);
}

TEST_CASE("all-scenarios target draws from the full sweep") {
  const McContext ctx =
      build_mc_context(experiment(26.0), McTargetSet::AllScenarios, 4);
  CHECK(ctx.plans.size() == 15625);
  const ConflictHistogram rv = random_velocity_mc(mc_config(100), ctx, 4);
  CHECK_FALSE(rv.empty_target);
  CHECK(total(rv) == 100);
}

TEST_CASE("halving dt changes no verdict on a seeded regression set") {
  const McContext ctx =
      build_mc_context(experiment(), McTargetSet::CollisionScenarios, 4);
  McConfig coarse = mc_config(100);
  McConfig fine = coarse;
  fine.dt_s = 0.01;
  CHECK(random_velocity_mc(coarse, ctx, 4).counts ==
        random_velocity_mc(fine, ctx, 4).counts);
}

TEST_CASE("invalid monte carlo configs are rejected") {
  const McContext ctx =
      build_mc_context(experiment(), McTargetSet::CollisionScenarios, 4);
  McConfig bad_n = mc_config(0);
  CHECK_THROWS_AS(fixed_lag_mc(bad_n, ctx, 1), ConfigError);
  McConfig bad_v = mc_config();
  bad_v.velocity_min_mps = 5.0;
  bad_v.velocity_max_mps = 1.0;
  CHECK_THROWS_AS(random_velocity_mc(bad_v, ctx, 1), ConfigError);
}
