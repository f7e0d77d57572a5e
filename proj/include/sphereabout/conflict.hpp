#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sphereabout/layout.hpp"
#include "sphereabout/path.hpp"

namespace sphereabout {

/// Treatment of two paths that share an entry or exit node: strict geometry
/// makes them touch unconditionally; the mask rule ignores the polyline
/// portion inside a ball around the shared node, treating merge sequencing
/// as resolvable inside the tube.
enum class SharedNodeRule : std::uint8_t { MaskNearSharedNode, Strict };

/// Distance underlying the conflict flag. Synchronized: minimum over common
/// arc-length progress, i.e. equal speeds and simultaneous entry (this is the
/// reading under which path reassignment can resolve crossing flows at all:
/// all equatorial paths are coplanar, so their free minima vanish pairwise).
/// FractionSynchronized: minimum over common transit fraction, i.e. both
/// UAVs cross in equal time (the pairing behind equal-count path sampling).
/// FreeMin: minimum over independent positions on the two paths.
enum class ConflictMetric : std::uint8_t {
  Synchronized,
  FractionSynchronized,
  FreeMin,
};

struct ConflictPolicy {
  double d_min_m = 3.0;
  /// Radius of the spherical buffer zone carried by each UAV. d_min_m is the
  /// required gap between buffer-zone surfaces, so two path points conflict
  /// when their centre distance drops to d_min_m + 2 * uav_buffer_radius_m.
  double uav_buffer_radius_m = 1.5;
  double max_spacing_m = 0.1;
  double shared_node_mask_radius_m = 4.0;  // default 2 * tube inner radius
  SharedNodeRule shared_node_rule = SharedNodeRule::MaskNearSharedNode;
  ConflictMetric metric = ConflictMetric::Synchronized;

  /// Centre-to-centre conflict threshold.
  double threshold_m() const { return d_min_m + 2.0 * uav_buffer_radius_m; }
};

/// Minimum distance between two sampled paths: exact segment-segment minima
/// over the polylines. Under the mask rule, segments lying fully inside the
/// mask ball of a shared node are excluded first; +infinity if nothing
/// remains.
double min_pair_distance(const SampledPath& a, const SampledPath& b,
                         const ConflictPolicy& policy);

/// Minimum distance over common arc-length progress s in [0, min(La, Lb)],
/// sampled at the policy spacing; both UAVs enter together at equal speed.
/// Same shared-node masking as min_pair_distance (skip samples with either
/// position inside a mask ball).
double synchronized_min_distance(const SampledPath& a, const SampledPath& b,
                                 const ConflictPolicy& policy);

/// Symmetric conflict relation over all 90 candidate paths (30 pairs x 3
/// kinds, canonical order).
class ConflictGraph {
public:
  std::vector<PathSpec> paths;
  std::vector<SampledPath> sampled;
  ConflictPolicy policy;

  int size() const { return static_cast<int>(paths.size()); }

  /// Distance under the active policy metric; defines the conflict flag.
  double min_dist(int m, int n) const { return min_dist_[index(m, n)]; }
  /// Free polyline minimum under the same masking rule; a lower bound for
  /// every synchronized or timed distance, kept for temporal prefiltering.
  double free_min_dist(int m, int n) const { return free_min_dist_[index(m, n)]; }
  bool conflict(int m, int n) const { return conflict_[index(m, n)] != 0; }

  /// Index of the candidate path for (entry flow, exit flow, kind);
  /// throws InputError outside the feasibility set.
  int path_index(FlowDirection entry, FlowDirection exit, PathKind kind) const;

  /// Index of the feasible (entry, exit) pair, or -1.
  int pair_index(FlowDirection entry, FlowDirection exit) const {
    return pair_index_[flow_index(entry)][flow_index(exit)];
  }

private:
  friend ConflictGraph build_conflict_graph(const SphereLayout&,
                                            const ConflictPolicy&, int);
  std::size_t index(int m, int n) const {
    return static_cast<std::size_t>(m) * paths.size() + n;
  }
  std::vector<double> min_dist_;
  std::vector<double> free_min_dist_;
  std::vector<std::uint8_t> conflict_;
  int pair_index_[kNumFlows][kNumFlows] = {};
};

/// Samples every candidate path and evaluates all 90*89/2 unordered pairs.
/// Deterministic for fixed inputs regardless of `threads`.
ConflictGraph build_conflict_graph(const SphereLayout& layout,
                                   const ConflictPolicy& policy,
                                   int threads = 1);

/// Arc-length cursor over a sampled polyline. Positions interpolate along the
/// polyline itself, so synchronized-time distances can never undercut the
/// polyline minimum distance.
class PathTraverser {
public:
  explicit PathTraverser(const SampledPath& path);

  const SampledPath& path() const { return *path_; }
  double length_m() const { return path_->spec.length_m; }

  /// Position at analytic arc length s (clamped to [0, length]).
  Vec3 position(double s) const;

private:
  const SampledPath* path_;
  std::vector<double> cum_;
  double poly_len_;
};

/// Constant-speed transit of one path starting at entry_time_s.
struct MotionProfile {
  const PathTraverser* traverser = nullptr;
  double speed_mps = 5.0;
  double entry_time_s = 0.0;

  double duration_s() const { return traverser->length_m() / speed_mps; }
  double exit_time_s() const { return entry_time_s + duration_s(); }
  Vec3 position_at(double t) const {
    return traverser->position((t - entry_time_s) * speed_mps);
  }
};

/// Minimum synchronized distance over the overlap of the transit windows,
/// sampled at step dt_s (window endpoints included); +infinity if the windows
/// do not overlap. No masking.
double temporal_min_distance(const MotionProfile& p, const MotionProfile& q,
                             double dt_s);

/// As above but applying the policy's shared-node rule: sample times where
/// either UAV sits within the mask ball of a shared node are skipped.
double temporal_min_distance(const MotionProfile& p, const MotionProfile& q,
                             double dt_s, const ConflictPolicy& policy);

/// True if the pair's masked synchronized distance drops to d_min or below.
bool temporal_conflict_pair(const MotionProfile& p, const MotionProfile& q,
                            const ConflictPolicy& policy, double dt_s);

/// All conflicting index pairs (k < l) among the profiles.
std::vector<std::pair<int, int>> temporal_conflicts(
    const std::vector<MotionProfile>& profiles, const ConflictPolicy& policy,
    double dt_s);

}  // namespace sphereabout
