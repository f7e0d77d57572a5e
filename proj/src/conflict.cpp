#include "sphereabout/conflict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sphereabout/errors.hpp"

namespace sphereabout {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Binary AABB tree over the segments of one polyline.
struct SegmentBvh {
  struct Node {
    Aabb box;
    int begin = 0, end = 0;  // segment index range [begin, end)
    int left = -1, right = -1;
  };
  static constexpr int kLeafSize = 8;

  const std::vector<Vec3>* pts = nullptr;
  std::vector<Node> nodes;
  int root = -1;

  explicit SegmentBvh(const std::vector<Vec3>& points) : pts(&points) {
    const int n_seg = static_cast<int>(points.size()) - 1;
    nodes.reserve(2 * std::max(n_seg / kLeafSize, 1));
    root = build(0, n_seg);
  }

  int build(int begin, int end) {
    Node node;
    node.begin = begin;
    node.end = end;
    for (int i = begin; i < end; ++i) {
      node.box.expand((*pts)[i]);
      node.box.expand((*pts)[i + 1]);
    }
    const int idx = static_cast<int>(nodes.size());
    nodes.push_back(node);
    if (end - begin > kLeafSize) {
      const int mid = begin + (end - begin) / 2;
      nodes[idx].left = build(begin, mid);
      nodes[idx].right = build(mid, end);
    }
    return idx;
  }
};

using Mask = std::vector<std::uint8_t>;  // 1 = segment excluded

void query(const SegmentBvh& a, int ai, const SegmentBvh& b, int bi,
           const Mask* mask_a, const Mask* mask_b, double& best) {
  const auto& na = a.nodes[ai];
  const auto& nb = b.nodes[bi];
  if (na.box.distance_to(nb.box) >= best) return;

  const bool leaf_a = na.left < 0;
  const bool leaf_b = nb.left < 0;
  if (leaf_a && leaf_b) {
    for (int i = na.begin; i < na.end; ++i) {
      if (mask_a && (*mask_a)[i]) continue;
      for (int j = nb.begin; j < nb.end; ++j) {
        if (mask_b && (*mask_b)[j]) continue;
        const double d = segment_segment_distance(
            (*a.pts)[i], (*a.pts)[i + 1], (*b.pts)[j], (*b.pts)[j + 1]);
        if (d < best) best = d;
      }
    }
    return;
  }
  // Descend into the node with the larger extent.
  const bool split_a =
      !leaf_a && (leaf_b || (na.end - na.begin) >= (nb.end - nb.begin));
  if (split_a) {
    query(a, na.left, b, bi, mask_a, mask_b, best);
    query(a, na.right, b, bi, mask_a, mask_b, best);
  } else {
    query(a, ai, b, nb.left, mask_a, mask_b, best);
    query(a, ai, b, nb.right, mask_a, mask_b, best);
  }
}

/// Segment flagged iff it lies fully inside the ball (both endpoints inside;
/// the segment is contained by convexity).
Mask mask_near(const std::vector<Vec3>& points, const Vec3& center,
               double radius) {
  const int n_seg = static_cast<int>(points.size()) - 1;
  Mask mask(n_seg, 0);
  const double r2 = radius * radius;
  for (int i = 0; i < n_seg; ++i) {
    if ((points[i] - center).norm2() <= r2 &&
        (points[i + 1] - center).norm2() <= r2) {
      mask[i] = 1;
    }
  }
  return mask;
}

Mask combine(const Mask* a, const Mask* b) {
  Mask out = a ? *a : *b;
  if (a && b) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] |= (*b)[i];
  }
  return out;
}

/// Shared endpoint nodes of two path specs (entry/entry and exit/exit;
/// entry and exit node sets are disjoint).
struct SharedNodes {
  bool entry = false;
  bool exit = false;
  bool any() const { return entry || exit; }
};

SharedNodes shared_nodes(const PathSpec& a, const PathSpec& b) {
  return {a.entry == b.entry, a.exit == b.exit};
}

}  // namespace

double min_pair_distance(const SampledPath& a, const SampledPath& b,
                         const ConflictPolicy& policy) {
  if (a.points.size() < 2 || b.points.size() < 2) {
    throw InputError("min_pair_distance requires polylines with at least one segment");
  }
  SegmentBvh bvh_a(a.points);
  SegmentBvh bvh_b(b.points);

  Mask mask_a, mask_b;
  const Mask* pa = nullptr;
  const Mask* pb = nullptr;
  if (policy.shared_node_rule == SharedNodeRule::MaskNearSharedNode) {
    const SharedNodes shared = shared_nodes(a.spec, b.spec);
    const double r = policy.shared_node_mask_radius_m;
    if (shared.any()) {
      Mask ea, eb, xa, xb;
      const Mask* ea_p = nullptr;
      const Mask* xa_p = nullptr;
      const Mask* eb_p = nullptr;
      const Mask* xb_p = nullptr;
      if (shared.entry) {
        ea = mask_near(a.points, a.points.front(), r);
        eb = mask_near(b.points, b.points.front(), r);
        ea_p = &ea;
        eb_p = &eb;
      }
      if (shared.exit) {
        xa = mask_near(a.points, a.points.back(), r);
        xb = mask_near(b.points, b.points.back(), r);
        xa_p = &xa;
        xb_p = &xb;
      }
      mask_a = (ea_p && xa_p) ? combine(ea_p, xa_p) : (ea_p ? ea : xa);
      mask_b = (eb_p && xb_p) ? combine(eb_p, xb_p) : (eb_p ? eb : xb);
      pa = &mask_a;
      pb = &mask_b;
    }
  }

  double best = kInf;
  query(bvh_a, bvh_a.root, bvh_b, bvh_b.root, pa, pb, best);
  return best;
}

namespace {

/// Minimum distance at equal arc-length progress (fraction = false) or equal
/// transit fraction (fraction = true), step ds in metres of the faster
/// coordinate, masked per policy.
double synchronized_scan(const PathTraverser& a, const PathTraverser& b,
                         const ConflictPolicy& policy, double ds,
                         bool fraction = false) {
  SharedNodes shared;
  Vec3 shared_entry_pos, shared_exit_pos;
  double mask_r2 = 0.0;
  if (policy.shared_node_rule == SharedNodeRule::MaskNearSharedNode) {
    shared = shared_nodes(a.path().spec, b.path().spec);
    if (shared.entry) shared_entry_pos = a.path().points.front();
    if (shared.exit) shared_exit_pos = a.path().points.back();
    mask_r2 = policy.shared_node_mask_radius_m * policy.shared_node_mask_radius_m;
  }
  // In fraction mode s runs over the longer path's arc length and the other
  // path advances proportionally.
  const double s_max = fraction ? std::max(a.length_m(), b.length_m())
                                : std::min(a.length_m(), b.length_m());
  const double ratio_a = fraction ? a.length_m() / s_max : 1.0;
  const double ratio_b = fraction ? b.length_m() / s_max : 1.0;
  const auto eval = [&](double s) {
    const Vec3 pa = a.position(s * ratio_a);
    const Vec3 pb = b.position(s * ratio_b);
    const bool masked =
        (shared.entry && ((pa - shared_entry_pos).norm2() <= mask_r2 ||
                          (pb - shared_entry_pos).norm2() <= mask_r2)) ||
        (shared.exit && ((pa - shared_exit_pos).norm2() <= mask_r2 ||
                         (pb - shared_exit_pos).norm2() <= mask_r2));
    return masked ? kInf : distance(pa, pb);
  };

  double best = kInf;
  double best_s = 0.0;
  double s = 0.0;
  while (true) {
    const double d = eval(s);
    if (d < best) {
      best = d;
      best_s = s;
    }
    if (s >= s_max) break;
    s = std::min(s + ds, s_max);
  }
  if (best == kInf) return best;

  // Local grid refinement around the best coarse sample so the reported
  // minimum is insensitive to the scan spacing.
  double radius = ds;
  while (radius > 1e-7 * std::max(s_max, 1.0)) {
    const double step = radius / 4.0;
    const double lo = std::max(best_s - radius, 0.0);
    const double hi = std::min(best_s + radius, s_max);
    for (double x = lo; x <= hi + step * 0.5; x += step) {
      const double sx = std::min(x, s_max);
      const double d = eval(sx);
      if (d < best) {
        best = d;
        best_s = sx;
      }
    }
    radius = step;
  }
  return best;
}

}  // namespace

double synchronized_min_distance(const SampledPath& a, const SampledPath& b,
                                 const ConflictPolicy& policy) {
  if (a.points.size() < 2 || b.points.size() < 2) {
    throw InputError("synchronized_min_distance requires polylines with at least one segment");
  }
  PathTraverser ta(a), tb(b);
  return synchronized_scan(ta, tb, policy, policy.max_spacing_m);
}

int ConflictGraph::path_index(FlowDirection entry, FlowDirection exit,
                              PathKind kind) const {
  const int pair = pair_index(entry, exit);
  if (pair < 0) {
    throw InputError("pair " + flow_name(entry) + " -> " + flow_name(exit) +
                     " is outside the feasibility set A");
  }
  return pair * 3 + kind_index(kind);
}

ConflictGraph build_conflict_graph(const SphereLayout& layout,
                                   const ConflictPolicy& policy, int threads) {
  ConflictGraph graph;
  graph.policy = policy;
  for (int i = 0; i < kNumFlows; ++i)
    for (int j = 0; j < kNumFlows; ++j) graph.pair_index_[i][j] = -1;

  const auto pairs = feasible_pairs(layout);
  graph.paths.reserve(pairs.size() * 3);
  graph.sampled.reserve(pairs.size() * 3);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    graph.pair_index_[flow_index(pairs[p].first.flow)]
                     [flow_index(pairs[p].second.flow)] = static_cast<int>(p);
    for (PathKind kind : kKindOrder) {
      PathSpec spec = make_path(layout, pairs[p].first, pairs[p].second, kind);
      graph.sampled.push_back(sample_path(spec, layout, policy.max_spacing_m));
      graph.paths.push_back(spec);
    }
  }

  const int n = graph.size();
  graph.min_dist_.assign(static_cast<std::size_t>(n) * n, 0.0);
  graph.free_min_dist_.assign(static_cast<std::size_t>(n) * n, 0.0);
  graph.conflict_.assign(static_cast<std::size_t>(n) * n, 0);

  std::vector<PathTraverser> traversers;
  traversers.reserve(n);
  for (const SampledPath& sp : graph.sampled) traversers.emplace_back(sp);

  // Per-path BVHs and endpoint masks, reused across all pair queries.
  std::vector<SegmentBvh> bvhs;
  bvhs.reserve(n);
  std::vector<Mask> entry_masks(n), exit_masks(n);
  const bool masking = policy.shared_node_rule == SharedNodeRule::MaskNearSharedNode;
  for (int i = 0; i < n; ++i) {
    bvhs.emplace_back(graph.sampled[i].points);
    if (masking) {
      const auto& pts = graph.sampled[i].points;
      entry_masks[i] = mask_near(pts, pts.front(), policy.shared_node_mask_radius_m);
      exit_masks[i] = mask_near(pts, pts.back(), policy.shared_node_mask_radius_m);
    }
  }

  std::vector<std::pair<int, int>> work;
  work.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int m = 0; m < n; ++m)
    for (int k = m + 1; k < n; ++k) work.push_back({m, k});

  auto evaluate = [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      const auto [m, k] = work[w];
      const Mask* pm = nullptr;
      const Mask* pk = nullptr;
      Mask mm, mk;
      if (masking) {
        const SharedNodes shared = shared_nodes(graph.paths[m], graph.paths[k]);
        if (shared.entry && shared.exit) {
          mm = combine(&entry_masks[m], &exit_masks[m]);
          mk = combine(&entry_masks[k], &exit_masks[k]);
          pm = &mm;
          pk = &mk;
        } else if (shared.entry) {
          pm = &entry_masks[m];
          pk = &entry_masks[k];
        } else if (shared.exit) {
          pm = &exit_masks[m];
          pk = &exit_masks[k];
        }
      }
      double free_min = kInf;
      query(bvhs[m], bvhs[m].root, bvhs[k], bvhs[k].root, pm, pk, free_min);
      graph.free_min_dist_[graph.index(m, k)] = free_min;
      graph.free_min_dist_[graph.index(k, m)] = free_min;

      double active = free_min;
      if (policy.metric == ConflictMetric::Synchronized) {
        active = synchronized_scan(traversers[m], traversers[k], policy,
                                   policy.max_spacing_m);
      } else if (policy.metric == ConflictMetric::FractionSynchronized) {
        active = synchronized_scan(traversers[m], traversers[k], policy,
                                   policy.max_spacing_m, /*fraction=*/true);
      }
      graph.min_dist_[graph.index(m, k)] = active;
      graph.min_dist_[graph.index(k, m)] = active;
      const std::uint8_t flag = active <= policy.threshold_m() ? 1 : 0;
      graph.conflict_[graph.index(m, k)] = flag;
      graph.conflict_[graph.index(k, m)] = flag;
    }
  };

  const int n_threads = std::max(threads, 1);
  if (n_threads == 1) {
    evaluate(0, work.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (work.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const std::size_t begin = std::min(static_cast<std::size_t>(t) * chunk, work.size());
      const std::size_t end = std::min(begin + chunk, work.size());
      if (begin < end) pool.emplace_back(evaluate, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  return graph;
}

PathTraverser::PathTraverser(const SampledPath& path) : path_(&path) {
  cum_.resize(path.points.size());
  cum_[0] = 0.0;
  for (std::size_t i = 1; i < path.points.size(); ++i) {
    cum_[i] = cum_[i - 1] + distance(path.points[i - 1], path.points[i]);
  }
  poly_len_ = cum_.back();
}

Vec3 PathTraverser::position(double s) const {
  const double length = length_m();
  const double f = std::clamp(length > 0.0 ? s / length : 0.0, 0.0, 1.0);
  const double sp = f * poly_len_;
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), sp);
  if (it == cum_.begin()) return path_->points.front();
  if (it == cum_.end()) return path_->points.back();
  const std::size_t j = static_cast<std::size_t>(it - cum_.begin());
  const double seg_len = cum_[j] - cum_[j - 1];
  const double u = seg_len > 0.0 ? (sp - cum_[j - 1]) / seg_len : 0.0;
  return path_->points[j - 1] + (path_->points[j] - path_->points[j - 1]) * u;
}

namespace {

/// Common synchronized scan. Returns the minimum masked distance over the
/// window, or stops early once it drops to `stop_at` or below.
double temporal_scan(const MotionProfile& p, const MotionProfile& q,
                     double dt_s, const ConflictPolicy* policy,
                     double stop_at) {
  if (!(dt_s > 0.0)) throw InputError("dt_s must be positive");
  const double lo = std::max(p.entry_time_s, q.entry_time_s);
  const double hi = std::min(p.exit_time_s(), q.exit_time_s());
  if (lo > hi) return kInf;

  SharedNodes shared;
  Vec3 shared_entry_pos, shared_exit_pos;
  double mask_r2 = 0.0;
  if (policy && policy->shared_node_rule == SharedNodeRule::MaskNearSharedNode) {
    shared = shared_nodes(p.traverser->path().spec, q.traverser->path().spec);
    if (shared.entry) shared_entry_pos = p.traverser->path().points.front();
    if (shared.exit) shared_exit_pos = p.traverser->path().points.back();
    mask_r2 = policy->shared_node_mask_radius_m * policy->shared_node_mask_radius_m;
  }
  auto masked = [&](const Vec3& a, const Vec3& b) {
    if (shared.entry && ((a - shared_entry_pos).norm2() <= mask_r2 ||
                         (b - shared_entry_pos).norm2() <= mask_r2))
      return true;
    if (shared.exit && ((a - shared_exit_pos).norm2() <= mask_r2 ||
                        (b - shared_exit_pos).norm2() <= mask_r2))
      return true;
    return false;
  };

  double best = kInf;
  double t = lo;
  while (true) {
    const Vec3 a = p.position_at(t);
    const Vec3 b = q.position_at(t);
    if (!masked(a, b)) {
      best = std::min(best, distance(a, b));
      if (best <= stop_at) return best;
    }
    if (t >= hi) break;
    t = std::min(t + dt_s, hi);
  }
  return best;
}

}  // namespace

double temporal_min_distance(const MotionProfile& p, const MotionProfile& q,
                             double dt_s) {
  return temporal_scan(p, q, dt_s, nullptr, -kInf);
}

double temporal_min_distance(const MotionProfile& p, const MotionProfile& q,
                             double dt_s, const ConflictPolicy& policy) {
  return temporal_scan(p, q, dt_s, &policy, -kInf);
}

bool temporal_conflict_pair(const MotionProfile& p, const MotionProfile& q,
                            const ConflictPolicy& policy, double dt_s) {
  const double threshold = policy.threshold_m();
  return temporal_scan(p, q, dt_s, &policy, threshold) <= threshold;
}

std::vector<std::pair<int, int>> temporal_conflicts(
    const std::vector<MotionProfile>& profiles, const ConflictPolicy& policy,
    double dt_s) {
  if (profiles.empty()) throw InputError("temporal_conflicts: no profiles");
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(profiles.size());
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      if (temporal_conflict_pair(profiles[k], profiles[l], policy, dt_s)) {
        out.push_back({k, l});
      }
    }
  }
  return out;
}

}  // namespace sphereabout
