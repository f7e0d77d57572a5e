#include "sphereabout/path.hpp"

#include <cmath>
#include <numbers>

#include "sphereabout/errors.hpp"

namespace sphereabout {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool pair_is_feasible(NodeId entry, NodeId exit) {
  return entry.side == Side::In && exit.side == Side::Out &&
         exit.flow != opposite(entry.flow);
}

/// Great-circle angle between the two endpoint directions.
double central_angle(const Vec3& a, const Vec3& b) {
  const Vec3 u = a.normalized();
  const Vec3 v = b.normalized();
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

/// Orthonormal in-plane basis for the great circle through a and b, with u
/// pointing at a. Throws on (near-)antipodal endpoints.
void arc_basis(const Vec3& a, const Vec3& b, Vec3& u, Vec3& w) {
  u = a.normalized();
  const Vec3 v = b.normalized();
  const Vec3 rej = v - u * u.dot(v);
  if (rej.norm() < 1e-9) {
    throw DegenerateGeometryError(
        "arc endpoints are collinear with the sphere center; the great circle "
        "is not unique (antipodal pair)");
  }
  w = rej.normalized();
}
}  // namespace

std::string kind_name(PathKind k) {
  switch (k) {
    case PathKind::Direct: return "direct";
    case PathKind::ShortArc: return "short_arc";
    case PathKind::LongArc: return "long_arc";
  }
  return "?";
}

PathSpec make_path(const SphereLayout& layout, NodeId entry, NodeId exit,
                   PathKind kind) {
  if (!pair_is_feasible(entry, exit)) {
    throw InputError("pair " + node_name(entry) + " -> " + node_name(exit) +
                     " is outside the feasibility set A");
  }
  const Vec3& a = layout.node(entry);
  const Vec3& b = layout.node(exit);
  const double omega = central_angle(a, b);

  PathSpec spec;
  spec.entry = entry;
  spec.exit = exit;
  spec.kind = kind;
  spec.central_angle_rad = omega;

  switch (kind) {
    case PathKind::Direct:
      spec.length_m = distance(a, b);
      break;
    case PathKind::ShortArc: {
      Vec3 u, w;
      arc_basis(a, b, u, w);  // validates non-antipodal
      spec.length_m = layout.radius_m * omega;
      break;
    }
    case PathKind::LongArc: {
      Vec3 u, w;
      arc_basis(a, b, u, w);
      spec.length_m = layout.radius_m * (kTwoPi - omega);
      break;
    }
  }
  return spec;
}

Vec3 path_point_at(const PathSpec& spec, const SphereLayout& layout, double t) {
  const Vec3& a = layout.node(spec.entry);
  const Vec3& b = layout.node(spec.exit);
  if (spec.kind == PathKind::Direct) {
    return a + (b - a) * t;
  }
  Vec3 u, w;
  arc_basis(a, b, u, w);
  const double omega = central_angle(a, b);
  // Short arc sweeps +omega; the long arc traverses the complementary side of
  // the same great circle, sweeping -(2*pi - omega).
  const double theta = spec.kind == PathKind::ShortArc ? t * omega
                                                       : -t * (kTwoPi - omega);
  return (u * std::cos(theta) + w * std::sin(theta)) * layout.radius_m;
}

SampledPath sample_path(const PathSpec& spec, const SphereLayout& layout,
                        double max_spacing_m) {
  if (!(max_spacing_m > 0.0)) {
    throw InputError("max_spacing_m must be positive");
  }
  const int n_segments = static_cast<int>(std::ceil(spec.length_m / max_spacing_m));
  SampledPath sampled;
  sampled.spec = spec;
  sampled.spacing_m = max_spacing_m;
  sampled.points.reserve(n_segments + 1);
  for (int i = 0; i <= n_segments; ++i) {
    const double t = static_cast<double>(i) / n_segments;
    sampled.points.push_back(path_point_at(spec, layout, t));
  }
  // Pin the endpoints to the node coordinates exactly.
  sampled.points.front() = layout.node(spec.entry);
  sampled.points.back() = layout.node(spec.exit);
  return sampled;
}

}  // namespace sphereabout
