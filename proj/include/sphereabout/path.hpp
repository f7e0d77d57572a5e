#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphereabout/layout.hpp"
#include "sphereabout/vec3.hpp"

namespace sphereabout {

/// The three geometric alternatives for a feasible entry-exit pair.
enum class PathKind : std::uint8_t { Direct = 1, ShortArc = 2, LongArc = 3 };

constexpr int kind_index(PathKind k) { return static_cast<int>(k) - 1; }
constexpr std::array<PathKind, 3> kKindOrder = {PathKind::Direct, PathKind::ShortArc,
                                                PathKind::LongArc};
std::string kind_name(PathKind k);

struct PathSpec {
  NodeId entry{FlowDirection::XPos, Side::In};
  NodeId exit{FlowDirection::XPos, Side::Out};
  PathKind kind = PathKind::Direct;
  double length_m = 0.0;
  double central_angle_rad = 0.0;  // great-circle angle between endpoints; 0 for kind=direct on request
};

struct SampledPath {
  PathSpec spec;
  std::vector<Vec3> points;
  double spacing_m = 0.0;  // max gap between consecutive samples
};

/// Analytic construction: straight chord, or one of the two complementary
/// great-circle arcs through the endpoints. Throws DegenerateGeometryError
/// for an arc between antipodal endpoints, InputError for a pair outside A.
PathSpec make_path(const SphereLayout& layout, NodeId entry, NodeId exit,
                   PathKind kind);

/// Uniform parameter sampling with ceil(length / max_spacing) + 1 points,
/// endpoints included. Arc samples stay on the sphere.
SampledPath sample_path(const PathSpec& spec, const SphereLayout& layout,
                        double max_spacing_m);

/// Point on the path at arc-length fraction t in [0, 1] (analytic, used by
/// sampling; exposed for tests).
Vec3 path_point_at(const PathSpec& spec, const SphereLayout& layout, double t);

}  // namespace sphereabout
