#include "sphereabout/layout.hpp"

#include <cmath>
#include <numbers>

#include "sphereabout/errors.hpp"

namespace sphereabout {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;

// Travel azimuth of a horizontal flow, degrees CCW from +x (East).
double travel_azimuth_deg(FlowDirection d) {
  switch (d) {
    case FlowDirection::XPos: return 0.0;
    case FlowDirection::YPos: return 90.0;
    case FlowDirection::XNeg: return 180.0;
    case FlowDirection::YNeg: return 270.0;
    default: return 0.0;
  }
}

Vec3 equatorial_point(double radius, double azimuth_deg) {
  const double a = azimuth_deg * kDegToRad;
  return {radius * std::cos(a), radius * std::sin(a), 0.0};
}
}  // namespace

std::string flow_name(FlowDirection d) {
  switch (d) {
    case FlowDirection::XPos: return "x+";
    case FlowDirection::XNeg: return "x-";
    case FlowDirection::YPos: return "y+";
    case FlowDirection::YNeg: return "y-";
    case FlowDirection::ZPos: return "z+";
    case FlowDirection::ZNeg: return "z-";
  }
  return "?";
}

FlowDirection flow_from_name(const std::string& name) {
  for (FlowDirection d : kFlowOrder) {
    if (flow_name(d) == name) return d;
  }
  throw ConfigError("unknown flow direction '" + name + "'");
}

std::string node_name(NodeId id) {
  return flow_name(id.flow) + (id.side == Side::In ? "_in" : "_out");
}

std::vector<NodeId> SphereLayout::all_node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(12);
  for (FlowDirection d : kFlowOrder) {
    ids.push_back({d, Side::In});
    ids.push_back({d, Side::Out});
  }
  return ids;
}

double SphereLayout::adjacent_equatorial_chord_m() const {
  return 2.0 * radius_m * std::sin(0.5 * (45.0 * kDegToRad));
}

SphereLayout build_layout(double radius_m, double equatorial_offset_deg,
                          double polar_offset_deg, Circulation circulation) {
  if (!(radius_m > 0.0)) {
    throw ConfigError("radius_m must be positive, got " + std::to_string(radius_m));
  }
  if (!(equatorial_offset_deg > 0.0 && equatorial_offset_deg < 45.0)) {
    throw ConfigError("equatorial_offset_deg must lie in (0, 45), got " +
                      std::to_string(equatorial_offset_deg));
  }
  if (!(polar_offset_deg > 0.0 && polar_offset_deg < 45.0)) {
    throw ConfigError("polar_offset_deg must lie in (0, 45), got " +
                      std::to_string(polar_offset_deg));
  }

  SphereLayout layout;
  layout.radius_m = radius_m;
  layout.equatorial_offset_deg = equatorial_offset_deg;
  layout.polar_offset_deg = polar_offset_deg;
  layout.circulation = circulation;

  const bool ccw = circulation == Circulation::Counterclockwise;
  const double off = equatorial_offset_deg;

  // Horizontal flows: the entry sits behind the travel azimuth, offset to one
  // side so travel toward the same-direction exit sweeps azimuth in the
  // circulation sense (ccw defaults: x+ entry 202.5 deg, exit 337.5 deg).
  for (FlowDirection d : {FlowDirection::XPos, FlowDirection::XNeg,
                          FlowDirection::YPos, FlowDirection::YNeg}) {
    const double phi = travel_azimuth_deg(d);
    const double entry_az = phi + 180.0 + (ccw ? off : -off);
    const double exit_az = phi + (ccw ? -off : off);
    layout.nodes[flow_index(d)][0] = equatorial_point(radius_m, entry_az);
    layout.nodes[flow_index(d)][1] = equatorial_point(radius_m, exit_az);
  }

  // z tubes: offset from the poles in the x-z plane, entry and exit sharing
  // (x, y) so the through chord is parallel to the z axis. The z- tube sits
  // on the opposite side of the plane from z+.
  const double alpha = polar_offset_deg * kDegToRad;
  const double rs = radius_m * std::sin(alpha);
  const double rc = radius_m * std::cos(alpha);
  layout.nodes[flow_index(FlowDirection::ZPos)][0] = {rs, 0.0, -rc};
  layout.nodes[flow_index(FlowDirection::ZPos)][1] = {rs, 0.0, rc};
  layout.nodes[flow_index(FlowDirection::ZNeg)][0] = {-rs, 0.0, rc};
  layout.nodes[flow_index(FlowDirection::ZNeg)][1] = {-rs, 0.0, -rc};

  return layout;
}

bool ValidationReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::vector<std::string> ValidationReport::failing_names() const {
  std::vector<std::string> names;
  for (const auto& c : checks) {
    if (!c.passed) names.push_back(c.name);
  }
  return names;
}

ValidationReport validate_clearances(const SphereLayout& layout,
                                     const ClearanceSpec& spec,
                                     double d_min_m) {
  ValidationReport report;

  auto add = [&report](std::string name, double measured, double threshold,
                       std::string detail) {
    report.checks.push_back({std::move(name), measured >= threshold, measured,
                             threshold, std::move(detail)});
  };

  add("lateral_clearance", layout.adjacent_equatorial_chord_m(),
      std::max(spec.lateral_clearance_m, spec.required_lateral_m()),
      "adjacent equatorial tube chord vs lateral clearance (>= 4x rotor diameter)");
  add("vertical_clearance", spec.vertical_clearance_m, spec.required_vertical_m(),
      "vertical clearance vs 1.5x rotor diameter");
  // d_min spans two UAV buffer zones; the per-UAV zone is tube_buffer_m.
  add("buffer_zone_separation", d_min_m, 2.0 * spec.tube_buffer_m,
      "d_min vs twice the per-UAV buffer radius");

  const auto ids = layout.all_node_ids();
  double min_chord = std::numeric_limits<double>::infinity();
  std::string closest_pair;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const double d = distance(layout.node(ids[i]), layout.node(ids[j]));
      if (d < min_chord) {
        min_chord = d;
        closest_pair = node_name(ids[i]) + "/" + node_name(ids[j]);
      }
    }
  }
  add("min_node_separation", min_chord, d_min_m,
      "closest inter-node chord (" + closest_pair + ") vs d_min");

  return report;
}

std::vector<FlowDirection> feasible_exits(FlowDirection entry) {
  std::vector<FlowDirection> exits;
  exits.reserve(5);
  for (FlowDirection d : kFlowOrder) {
    if (d != opposite(entry)) exits.push_back(d);
  }
  return exits;
}

std::vector<std::pair<NodeId, NodeId>> feasible_pairs(const SphereLayout&) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(30);
  for (FlowDirection entry : kFlowOrder) {
    for (FlowDirection exit : feasible_exits(entry)) {
      pairs.push_back({NodeId{entry, Side::In}, NodeId{exit, Side::Out}});
    }
  }
  return pairs;
}

}  // namespace sphereabout
