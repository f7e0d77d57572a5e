#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sphereabout/vec3.hpp"

namespace sphereabout {

/// Travel direction of a traffic flow. Entry/exit nodes are labeled by the
/// flow they carry, not by the side of the sphere they sit on.
enum class FlowDirection : std::uint8_t { XPos, XNeg, YPos, YNeg, ZPos, ZNeg };

enum class Side : std::uint8_t { In, Out };

enum class Circulation : std::uint8_t { Counterclockwise, Clockwise };

constexpr int kNumFlows = 6;
constexpr std::array<FlowDirection, kNumFlows> kFlowOrder = {
    FlowDirection::XPos, FlowDirection::XNeg, FlowDirection::YPos,
    FlowDirection::YNeg, FlowDirection::ZPos, FlowDirection::ZNeg};

constexpr int flow_index(FlowDirection d) { return static_cast<int>(d); }

constexpr FlowDirection opposite(FlowDirection d) {
  switch (d) {
    case FlowDirection::XPos: return FlowDirection::XNeg;
    case FlowDirection::XNeg: return FlowDirection::XPos;
    case FlowDirection::YPos: return FlowDirection::YNeg;
    case FlowDirection::YNeg: return FlowDirection::YPos;
    case FlowDirection::ZPos: return FlowDirection::ZNeg;
    case FlowDirection::ZNeg: return FlowDirection::ZPos;
  }
  return d;
}

constexpr bool is_vertical(FlowDirection d) {
  return d == FlowDirection::ZPos || d == FlowDirection::ZNeg;
}

std::string flow_name(FlowDirection d);
FlowDirection flow_from_name(const std::string& name);

struct NodeId {
  FlowDirection flow;
  Side side;

  bool operator==(const NodeId& o) const = default;
};

std::string node_name(NodeId id);

/// Rotor-based clearance parameters (DJI FlyCart30-class defaults).
struct ClearanceSpec {
  double rotor_diameter_m = 1.375;
  double cruise_speed_mps = 5.0;
  double lateral_clearance_m = 4.0 * 1.375;
  double vertical_clearance_m = 1.5 * 1.375;
  double tube_inner_radius_m = 2.0;
  double tube_buffer_m = 1.0;

  double required_lateral_m() const { return 4.0 * rotor_diameter_m; }
  double required_vertical_m() const { return 1.5 * rotor_diameter_m; }
};

/// The intersection geometry: 12 nodes on a sphere, one entry and one exit
/// per flow direction.
struct SphereLayout {
  double radius_m = 13.0;
  double equatorial_offset_deg = 22.5;
  double polar_offset_deg = 22.5;
  Circulation circulation = Circulation::Counterclockwise;

  // Indexed [flow][side]; side 0 = in, 1 = out.
  std::array<std::array<Vec3, 2>, kNumFlows> nodes{};

  const Vec3& node(NodeId id) const {
    return nodes[flow_index(id.flow)][id.side == Side::In ? 0 : 1];
  }
  const Vec3& node(FlowDirection flow, Side side) const {
    return node(NodeId{flow, side});
  }

  std::vector<NodeId> all_node_ids() const;

  /// Chord distance between azimuthally adjacent equatorial nodes,
  /// 2 R sin(offset).
  double adjacent_equatorial_chord_m() const;
};

/// Places the 12 nodes. Equatorial tubes sit at azimuth offset + k*90 per
/// flow; z tubes are offset from the poles in the x-z plane with entry and
/// exit vertically aligned.
SphereLayout build_layout(double radius_m, double equatorial_offset_deg,
                          double polar_offset_deg, Circulation circulation);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
  std::vector<std::string> failing_names() const;
};

/// Clearance and separation checks: rotor-based clearances, adjacent tube
/// chord vs lateral clearance, buffer-zone policy, and all inter-node chords
/// vs d_min.
ValidationReport validate_clearances(const SphereLayout& layout,
                                     const ClearanceSpec& spec,
                                     double d_min_m);

/// All feasible entry-exit pairs (the set A): every exit except the U-turn,
/// 30 ordered pairs in canonical flow order.
std::vector<std::pair<NodeId, NodeId>> feasible_pairs(const SphereLayout& layout);

/// Feasible exit flows for one entry flow, in canonical direction order.
std::vector<FlowDirection> feasible_exits(FlowDirection entry);

}  // namespace sphereabout
