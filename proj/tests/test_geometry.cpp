#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "sphereabout/errors.hpp"
#include "sphereabout/layout.hpp"
#include "sphereabout/path.hpp"

using namespace sphereabout;

namespace {
constexpr double kPi = 3.14159265358979323846;

SphereLayout default_layout(double radius = 13.0) {
  return build_layout(radius, 22.5, 22.5, Circulation::Counterclockwise);
}
}  // namespace

TEST_CASE("build_layout places 12 nodes on the sphere") {
  for (double radius : {13.0, 26.0}) {
    const SphereLayout layout = default_layout(radius);
    const auto ids = layout.all_node_ids();
    CHECK(ids.size() == 12);
    std::set<std::string> names;
    for (NodeId id : ids) {
      CHECK(layout.node(id).norm() == doctest::Approx(radius).epsilon(1e-12));
      names.insert(node_name(id));
    }
    CHECK(names.size() == 12);
  }
}

TEST_CASE("counterclockwise circulation fixes the x+ node azimuths") {
  const SphereLayout layout = default_layout();
  const Vec3 in = layout.node(FlowDirection::XPos, Side::In);
  const Vec3 out = layout.node(FlowDirection::XPos, Side::Out);
  const double az_in = std::atan2(in.y, in.x) * 180.0 / kPi;
  const double az_out = std::atan2(out.y, out.x) * 180.0 / kPi;
  CHECK(az_in == doctest::Approx(202.5 - 360.0).epsilon(1e-9));
  CHECK(az_out == doctest::Approx(337.5 - 360.0).epsilon(1e-9));
  CHECK(in.z == doctest::Approx(0.0));
  CHECK(out.z == doctest::Approx(0.0));
}

TEST_CASE("adjacent equatorial chord matches the closed form") {
  CHECK(default_layout(13.0).adjacent_equatorial_chord_m() ==
        doctest::Approx(9.9497).epsilon(1e-4));
  CHECK(default_layout(26.0).adjacent_equatorial_chord_m() ==
        doctest::Approx(19.8995).epsilon(1e-4));
}

TEST_CASE("z tubes are vertically aligned and mirrored") {
  const SphereLayout layout = default_layout();
  const Vec3 zp_in = layout.node(FlowDirection::ZPos, Side::In);
  const Vec3 zp_out = layout.node(FlowDirection::ZPos, Side::Out);
  const Vec3 zn_in = layout.node(FlowDirection::ZNeg, Side::In);
  CHECK(zp_in.x == doctest::Approx(zp_out.x));
  CHECK(zp_in.y == doctest::Approx(zp_out.y));
  CHECK(zp_in.z == doctest::Approx(-zp_out.z));
  CHECK(zn_in.x == doctest::Approx(-zp_in.x));  // opposite side of the pole
}

TEST_CASE("build_layout rejects bad parameters naming the field") {
  CHECK_THROWS_AS(build_layout(0.0, 22.5, 22.5, Circulation::Counterclockwise),
                  ConfigError);
  CHECK_THROWS_AS(build_layout(13.0, 0.0, 22.5, Circulation::Counterclockwise),
                  ConfigError);
  CHECK_THROWS_AS(build_layout(13.0, 22.5, 45.0, Circulation::Counterclockwise),
                  ConfigError);
  try {
    build_layout(-1.0, 22.5, 22.5, Circulation::Counterclockwise);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("radius") != std::string::npos);
  }
}

TEST_CASE("clearance validation passes at defaults and fails when forced") {
  const SphereLayout layout = default_layout();
  ClearanceSpec spec;
  CHECK(validate_clearances(layout, spec, 3.0).all_passed());

  ClearanceSpec big = spec;
  big.rotor_diameter_m = 5.0;  // required lateral 20 m > 9.95 m chord
  const ValidationReport report = validate_clearances(layout, big, 3.0);
  CHECK_FALSE(report.all_passed());
  const auto failing = report.failing_names();
  CHECK(std::find(failing.begin(), failing.end(), "lateral_clearance") !=
        failing.end());

  // d_min = 0 makes the inter-node separation checks trivially pass.
  ClearanceSpec zero_buffer = spec;
  zero_buffer.tube_buffer_m = 0.0;
  CHECK(validate_clearances(layout, zero_buffer, 0.0).all_passed());
}

TEST_CASE("feasibility set has 30 pairs, 5 exits per entry, no U-turns") {
  const SphereLayout layout = default_layout();
  const auto pairs = feasible_pairs(layout);
  CHECK(pairs.size() == 30);
  std::map<int, int> per_entry, per_exit;
  for (const auto& [entry, exit] : pairs) {
    CHECK(exit.flow != opposite(entry.flow));
    ++per_entry[flow_index(entry.flow)];
    ++per_exit[flow_index(exit.flow)];
  }
  for (FlowDirection f : kFlowOrder) {
    CHECK(per_entry[flow_index(f)] == 5);
    CHECK(per_exit[flow_index(f)] == 5);
    CHECK(feasible_exits(f).size() == 5);
  }
}

TEST_CASE("make_path rejects pairs outside the feasibility set") {
  const SphereLayout layout = default_layout();
  CHECK_THROWS_AS(make_path(layout, {FlowDirection::XPos, Side::In},
                            {FlowDirection::XNeg, Side::Out}, PathKind::Direct),
                  InputError);
}

TEST_CASE("x+ through path lengths match the closed forms") {
  const SphereLayout layout = default_layout();
  const NodeId in{FlowDirection::XPos, Side::In};
  const NodeId out{FlowDirection::XPos, Side::Out};
  const PathSpec direct = make_path(layout, in, out, PathKind::Direct);
  CHECK(direct.central_angle_rad == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-12));
  CHECK(direct.length_m ==
        doctest::Approx(2.0 * 13.0 * std::sin(67.5 * kPi / 180.0)).epsilon(1e-12));
  const PathSpec short_arc = make_path(layout, in, out, PathKind::ShortArc);
  CHECK(short_arc.length_m == doctest::Approx(13.0 * 3.0 * kPi / 4.0).epsilon(1e-12));
  const PathSpec long_arc = make_path(layout, in, out, PathKind::LongArc);
  CHECK(long_arc.length_m == doctest::Approx(13.0 * 5.0 * kPi / 4.0).epsilon(1e-12));
}

TEST_CASE("length order and complementary-arc identity hold for all pairs") {
  for (double radius : {13.0, 26.0}) {
    const SphereLayout layout = default_layout(radius);
    for (const auto& [entry, exit] : feasible_pairs(layout)) {
      const PathSpec d = make_path(layout, entry, exit, PathKind::Direct);
      const PathSpec s = make_path(layout, entry, exit, PathKind::ShortArc);
      const PathSpec l = make_path(layout, entry, exit, PathKind::LongArc);
      CHECK(d.length_m <= s.length_m + 1e-12);
      CHECK(s.length_m <= l.length_m + 1e-12);
      const double total = s.length_m + l.length_m;
      CHECK(std::fabs(total - 2.0 * kPi * radius) <= 1e-9 * 2.0 * kPi * radius);
    }
  }
}

TEST_CASE("mirror symmetry through the equator maps z+ onto z-") {
  const SphereLayout layout = default_layout();
  for (PathKind kind : kKindOrder) {
    const PathSpec zp = make_path(layout, {FlowDirection::ZPos, Side::In},
                                  {FlowDirection::ZPos, Side::Out}, kind);
    const PathSpec zn = make_path(layout, {FlowDirection::ZNeg, Side::In},
                                  {FlowDirection::ZNeg, Side::Out}, kind);
    CHECK(zp.length_m == doctest::Approx(zn.length_m).epsilon(1e-12));
  }
}

TEST_CASE("sampling honors count, endpoints, spacing, and the sphere") {
  const SphereLayout layout = default_layout();
  const NodeId in{FlowDirection::XPos, Side::In};
  const NodeId out{FlowDirection::XPos, Side::Out};
  const PathSpec direct = make_path(layout, in, out, PathKind::Direct);
  const SampledPath sd = sample_path(direct, layout, 0.1);
  CHECK(sd.points.size() ==
        static_cast<std::size_t>(std::ceil(direct.length_m / 0.1)) + 1);
  CHECK(sd.points.size() == 242);
  CHECK((sd.points.front() - layout.node(in)).norm() == doctest::Approx(0.0));
  CHECK((sd.points.back() - layout.node(out)).norm() == doctest::Approx(0.0));
  for (std::size_t i = 1; i < sd.points.size(); ++i) {
    CHECK((sd.points[i] - sd.points[i - 1]).norm() <= 0.1 + 1e-12);
  }

  const PathSpec arc = make_path(layout, in, out, PathKind::LongArc);
  const SampledPath sa = sample_path(arc, layout, 0.1);
  for (const Vec3& p : sa.points) {
    CHECK(std::fabs(p.norm() - 13.0) <= 1e-6 * 13.0);
  }
}

TEST_CASE("path lengths are analytic, not sampling dependent") {
  const SphereLayout layout = default_layout();
  for (const auto& [entry, exit] : feasible_pairs(layout)) {
    for (PathKind kind : kKindOrder) {
      const PathSpec spec = make_path(layout, entry, exit, kind);
      const SampledPath coarse = sample_path(spec, layout, 0.1);
      const SampledPath fine = sample_path(spec, layout, 0.05);
      CHECK(coarse.spec.length_m == fine.spec.length_m);
    }
  }
}
