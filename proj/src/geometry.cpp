#include "mrsim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mrsim/config.hpp"
#include "mrsim/error.hpp"

namespace mrsim {

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double lateral_offset(int lane_count, double lane_width_m, double setback_m)
{
    if (lane_count < 1) throw InvalidGeometry("lane_count must be >= 1");
    if (!(lane_width_m > 0.0)) throw InvalidGeometry("lane width must be positive");
    if (!(setback_m >= 0.0)) throw InvalidGeometry("setback must be non-negative");
    return (lane_count * lane_width_m + setback_m) - lane_width_m / 2.0;
}

double coverage_chord(double radius_m, double offset_m)
{
    if (!(radius_m > 0.0)) throw InvalidGeometry("coverage radius must be positive");
    if (offset_m < 0.0) offset_m = -offset_m;
    if (offset_m > radius_m) {
        throw OutOfRange("offset " + std::to_string(offset_m) + " m exceeds radius " +
                         std::to_string(radius_m) + " m");
    }
    return 2.0 * std::sqrt(radius_m * radius_m - offset_m * offset_m);
}

double coverage_window(double chord_m, double speed_mps)
{
    if (!(speed_mps > 0.0)) throw InvalidSpeed("speed must be positive");
    if (chord_m < 0.0) throw OutOfRange("chord must be non-negative");
    return chord_m / speed_mps;
}

double CoverageDisk::area_m2() const
{
    return std::numbers::pi * radius_m * radius_m;
}

double StreetLayout::cross_section_m() const
{
    return lane_count * lane_width_m + 2.0 * (pavement_depth_m + penetration_depth_m);
}

double StreetLayout::total_area_m2() const
{
    return segment_length_m * cross_section_m();
}

double StreetLayout::kerb_y() const
{
    return penetration_depth_m + pavement_depth_m;
}

double StreetLayout::lane_centre_y(int lane_index) const
{
    return kerb_y() + (lane_index + 0.5) * lane_width_m;
}

double StreetLayout::setback(Point ue) const
{
    return kerb_y() - ue.y;
}

StreetLayout build_layout(const ScenarioConfig& config)
{
    const auto& g = config.geometry;
    if (g.lane_count < 1) throw InvalidGeometry("geometry.lane_count must be >= 1");
    if (!(g.lane_width_m > 0.0) || !(g.pavement_depth_m > 0.0) || !(g.penetration_depth_m > 0.0) ||
        !(g.segment_length_m > 0.0) || !(g.mr_radius_m > 0.0)) {
        throw InvalidGeometry("street widths, depths, length and relay radius must be positive");
    }
    if (g.ue_count < 1) throw InvalidGeometry("geometry.ue_count must be >= 1");

    StreetLayout layout;
    layout.lane_count = g.lane_count;
    layout.lane_width_m = g.lane_width_m;
    layout.pavement_depth_m = g.pavement_depth_m;
    layout.penetration_depth_m = g.penetration_depth_m;
    layout.segment_length_m = g.segment_length_m;
    layout.relay_disk.radius_m = g.mr_radius_m;

    const double area = layout.total_area_m2();
    if (std::abs(area - g.test_area_m2) > 0.01 * g.test_area_m2) {
        throw InvalidGeometry("street area " + std::to_string(area) +
                              " m^2 differs from geometry.test_area_m2 by more than 1%");
    }
    const double disk = layout.relay_disk.area_m2();
    if (std::abs(disk - g.mr_area_m2) > 0.01 * g.mr_area_m2) {
        throw InvalidGeometry("relay disk area " + std::to_string(disk) +
                              " m^2 differs from geometry.mr_area_m2 by more than 1%");
    }

    const double length = g.segment_length_m;
    layout.macro_position = {length / 2.0, -g.macro_distance_m};
    if (config.sim.network == NetworkConfig::HetNet) {
        layout.pico_positions = {{0.0, g.pico_lateral_m}, {length, g.pico_lateral_m}};
    }

    // The building strip runs between the corners of the crossing streets,
    // which are as wide as this one.
    double inset = layout.cross_section_m() / 2.0;
    if (2.0 * inset >= length) inset = 0.0;
    const double strip = length - 2.0 * inset;
    const double pavement_y = g.penetration_depth_m + g.pavement_depth_m / 2.0;
    for (int i = 0; i < g.ue_count; ++i) {
        const double x = inset + (i + 0.5) * strip / g.ue_count;
        const bool pavement = std::floor((i + 1) * g.ue_pavement_share) > std::floor(i * g.ue_pavement_share);
        layout.ue_positions.push_back({x, pavement ? pavement_y : 0.0});
        layout.ue_spots.push_back(pavement ? UeSpot::Pavement : UeSpot::InBuilding);
    }
    return layout;
}

}  // namespace mrsim
