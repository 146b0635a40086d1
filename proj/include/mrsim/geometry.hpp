#pragma once

#include <vector>

namespace mrsim {

struct ScenarioConfig;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }
constexpr double mps_to_kmh(double mps) { return mps * 3.6; }

double distance(Point a, Point b);

/// Perpendicular distance between a UE and the path of a relay antenna that
/// sits at the centre of the lane farthest from the UE. `setback_m` is the
/// UE's distance from the near kerb.
double lateral_offset(int lane_count, double lane_width_m, double setback_m);

/// Length of relay travel during which a UE at `offset_m` from the relay
/// path is inside a coverage disk of `radius_m`.
double coverage_chord(double radius_m, double offset_m);

/// Time a relay moving at `speed_mps` needs to traverse `chord_m`.
double coverage_window(double chord_m, double speed_mps);

struct CoverageDisk {
    double radius_m = 30.0;

    double area_m2() const;
};

/// Placement of one UE on the building/pavement strip.
enum class UeSpot { InBuilding, Pavement };

/// Street segment between two junctions.
///
/// Coordinates: x runs along the street from the upstream junction centre
/// (x = 0) to the downstream one (x = segment_length). y runs across the
/// street from the inner edge of the in-building penetration zone on the UE
/// side (y = 0), through the pavement and the lanes, to the far building
/// line. Relays travel in +x.
struct StreetLayout {
    int lane_count = 4;
    double lane_width_m = 3.2;
    double pavement_depth_m = 5.0;
    double penetration_depth_m = 5.0;
    double segment_length_m = 150.0;
    CoverageDisk relay_disk{};

    Point macro_position{};
    std::vector<Point> pico_positions;
    std::vector<Point> ue_positions;
    std::vector<UeSpot> ue_spots;

    double cross_section_m() const;
    double total_area_m2() const;
    /// y of the near kerb on the UE side.
    double kerb_y() const;
    /// y of the antenna of a relay driving in lane `lane_index` (0 = nearest
    /// to the UE side).
    double lane_centre_y(int lane_index) const;
    /// Distance from `ue` to the near kerb.
    double setback(Point ue) const;
};

/// Builds the street layout for a scenario and checks it against the
/// configured test area and relay coverage area (1% tolerance).
StreetLayout build_layout(const ScenarioConfig& config);

}  // namespace mrsim
