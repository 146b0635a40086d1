#pragma once

// Independent reference computations used by the tests. Nothing in here calls
// into the library; each is a direct transcription of the defining formula or
// procedure so that the library can be checked against it.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace oracle {

constexpr double kPi = 3.14159265358979323846;

inline double offset(int lanes, double lane_width, double setback)
{
    return lanes * lane_width - lane_width / 2.0 + setback;
}

inline double chord(double radius, double off)
{
    return 2.0 * std::sqrt((radius - off) * (radius + off));
}

inline double kmh(double v) { return v * 1000.0 / 3600.0; }

inline double window_s(double radius, double off, double speed_kmh)
{
    return chord(radius, off) / kmh(speed_kmh);
}

inline double pathloss(double intercept, double exponent, double d_m)
{
    if (d_m < 1.0) d_m = 1.0;
    return intercept + exponent * std::log10(d_m) - 3.0 * exponent;
}

// Attach decision procedure transcribed branch by branch. The outcome strings match the
// library's reason labels.
struct AttachCase {
    bool via_pico = false;
    bool data = true;
    double speed = 0.0;
    double speed_max = 0.0;
    int capacity = 0;  // slots on the relay
    int attached = 0;
    double distance = 0.0;
    double exclusion = 0.0;
};

inline std::string attach_decision(const AttachCase& c, bool rsrp_higher)
{
    if (!rsrp_higher) return "RSRP_NOT_HIGHER";
    if (!c.via_pico) {
        if (c.data) {
            if (c.speed <= c.speed_max) {
                if (c.capacity > c.attached) {
                    return "GRANTED";
                } else {
                    return "NO_CAPACITY";
                }
            }
            return "SPEED_EXCEEDED";
        }
        return "VOICE_ONGOING";
    } else {
        if (c.data) {
            if (c.speed <= c.speed_max) {
                if (c.capacity > c.attached) {
                    if (c.distance > c.exclusion) {
                        return "GRANTED";
                    } else {
                        return "PICO_TOO_CLOSE";
                    }
                }
                return "NO_CAPACITY";
            }
            return "SPEED_EXCEEDED";
        }
        return "VOICE_ONGOING";
    }
}

// Calibrated per-bit targets in nJ.
inline double target_macro_nj() { return 1.57 / 22.5e6 * 1e9; }
inline double target_pico_nj() { return 1.57 / 26e6 * 1e9; }
inline double target_mr_nj() { return target_macro_nj() - 1.57 / 800e6 * 1e9; }

// Relay passes carrying a 100 MB job: passes arriving every `period` seconds
// from t = 0, each giving `effective` seconds at `rate`. Returns the first
// whole-minute delay at which the job is complete.
inline int minutes_to_finish(double size, double rate, double effective, double period)
{
    double moved = 0.0;
    for (int k = 0;; ++k) {
        moved += rate * effective;
        if (moved >= size) return static_cast<int>(std::ceil(k * period / 60.0));
    }
}

}  // namespace oracle
