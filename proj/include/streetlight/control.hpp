#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streetlight/daynight.hpp"
#include "streetlight/segmask.hpp"

namespace streetlight {

struct LampConfig {
    std::string lamp_id;
    std::optional<GeoLocation> location;  // absent: no geo-location sensor fitted
    double rated_watts = 100.0;
    double dim_level = 0.5;  // (0, 0.5]; full brightness is fixed at 1.0
    static constexpr double kFullLevel = 1.0;
    double hold_seconds = 10.0;  // FULL is held this long after the last detection
    HysteresisThresholds thresholds;
    double neighbor_radius_m = 0.0;
    double x_m = 0.0;  // planar position
    double y_m = 0.0;
    double min_area_fraction = kDefaultMinAreaFraction;
};

// Throws ConfigError on out-of-range values.
void validate(const LampConfig& cfg);

enum class LampMode { kOff, kDim, kFull };

const char* to_string(LampMode mode);

// mode OFF => brightness 0, DIM => dim_level, FULL => 1.0
struct LampState {
    LampMode mode = LampMode::kDim;
    double brightness = 0.5;
    std::optional<double> last_presence_at;  // UTC seconds
    DayNight daynight = DayNight::kNight;
    std::optional<double> last_step_at;  // guards against time going backwards
};

LampState initial_state(const LampConfig& cfg);

// One controller transition:
//   DAY                                  -> OFF   (day gate beats presence)
//   NIGHT + presence                     -> FULL, presence timestamp refreshed
//   NIGHT + no presence, inside hold     -> FULL retained
//   NIGHT otherwise                      -> DIM
// Throws std::invalid_argument when now precedes a previous step.
LampState step(const LampState& state, const LampConfig& cfg, const DayNightVerdict& verdict,
               const PresenceReport& presence, double now);

struct TimelinePoint {
    double t = 0.0;  // UTC seconds
    double brightness = 0.0;
};

// Piecewise-constant brightness trace: timestamps strictly increasing,
// consecutive brightness values differ.
struct BrightnessTimeline {
    std::string lamp_id;
    std::vector<TimelinePoint> points;

    // Maintains the invariants: equal-time updates replace the last point,
    // no-op brightness changes are dropped.
    void record(double t, double brightness);
};

// Exact step-function integral of brightness * rated_watts from the first
// point to horizon_end, in watt-hours.
double energy_wh(const BrightnessTimeline& timeline, double rated_watts, double horizon_end);

struct Interval {
    double begin = 0.0;
    double end = 0.0;
};

// 1 - controlled energy / baseline energy, where the baseline burns
// rated_watts at full brightness across every night interval. Controlled
// energy integrates the timeline over those same intervals.
// Throws UndefinedSavingsError when the baseline is zero.
double savings_vs_baseline(const BrightnessTimeline& timeline, const LampConfig& cfg,
                           std::span<const Interval> night_intervals);

}  // namespace streetlight
