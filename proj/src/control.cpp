#include "streetlight/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "streetlight/errors.hpp"

namespace streetlight {

void validate(const LampConfig& cfg) {
    if (cfg.lamp_id.empty())
        throw ConfigError("lamp config: lamp_id must not be empty");
    if (!(cfg.rated_watts > 0.0))
        throw ConfigError("lamp '" + cfg.lamp_id + "': rated_watts must be positive");
    if (!(cfg.dim_level > 0.0 && cfg.dim_level <= 0.5))
        throw ConfigError("lamp '" + cfg.lamp_id + "': dim_level must be in (0, 0.5]");
    if (cfg.hold_seconds < 0.0)
        throw ConfigError("lamp '" + cfg.lamp_id + "': hold_seconds must be >= 0");
    if (cfg.neighbor_radius_m < 0.0)
        throw ConfigError("lamp '" + cfg.lamp_id + "': neighbor_radius must be >= 0");
    if (cfg.min_area_fraction < 0.0 || cfg.min_area_fraction > 1.0)
        throw ConfigError("lamp '" + cfg.lamp_id + "': min_area_fraction must be in [0, 1]");
    if (cfg.location) {
        if (cfg.location->latitude < -90.0 || cfg.location->latitude > 90.0 ||
            cfg.location->longitude < -180.0 || cfg.location->longitude > 180.0)
            throw ConfigError("lamp '" + cfg.lamp_id + "': location out of range");
    }
    try {
        validate(cfg.thresholds);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("lamp '" + cfg.lamp_id + "': " + e.what());
    }
}

const char* to_string(LampMode mode) {
    switch (mode) {
        case LampMode::kOff: return "OFF";
        case LampMode::kDim: return "DIM";
        case LampMode::kFull: return "FULL";
    }
    return "?";
}

LampState initial_state(const LampConfig& cfg) {
    LampState state;
    state.mode = LampMode::kDim;
    state.brightness = cfg.dim_level;
    state.daynight = DayNight::kNight;  // fail-lit until told otherwise
    return state;
}

LampState step(const LampState& state, const LampConfig& cfg, const DayNightVerdict& verdict,
               const PresenceReport& presence, double now) {
    if (state.last_step_at && now < *state.last_step_at)
        throw std::invalid_argument("step: time went backwards for lamp '" + cfg.lamp_id + "'");

    LampState next = state;
    next.last_step_at = now;
    next.daynight = verdict.state;

    if (verdict.state == DayNight::kDay) {
        next.mode = LampMode::kOff;
        next.brightness = 0.0;
        return next;
    }
    if (presence.any()) {
        next.mode = LampMode::kFull;
        next.brightness = LampConfig::kFullLevel;
        next.last_presence_at = now;
        return next;
    }
    if (state.last_presence_at && now - *state.last_presence_at < cfg.hold_seconds) {
        next.mode = LampMode::kFull;
        next.brightness = LampConfig::kFullLevel;
        return next;
    }
    next.mode = LampMode::kDim;
    next.brightness = cfg.dim_level;
    return next;
}

void BrightnessTimeline::record(double t, double brightness) {
    if (!points.empty()) {
        if (t < points.back().t)
            throw std::invalid_argument("timeline: timestamps must be non-decreasing");
        if (t == points.back().t) {
            points.back().brightness = brightness;
            // collapsing may have produced a no-op step against the previous point
            if (points.size() >= 2 && points[points.size() - 2].brightness == brightness)
                points.pop_back();
            return;
        }
        if (points.back().brightness == brightness)
            return;
    }
    points.push_back({t, brightness});
}

namespace {

void check_sorted(const BrightnessTimeline& timeline) {
    for (std::size_t i = 1; i < timeline.points.size(); ++i)
        if (timeline.points[i].t <= timeline.points[i - 1].t)
            throw std::invalid_argument("timeline: timestamps must be strictly increasing");
}

// Integral of the timeline's step function over [begin, end], in
// brightness-seconds. Before its first point the timeline contributes 0.
double brightness_seconds(const BrightnessTimeline& timeline, double begin, double end) {
    double sum = 0.0;
    const auto& points = timeline.points;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double seg_begin = std::max(points[i].t, begin);
        const double seg_end =
            std::min(i + 1 < points.size() ? points[i + 1].t : end, end);
        if (seg_end > seg_begin)
            sum += points[i].brightness * (seg_end - seg_begin);
    }
    return sum;
}

}  // namespace

double energy_wh(const BrightnessTimeline& timeline, double rated_watts, double horizon_end) {
    if (timeline.points.empty())
        throw std::invalid_argument("energy_wh: timeline is empty");
    check_sorted(timeline);
    if (horizon_end < timeline.points.back().t)
        throw std::invalid_argument("energy_wh: horizon precedes the last timeline point");

    double wh = 0.0;
    const auto& points = timeline.points;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double seg_end = i + 1 < points.size() ? points[i + 1].t : horizon_end;
        wh += points[i].brightness * rated_watts * ((seg_end - points[i].t) / 3600.0);
    }
    return wh;
}

double savings_vs_baseline(const BrightnessTimeline& timeline, const LampConfig& cfg,
                           std::span<const Interval> night_intervals) {
    check_sorted(timeline);
    double prev_end = -std::numeric_limits<double>::infinity();
    double baseline_wh = 0.0;
    double controlled_wh = 0.0;
    for (const Interval& night : night_intervals) {
        if (night.end < night.begin)
            throw std::invalid_argument("savings_vs_baseline: interval end precedes begin");
        if (night.begin < prev_end)
            throw std::invalid_argument("savings_vs_baseline: intervals overlap or are unsorted");
        prev_end = night.end;
        baseline_wh += cfg.rated_watts * ((night.end - night.begin) / 3600.0);
        controlled_wh +=
            cfg.rated_watts * (brightness_seconds(timeline, night.begin, night.end) / 3600.0);
    }
    if (baseline_wh == 0.0)
        throw UndefinedSavingsError("savings_vs_baseline: baseline energy is zero");
    return 1.0 - controlled_wh / baseline_wh;
}

}  // namespace streetlight
