#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "streetlight/image.hpp"

namespace streetlight {

enum class DayNight { kDay, kNight };

// Previous classifier state; kUnknown resolves to NIGHT inside the band
// (fail-lit is safer than fail-dark).
enum class DayNightPrior { kDay, kNight, kUnknown };

enum class SolarVerdict { kDay, kNight, kUncertain };

const char* to_string(DayNight v);
const char* to_string(SolarVerdict v);

struct GeoLocation {
    double latitude = 0.0;   // degrees, -90..90
    double longitude = 0.0;  // degrees, -180..180
};

// Two-threshold switching band: a single threshold flaps at dawn/dusk.
struct HysteresisThresholds {
    double theta_day = 0.45;
    double theta_night = 0.35;
};

void validate(const HysteresisThresholds& th);

DayNight classify_brightness(BrightnessEstimate b, const HysteresisThresholds& th,
                             DayNightPrior prev);

// Geometric solar elevation in degrees via the low-precision fractional-year
// approximation (fractional year -> equation of time and declination -> true
// solar time -> hour angle -> elevation). Good to about +-0.3 deg against the
// NOAA worksheet; no refraction term beyond the -0.833 deg crossing
// convention. Valid for years 1900..2100.
double solar_elevation(const GeoLocation& loc, double utc_seconds);

// Standard sunrise/sunset crossing elevation.
inline constexpr double kSunriseElevationDeg = -0.833;
// Civil-twilight style abstention band for solar day/night verdicts.
inline constexpr double kSolarTwilightBandDeg = 3.0;

SolarVerdict solar_verdict(double elevation_deg);

struct SourceSet {
    bool vision = false;
    bool solar = false;
    bool ambient = false;

    int count() const { return int(vision) + int(solar) + int(ambient); }
};

struct DayNightVerdict {
    DayNight state = DayNight::kNight;
    SourceSet sources;  // non-abstaining sources consulted
    double confidence = 0.0;
};

// Safety-biased fusion: DAY only if every available source says DAY; a solar
// UNCERTAIN abstains; any NIGHT vote forces NIGHT. Confidence is the fraction
// of voting sources that agree with the verdict.
DayNightVerdict fuse(DayNight vision, SolarVerdict solar,
                     std::optional<DayNight> ambient = std::nullopt);

// Civil-time helpers (proleptic Gregorian, UTC only).
struct CivilDateTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    double second = 0.0;
};

double utc_from_civil(const CivilDateTime& civil);

// Accepts "YYYY-MM-DD HH:MM[:SS]" or "YYYY-MM-DDTHH:MM[:SS][Z]".
std::optional<double> parse_utc(std::string_view text);

}  // namespace streetlight
