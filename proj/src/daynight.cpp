#include "streetlight/daynight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace streetlight {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

constexpr int kDaysBeforeMonth[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

// Days since 1970-01-01 (Howard Hinnant's civil-date algorithm).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long yy = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

const char* to_string(DayNight v) {
    return v == DayNight::kDay ? "DAY" : "NIGHT";
}

const char* to_string(SolarVerdict v) {
    switch (v) {
        case SolarVerdict::kDay: return "DAY";
        case SolarVerdict::kNight: return "NIGHT";
        case SolarVerdict::kUncertain: return "UNCERTAIN";
    }
    return "?";
}

void validate(const HysteresisThresholds& th) {
    if (!(0.0 <= th.theta_night && th.theta_night < th.theta_day && th.theta_day <= 1.0))
        throw std::invalid_argument(
            "HysteresisThresholds: need 0 <= theta_night < theta_day <= 1");
}

DayNight classify_brightness(BrightnessEstimate b, const HysteresisThresholds& th,
                             DayNightPrior prev) {
    validate(th);
    if (b.value < 0.0 || b.value > 1.0)
        throw std::invalid_argument("classify_brightness: brightness must be in [0, 1]");
    if (b.value >= th.theta_day) return DayNight::kDay;
    if (b.value <= th.theta_night) return DayNight::kNight;
    // in the band: hold the previous state
    switch (prev) {
        case DayNightPrior::kDay: return DayNight::kDay;
        case DayNightPrior::kNight: return DayNight::kNight;
        case DayNightPrior::kUnknown: return DayNight::kNight;
    }
    return DayNight::kNight;
}

double solar_elevation(const GeoLocation& loc, double utc_seconds) {
    if (loc.latitude < -90.0 || loc.latitude > 90.0)
        throw std::invalid_argument("solar_elevation: latitude out of range");
    if (loc.longitude < -180.0 || loc.longitude > 180.0)
        throw std::invalid_argument("solar_elevation: longitude out of range");
    if (!std::isfinite(utc_seconds))
        throw std::invalid_argument("solar_elevation: non-finite timestamp");

    const long long day = static_cast<long long>(std::floor(utc_seconds / 86400.0));
    const double day_seconds = utc_seconds - static_cast<double>(day) * 86400.0;
    int year = 0, month = 0, dom = 0;
    civil_from_days(day, year, month, dom);
    if (year < 1900 || year > 2100)
        throw std::invalid_argument("solar_elevation: timestamp outside years 1900-2100");

    const int day_of_year =
        kDaysBeforeMonth[month - 1] + dom + ((is_leap(year) && month > 2) ? 1 : 0);
    const double hour = day_seconds / 3600.0;

    // NOAA low-precision series, fractional year in radians
    const double g = 2.0 * std::numbers::pi / 365.0 * (day_of_year - 1 + (hour - 12.0) / 24.0);
    const double eqtime_min =
        229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) -
                  0.014615 * std::cos(2 * g) - 0.040849 * std::sin(2 * g));
    const double decl_rad = 0.006918 - 0.399912 * std::cos(g) + 0.070257 * std::sin(g) -
                            0.006758 * std::cos(2 * g) + 0.000907 * std::sin(2 * g) -
                            0.002697 * std::cos(3 * g) + 0.00148 * std::sin(3 * g);

    double tst_min = std::fmod(day_seconds / 60.0 + eqtime_min + 4.0 * loc.longitude, 1440.0);
    if (tst_min < 0.0) tst_min += 1440.0;
    const double hour_angle_rad = (tst_min / 4.0 - 180.0) * kDegToRad;

    const double lat_rad = loc.latitude * kDegToRad;
    double cos_zenith = std::sin(lat_rad) * std::sin(decl_rad) +
                        std::cos(lat_rad) * std::cos(decl_rad) * std::cos(hour_angle_rad);
    cos_zenith = std::clamp(cos_zenith, -1.0, 1.0);
    return 90.0 - std::acos(cos_zenith) * kRadToDeg;
}

SolarVerdict solar_verdict(double elevation_deg) {
    if (!std::isfinite(elevation_deg))
        throw std::invalid_argument("solar_verdict: non-finite elevation");
    if (elevation_deg > kSolarTwilightBandDeg) return SolarVerdict::kDay;
    if (elevation_deg < -kSolarTwilightBandDeg) return SolarVerdict::kNight;
    return SolarVerdict::kUncertain;
}

DayNightVerdict fuse(DayNight vision, SolarVerdict solar, std::optional<DayNight> ambient) {
    DayNightVerdict verdict;
    verdict.sources.vision = true;
    verdict.sources.solar = solar != SolarVerdict::kUncertain;
    verdict.sources.ambient = ambient.has_value();

    int night_votes = vision == DayNight::kNight ? 1 : 0;
    if (solar == SolarVerdict::kNight) ++night_votes;
    if (ambient && *ambient == DayNight::kNight) ++night_votes;

    const int voting = verdict.sources.count();
    verdict.state = night_votes > 0 ? DayNight::kNight : DayNight::kDay;
    const int agreeing = verdict.state == DayNight::kNight ? night_votes : voting - night_votes;
    verdict.confidence = static_cast<double>(agreeing) / static_cast<double>(voting);
    return verdict;
}

double utc_from_civil(const CivilDateTime& civil) {
    return static_cast<double>(days_from_civil(civil.year, civil.month, civil.day)) * 86400.0 +
           civil.hour * 3600.0 + civil.minute * 60.0 + civil.second;
}

std::optional<double> parse_utc(std::string_view text) {
    std::string s(text);
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.pop_back();
    for (char& c : s)
        if (c == 'T') c = ' ';

    CivilDateTime civil;
    int seconds = 0;
    int matched = std::sscanf(s.c_str(), "%d-%d-%d %d:%d:%d", &civil.year, &civil.month,
                              &civil.day, &civil.hour, &civil.minute, &seconds);
    if (matched != 5 && matched != 6) return std::nullopt;
    if (civil.month < 1 || civil.month > 12 || civil.day < 1 || civil.day > 31) return std::nullopt;
    if (civil.hour < 0 || civil.hour > 23 || civil.minute < 0 || civil.minute > 59)
        return std::nullopt;
    if (seconds < 0 || seconds > 60) return std::nullopt;
    civil.second = seconds;
    return utc_from_civil(civil);
}

}  // namespace streetlight
