#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "streetlight/agent_net.hpp"
#include "streetlight/daynight.hpp"
#include "streetlight/metrics.hpp"

namespace streetlight::cli {

struct IngestOptions {
    std::filesystem::path label_dir;
    std::filesystem::path class_map_path;
    std::filesystem::path out_dir;
    bool strict = false;
};

struct IngestResult {
    std::size_t converted = 0;
    std::array<std::uint64_t, 3> category_pixels{};  // background, vehicle, pedestrian
    std::size_t unknown_pixels = 0;                  // non-strict decodes only
};

IngestResult cmd_ingest(const IngestOptions& options);

struct EvaluateOptions {
    std::filesystem::path pred_dir;
    std::filesystem::path truth_dir;
    std::filesystem::path out_report;  // JSON; a .csv sibling is written next to it
    int num_classes = kReducedClasses;
    std::uint64_t seed = 0;  // echoed into the manifest
};

MetricsReport cmd_evaluate(const EvaluateOptions& options);

struct DayNightQuery {
    std::optional<std::filesystem::path> image;
    std::optional<GeoLocation> location;  // paired with utc_seconds
    std::optional<double> utc_seconds;
    HysteresisThresholds thresholds;
};

struct DayNightAnswer {
    std::string verdict;     // DAY / NIGHT / UNCERTAIN
    std::string value_name;  // "brightness" or "elevation_deg"
    double value = 0.0;
    std::vector<std::string> sources;
};

DayNightAnswer cmd_daynight(const DayNightQuery& query);

struct CalibrateOptions {
    std::filesystem::path day_dir;
    std::filesystem::path night_dir;
    double band = 0.05;  // hysteresis half-width around the chosen threshold
    std::optional<std::filesystem::path> out_path;
};

struct CalibrationResult {
    double threshold = 0.0;
    HysteresisThresholds thresholds;
    double accuracy = 0.0;
    std::size_t day_images = 0;
    std::size_t night_images = 0;
    bool degenerate = false;  // no better than guessing the majority class
};

CalibrationResult cmd_calibrate(const CalibrateOptions& options);

struct SimulateOptions {
    std::filesystem::path scenario_path;
    std::filesystem::path out_report;
    std::optional<std::uint64_t> seed_override;
};

SimReport cmd_simulate(const SimulateOptions& options);

// Full command-line entry point; returns the process exit code. Diagnostics
// go to stderr, data to files or stdout.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace streetlight::cli
