#pragma once

#include <stdexcept>
#include <string>

namespace streetlight {

// Malformed input documents: class maps, PNM rasters, mask files.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested frame/mask/file does not exist.
struct NotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid lamp configuration (duplicate ids, out-of-range values).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent simulation scenario document.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mean was requested but every contributing value is undefined.
struct EmptyMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Savings ratio against a zero-energy baseline.
struct UndefinedSavingsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace streetlight
