#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "streetlight/classmap.hpp"
#include "streetlight/image.hpp"

namespace streetlight {

inline constexpr std::uint8_t kBackgroundIndex = 0;
inline constexpr std::uint8_t kVehicleIndex = 1;
inline constexpr std::uint8_t kPedestrianIndex = 2;

// Per-pixel class indices. Holds either a full source label space (K classes
// from a ClassMap) or the reduced 3-class space.
struct SegMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;  // row-major, each < num_classes
    int num_classes = 0;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

// Throws std::invalid_argument on any invariant violation.
void validate(const SegMask& mask);

struct DecodeStats {
    std::size_t unknown_pixels = 0;  // non-strict decodes mapped to background
};

// Maps every palette color to its class index. In strict mode an unknown
// color raises FormatError naming the color and pixel location; otherwise it
// counts as background (some CamVid redistributions carry anti-aliased edges).
SegMask decode_palette_mask(const Frame& image, const ClassMap& cmap, bool strict = true,
                            DecodeStats* stats = nullptr);

// Inverse of decode_palette_mask; exact round-trip for masks decoded strictly.
Frame encode_palette_mask(const SegMask& mask, const ClassMap& cmap);

// Collapses a K-class mask to {background, vehicle, pedestrian} through each
// source class's category.
SegMask reduce_classes(const SegMask& mask, const ClassMap& cmap);

struct PresenceReport {
    bool vehicle_present = false;
    bool pedestrian_present = false;
    double vehicle_fraction = 0.0;
    double pedestrian_fraction = 0.0;

    bool any() const { return vehicle_present || pedestrian_present; }
};

// Area-threshold presence verdict over a reduced 3-class mask.
PresenceReport presence(const SegMask& reduced, double min_area_fraction);

inline constexpr double kDefaultMinAreaFraction = 0.001;

// Class-index raster exchange format: binary PGM, pixel value = class index.
SegMask read_mask_pgm(const std::filesystem::path& path, int num_classes);
void write_mask_pgm(const std::filesystem::path& path, const SegMask& mask);

}  // namespace streetlight
