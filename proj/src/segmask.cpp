#include "streetlight/segmask.hpp"

#include <stdexcept>
#include <string>

#include "streetlight/errors.hpp"
#include "streetlight/pnm.hpp"

namespace streetlight {

void validate(const SegMask& mask) {
    if (mask.width < 1 || mask.height < 1)
        throw std::invalid_argument("SegMask: width and height must be >= 1");
    if (mask.num_classes < 1 || mask.num_classes > 256)
        throw std::invalid_argument("SegMask: num_classes must be in 1..256");
    if (mask.labels.size() != mask.pixel_count())
        throw std::invalid_argument("SegMask: label buffer must hold width*height entries");
    for (std::uint8_t label : mask.labels)
        if (label >= mask.num_classes)
            throw std::invalid_argument("SegMask: label " + std::to_string(label) +
                                        " out of range for " + std::to_string(mask.num_classes) +
                                        " classes");
}

SegMask decode_palette_mask(const Frame& image, const ClassMap& cmap, bool strict,
                            DecodeStats* stats) {
    validate(image);
    SegMask mask;
    mask.width = image.width;
    mask.height = image.height;
    mask.num_classes = cmap.num_classes();
    mask.labels.resize(mask.pixel_count());
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        const std::uint8_t r = image.pixels[3 * i];
        const std::uint8_t g = image.pixels[3 * i + 1];
        const std::uint8_t b = image.pixels[3 * i + 2];
        const auto index = cmap.index_of_color(r, g, b);
        if (index) {
            mask.labels[i] = static_cast<std::uint8_t>(*index);
        } else if (strict) {
            const int x = static_cast<int>(i) % image.width;
            const int y = static_cast<int>(i) / image.width;
            throw FormatError("unknown palette color (" + std::to_string(r) + "," +
                              std::to_string(g) + "," + std::to_string(b) + ") at pixel (" +
                              std::to_string(x) + "," + std::to_string(y) + ")");
        } else {
            mask.labels[i] = kBackgroundIndex;
            if (stats) ++stats->unknown_pixels;
        }
    }
    return mask;
}

Frame encode_palette_mask(const SegMask& mask, const ClassMap& cmap) {
    validate(mask);
    if (mask.num_classes != cmap.num_classes())
        throw std::invalid_argument("encode_palette_mask: mask/class-map class count mismatch");
    Frame image;
    image.width = mask.width;
    image.height = mask.height;
    image.pixels.resize(mask.pixel_count() * 3);
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        const auto& color = cmap.entry(mask.labels[i]).color;
        image.pixels[3 * i] = color[0];
        image.pixels[3 * i + 1] = color[1];
        image.pixels[3 * i + 2] = color[2];
    }
    return image;
}

SegMask reduce_classes(const SegMask& mask, const ClassMap& cmap) {
    validate(mask);
    if (mask.num_classes != cmap.num_classes())
        throw std::invalid_argument("reduce_classes: mask/class-map class count mismatch");
    SegMask reduced;
    reduced.width = mask.width;
    reduced.height = mask.height;
    reduced.num_classes = kReducedClasses;
    reduced.labels.resize(mask.pixel_count());
    for (std::size_t i = 0; i < mask.labels.size(); ++i)
        reduced.labels[i] = static_cast<std::uint8_t>(cmap.category_of(mask.labels[i]));
    return reduced;
}

PresenceReport presence(const SegMask& reduced, double min_area_fraction) {
    validate(reduced);
    if (reduced.num_classes != kReducedClasses)
        throw std::invalid_argument("presence: expected a reduced 3-class mask");
    if (min_area_fraction < 0.0 || min_area_fraction > 1.0)
        throw std::invalid_argument("presence: min_area_fraction must be in [0, 1]");
    std::size_t vehicle = 0, pedestrian = 0;
    for (std::uint8_t label : reduced.labels) {
        if (label == kVehicleIndex) ++vehicle;
        else if (label == kPedestrianIndex) ++pedestrian;
    }
    PresenceReport report;
    const double total = static_cast<double>(reduced.pixel_count());
    report.vehicle_fraction = static_cast<double>(vehicle) / total;
    report.pedestrian_fraction = static_cast<double>(pedestrian) / total;
    report.vehicle_present = report.vehicle_fraction >= min_area_fraction;
    report.pedestrian_present = report.pedestrian_fraction >= min_area_fraction;
    return report;
}

SegMask read_mask_pgm(const std::filesystem::path& path, int num_classes) {
    const GrayImage raster = read_pgm(path);
    SegMask mask;
    mask.width = raster.width;
    mask.height = raster.height;
    mask.num_classes = num_classes;
    mask.labels = raster.pixels;
    for (std::uint8_t label : mask.labels)
        if (label >= num_classes)
            throw FormatError(path.string() + ": label " + std::to_string(label) +
                              " out of range for " + std::to_string(num_classes) + " classes");
    return mask;
}

void write_mask_pgm(const std::filesystem::path& path, const SegMask& mask) {
    validate(mask);
    GrayImage raster;
    raster.width = mask.width;
    raster.height = mask.height;
    raster.pixels = mask.labels;
    write_pgm(path, raster);
}

}  // namespace streetlight
