#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "streetlight/image.hpp"

namespace streetlight {

// Binary PPM ("P6") and PGM ("P5"), maxval 255. The only raster formats the
// pipeline needs: CamVid-style palette labels travel as P6, class-index masks
// and grayscale frames as P5.

Frame read_ppm(std::istream& in, const std::string& origin = "<stream>");
Frame read_ppm(const std::filesystem::path& path);
void write_ppm(std::ostream& out, const Frame& frame);
void write_ppm(const std::filesystem::path& path, const Frame& frame);

GrayImage read_pgm(std::istream& in, const std::string& origin = "<stream>");
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const GrayImage& image);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

// Timestamp convention for frame directories: a stem of pure digits is the
// capture time in integer milliseconds; anything else falls back to
// sequence_index * frame_interval_s.
double timestamp_from_filename(const std::filesystem::path& path, std::size_t sequence_index,
                               double frame_interval_s);

}  // namespace streetlight
