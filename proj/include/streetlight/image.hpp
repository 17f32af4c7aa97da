#pragma once

#include <cstdint>
#include <vector>

namespace streetlight {

// 8-bit RGB frame, row-major, 3 bytes per pixel.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // R,G,B triples, width*height*3 bytes
    double timestamp = 0.0;            // UTC seconds, may be fractional

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

// Single-channel 8-bit luma image.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width*height bytes

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

// Ambient-brightness estimate in [0, 1].
struct BrightnessEstimate {
    double value = 0.0;
};

// Throws std::invalid_argument if the buffer does not match the dimensions.
void validate(const Frame& frame);
void validate(const GrayImage& image);

// Keeps frames at indices 0, keep_every, 2*keep_every, ... in order.
std::vector<Frame> decimate_frames(const std::vector<Frame>& frames, std::size_t keep_every);

// BT.601 luma: round half-up of 0.299 R + 0.587 G + 0.114 B, clamped to [0, 255].
GrayImage to_grayscale(const Frame& frame);

// Median of the (2*radius+1)^2 neighborhood, borders replicate-padded.
GrayImage median_denoise(const GrayImage& image, int radius = 1);

// Arithmetic mean of all luma values, scaled to [0, 1].
BrightnessEstimate mean_brightness(const GrayImage& image);

}  // namespace streetlight
