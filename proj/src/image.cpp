#include "streetlight/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace streetlight {

void validate(const Frame& frame) {
    if (frame.width < 1 || frame.height < 1)
        throw std::invalid_argument("Frame: width and height must be >= 1");
    if (frame.pixels.size() != frame.pixel_count() * 3)
        throw std::invalid_argument("Frame: pixel buffer must hold width*height*3 bytes");
}

void validate(const GrayImage& image) {
    if (image.width < 1 || image.height < 1)
        throw std::invalid_argument("GrayImage: width and height must be >= 1");
    if (image.pixels.size() != image.pixel_count())
        throw std::invalid_argument("GrayImage: pixel buffer must hold width*height bytes");
}

std::vector<Frame> decimate_frames(const std::vector<Frame>& frames, std::size_t keep_every) {
    if (keep_every == 0)
        throw std::invalid_argument("decimate_frames: keep_every must be >= 1");
    std::vector<Frame> kept;
    kept.reserve(frames.size() / keep_every + 1);
    for (std::size_t i = 0; i < frames.size(); i += keep_every)
        kept.push_back(frames[i]);
    return kept;
}

GrayImage to_grayscale(const Frame& frame) {
    validate(frame);
    GrayImage gray;
    gray.width = frame.width;
    gray.height = frame.height;
    gray.pixels.resize(frame.pixel_count());
    for (std::size_t i = 0; i < gray.pixels.size(); ++i) {
        const double r = frame.pixels[3 * i];
        const double g = frame.pixels[3 * i + 1];
        const double b = frame.pixels[3 * i + 2];
        // round half-up, then clamp
        const double luma = std::floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5);
        gray.pixels[i] = static_cast<std::uint8_t>(std::clamp(luma, 0.0, 255.0));
    }
    return gray;
}

GrayImage median_denoise(const GrayImage& image, int radius) {
    validate(image);
    if (radius < 1)
        throw std::invalid_argument("median_denoise: radius must be >= 1");
    if (radius > std::min(image.width, image.height))
        throw std::invalid_argument("median_denoise: radius exceeds image dimensions");

    GrayImage out;
    out.width = image.width;
    out.height = image.height;
    out.pixels.resize(image.pixel_count());

    const int window = 2 * radius + 1;
    std::vector<std::uint8_t> neighborhood(static_cast<std::size_t>(window) * window);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            std::size_t n = 0;
            for (int dy = -radius; dy <= radius; ++dy) {
                const int sy = std::clamp(y + dy, 0, image.height - 1);
                for (int dx = -radius; dx <= radius; ++dx) {
                    const int sx = std::clamp(x + dx, 0, image.width - 1);
                    neighborhood[n++] = image.pixels[static_cast<std::size_t>(sy) * image.width + sx];
                }
            }
            auto mid = neighborhood.begin() + n / 2;
            std::nth_element(neighborhood.begin(), mid, neighborhood.begin() + n);
            out.pixels[static_cast<std::size_t>(y) * image.width + x] = *mid;
        }
    }
    return out;
}

BrightnessEstimate mean_brightness(const GrayImage& image) {
    validate(image);
    if (image.pixels.empty())
        throw std::invalid_argument("mean_brightness: image has no pixels");
    std::uint64_t sum = 0;
    for (std::uint8_t v : image.pixels) sum += v;
    const double mean = static_cast<double>(sum) / static_cast<double>(image.pixels.size());
    return BrightnessEstimate{mean / 255.0};
}

}  // namespace streetlight
