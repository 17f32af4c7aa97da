#include "streetlight/detectors.hpp"

#include <algorithm>
#include <stdexcept>

#include "streetlight/errors.hpp"
#include "streetlight/rng.hpp"

namespace streetlight {

MaskRepository::MaskRepository(std::filesystem::path dir, int num_classes)
    : dir_(std::move(dir)), num_classes_(num_classes) {
    if (!std::filesystem::is_directory(dir_))
        throw NotFoundError("mask repository " + dir_.string() + " is not a directory");
}

SegMask MaskRepository::load(const std::string& frame_id) const {
    const auto path = dir_ / (frame_id + ".pgm");
    if (!std::filesystem::exists(path))
        throw NotFoundError("no mask for frame '" + frame_id + "' in " + dir_.string());
    return read_mask_pgm(path, num_classes_);
}

bool MaskRepository::contains(const std::string& frame_id) const {
    return std::filesystem::exists(dir_ / (frame_id + ".pgm"));
}

std::vector<std::string> MaskRepository::frame_ids() const {
    std::vector<std::string> ids;
    for (const auto& entry : std::filesystem::directory_iterator(dir_))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            ids.push_back(entry.path().stem().string());
    std::sort(ids.begin(), ids.end());
    return ids;
}

DetectorOutput OracleDetector::detect(const std::string& frame_id) const {
    DetectorOutput out;
    out.mask = truth_.load(frame_id);
    out.probs = one_hot_probs(out.mask);
    out.source_id = frame_id;
    return out;
}

DetectorOutput FileDetector::detect(const std::string& frame_id) const {
    DetectorOutput out;
    out.mask = predictions_.load(frame_id);
    out.source_id = frame_id;
    return out;
}

DetectorOutput PerturbedOracleDetector::detect(const std::string& frame_id) const {
    DetectorOutput out;
    out.mask = perturb(truth_.load(frame_id), params_);
    out.probs = one_hot_probs(out.mask);
    out.source_id = frame_id;
    return out;
}

SegMask perturb(const SegMask& mask, const PerturbationParams& params) {
    validate(mask);
    if (params.flip_rate < 0.0 || params.flip_rate > 1.0)
        throw std::invalid_argument("perturb: flip_rate must be in [0, 1]");
    if (mask.num_classes < 2)
        return mask;  // nothing to flip to

    SegMask out = mask;
    SplitMix64 rng(params.seed);
    const auto k = static_cast<std::uint64_t>(mask.num_classes);
    for (std::uint8_t& label : out.labels) {
        if (rng.next_double() < params.flip_rate) {
            const std::uint64_t offset = 1 + rng.next_below(k - 1);
            label = static_cast<std::uint8_t>((label + offset) % k);
        }
    }
    return out;
}

ProbMap one_hot_probs(const SegMask& mask) {
    validate(mask);
    ProbMap probs;
    probs.width = mask.width;
    probs.height = mask.height;
    probs.num_classes = mask.num_classes;
    probs.values.assign(mask.pixel_count() * mask.num_classes, 0.0);
    for (std::size_t pixel = 0; pixel < mask.labels.size(); ++pixel)
        probs.values[pixel * mask.num_classes + mask.labels[pixel]] = 1.0;
    return probs;
}

}  // namespace streetlight
