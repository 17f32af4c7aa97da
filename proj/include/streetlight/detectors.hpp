#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "streetlight/metrics.hpp"
#include "streetlight/segmask.hpp"

namespace streetlight {

struct DetectorOutput {
    SegMask mask;                  // reduced 3-class mask
    std::optional<ProbMap> probs;  // when present, argmax equals mask everywhere
    std::string source_id;
};

struct PerturbationParams {
    double flip_rate = 0.0;  // [0, 1]
    std::uint64_t seed = 0;
};

// Directory of class-index PGM rasters, one per frame, keyed by basename.
// This is the exchange contract for any externally trained model.
class MaskRepository {
public:
    explicit MaskRepository(std::filesystem::path dir, int num_classes = kReducedClasses);

    SegMask load(const std::string& frame_id) const;  // NotFoundError / FormatError
    bool contains(const std::string& frame_id) const;
    std::vector<std::string> frame_ids() const;  // sorted
    const std::filesystem::path& dir() const { return dir_; }
    int num_classes() const { return num_classes_; }

private:
    std::filesystem::path dir_;
    int num_classes_;
};

// Detection backends standing in for the trained segmentation model. All are
// read-only after construction; concurrent detect calls are safe.
class Detector {
public:
    virtual ~Detector() = default;
    virtual DetectorOutput detect(const std::string& frame_id) const = 0;
};

// Ground-truth pass-through with one-hot probabilities. Evaluating its output
// against the same truth store is the all-metrics-equal-1 fixed point.
class OracleDetector : public Detector {
public:
    explicit OracleDetector(MaskRepository truth_store) : truth_(std::move(truth_store)) {}
    DetectorOutput detect(const std::string& frame_id) const override;

private:
    MaskRepository truth_;
};

// Reads exported prediction masks unchanged; no probabilities.
class FileDetector : public Detector {
public:
    explicit FileDetector(MaskRepository predictions) : predictions_(std::move(predictions)) {}
    DetectorOutput detect(const std::string& frame_id) const override;

private:
    MaskRepository predictions_;
};

// Ground truth degraded by seeded i.i.d. pixel noise, for controlled
// model-error sweeps.
class PerturbedOracleDetector : public Detector {
public:
    PerturbedOracleDetector(MaskRepository truth_store, PerturbationParams params)
        : truth_(std::move(truth_store)), params_(params) {}
    DetectorOutput detect(const std::string& frame_id) const override;

private:
    MaskRepository truth_;
    PerturbationParams params_;
};

// Each pixel independently flips to one of the other classes with probability
// flip_rate. Draw order is pinned for replay: pixels in row-major order, one
// [0,1) draw per pixel, and one extra integer draw when the pixel flips, with
// target = (label + 1 + draw mod (K-1)) mod K.
SegMask perturb(const SegMask& mask, const PerturbationParams& params);

ProbMap one_hot_probs(const SegMask& mask);

}  // namespace streetlight
