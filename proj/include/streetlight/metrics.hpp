#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "streetlight/segmask.hpp"

namespace streetlight {

// K x K pixel counts, counts[truth][pred]. Single aggregation point for every
// reported metric, so dataset-level numbers come from one accumulated matrix
// rather than averaged per-image scores.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(int num_classes);

    int num_classes() const { return k_; }
    std::uint64_t at(int truth, int pred) const;
    std::uint64_t& at(int truth, int pred);

    std::uint64_t total() const;
    std::uint64_t truth_sum(int c) const;      // row: pixels whose ground truth is c
    std::uint64_t predicted_sum(int c) const;  // column: pixels predicted as c

private:
    int k_;
    std::vector<std::uint64_t> counts_;
};

ConfusionMatrix confusion(const SegMask& pred, const SegMask& truth);
ConfusionMatrix accumulate(const ConfusionMatrix& a, const ConfusionMatrix& b);

// A per-class score with its 0/0 flag. Undefined values are excluded from
// means instead of being coerced to 0 or 1.
struct MetricValue {
    double value = 0.0;
    bool defined = false;
};

// Jaccard index for class c: intersection / union of truth and prediction.
// Undefined when the class is absent from both maps.
MetricValue class_iou(const ConfusionMatrix& cm, int c);

// Mean of the defined per-class IoUs. Throws EmptyMetricError if no class is
// present in either map.
double mean_iou(const ConfusionMatrix& cm);

struct PrecisionRecallF1 {
    MetricValue precision;
    MetricValue recall;
    MetricValue f1;
};

PrecisionRecallF1 precision_recall_f1(const ConfusionMatrix& cm, int c);

// Per-pixel class-probability map (softmax-style output).
struct ProbMap {
    int width = 0;
    int height = 0;
    int num_classes = 0;
    std::vector<double> values;  // pixel-major: values[pixel*K + class]

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    double at(std::size_t pixel, int c) const { return values[pixel * num_classes + c]; }
};

// Throws std::invalid_argument if any per-pixel vector has a negative entry
// or does not sum to 1 within 1e-6.
void validate(const ProbMap& probs);

inline constexpr double kCrossEntropyEpsilon = 1e-7;

// Negative mean log-likelihood of the true class over all pixels of all
// sample pairs, probabilities clamped below at epsilon.
double cross_entropy(std::span<const ProbMap> probs, std::span<const SegMask> truths,
                     double epsilon = kCrossEntropyEpsilon);

struct ClassReport {
    std::string name;
    MetricValue iou;
    MetricValue precision;
    MetricValue recall;
    MetricValue f1;
};

struct MetricsReport {
    int num_classes = 0;
    std::vector<ClassReport> per_class;
    double mean_iou = 0.0;
    std::optional<double> mean_f1;  // absent when every per-class F1 is undefined
    double pixel_accuracy = 0.0;
    std::optional<double> cross_entropy;  // present only when ProbMaps were supplied
    std::uint64_t total_pixels = 0;
    // How 0/0 per-class values enter the means; recorded in every report.
    std::string undefined_policy = "excluded-from-means";
};

MetricsReport make_report(const ConfusionMatrix& cm, std::vector<std::string> class_names,
                          std::optional<double> cross_entropy_value = std::nullopt);

// Serializations carry floats at fixed 6-decimal precision so reports are
// byte-stable across runs.
nlohmann::ordered_json report_to_json(const MetricsReport& report);
std::string report_csv_header(const MetricsReport& report);
std::string report_csv_row(const MetricsReport& report, const std::string& row_id);

// 6-decimal fixed formatting shared by reports and CLI summaries.
std::string format_fixed6(double value);

}  // namespace streetlight
