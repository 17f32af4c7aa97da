#include "streetlight/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "streetlight/errors.hpp"

namespace streetlight {

ConfusionMatrix::ConfusionMatrix(int num_classes) : k_(num_classes) {
    if (num_classes < 1)
        throw std::invalid_argument("ConfusionMatrix: need at least one class");
    counts_.assign(static_cast<std::size_t>(k_) * k_, 0);
}

std::uint64_t ConfusionMatrix::at(int truth, int pred) const {
    return counts_.at(static_cast<std::size_t>(truth) * k_ + pred);
}

std::uint64_t& ConfusionMatrix::at(int truth, int pred) {
    return counts_.at(static_cast<std::size_t>(truth) * k_ + pred);
}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t sum = 0;
    for (std::uint64_t v : counts_) sum += v;
    return sum;
}

std::uint64_t ConfusionMatrix::truth_sum(int c) const {
    std::uint64_t sum = 0;
    for (int p = 0; p < k_; ++p) sum += at(c, p);
    return sum;
}

std::uint64_t ConfusionMatrix::predicted_sum(int c) const {
    std::uint64_t sum = 0;
    for (int t = 0; t < k_; ++t) sum += at(t, c);
    return sum;
}

ConfusionMatrix confusion(const SegMask& pred, const SegMask& truth) {
    validate(pred);
    validate(truth);
    if (pred.width != truth.width || pred.height != truth.height)
        throw std::invalid_argument("confusion: mask dimensions differ");
    if (pred.num_classes != truth.num_classes)
        throw std::invalid_argument("confusion: class counts differ");
    ConfusionMatrix cm(pred.num_classes);
    for (std::size_t i = 0; i < pred.labels.size(); ++i)
        ++cm.at(truth.labels[i], pred.labels[i]);
    return cm;
}

ConfusionMatrix accumulate(const ConfusionMatrix& a, const ConfusionMatrix& b) {
    if (a.num_classes() != b.num_classes())
        throw std::invalid_argument("accumulate: class counts differ");
    ConfusionMatrix sum(a.num_classes());
    for (int t = 0; t < a.num_classes(); ++t)
        for (int p = 0; p < a.num_classes(); ++p)
            sum.at(t, p) = a.at(t, p) + b.at(t, p);
    return sum;
}

MetricValue class_iou(const ConfusionMatrix& cm, int c) {
    if (c < 0 || c >= cm.num_classes())
        throw std::invalid_argument("class_iou: class index out of range");
    const std::uint64_t intersection = cm.at(c, c);
    const std::uint64_t uni = cm.truth_sum(c) + cm.predicted_sum(c) - intersection;
    if (uni == 0) return {0.0, false};  // class absent from both maps
    return {static_cast<double>(intersection) / static_cast<double>(uni), true};
}

double mean_iou(const ConfusionMatrix& cm) {
    double sum = 0.0;
    int defined = 0;
    for (int c = 0; c < cm.num_classes(); ++c) {
        const MetricValue iou = class_iou(cm, c);
        if (iou.defined) {
            sum += iou.value;
            ++defined;
        }
    }
    if (defined == 0)
        throw EmptyMetricError("mean_iou: every class is absent from both maps");
    return sum / defined;
}

PrecisionRecallF1 precision_recall_f1(const ConfusionMatrix& cm, int c) {
    if (c < 0 || c >= cm.num_classes())
        throw std::invalid_argument("precision_recall_f1: class index out of range");
    const std::uint64_t tp = cm.at(c, c);
    const std::uint64_t predicted = cm.predicted_sum(c);
    const std::uint64_t actual = cm.truth_sum(c);

    PrecisionRecallF1 out;
    if (predicted > 0)
        out.precision = {static_cast<double>(tp) / static_cast<double>(predicted), true};
    if (actual > 0)
        out.recall = {static_cast<double>(tp) / static_cast<double>(actual), true};
    if (out.precision.defined && out.recall.defined &&
        out.precision.value + out.recall.value > 0.0) {
        const double p = out.precision.value;
        const double r = out.recall.value;
        out.f1 = {2.0 * p * r / (p + r), true};
    }
    return out;
}

void validate(const ProbMap& probs) {
    if (probs.width < 1 || probs.height < 1 || probs.num_classes < 1)
        throw std::invalid_argument("ProbMap: dimensions and class count must be >= 1");
    if (probs.values.size() != probs.pixel_count() * probs.num_classes)
        throw std::invalid_argument("ProbMap: value buffer must hold width*height*K entries");
    for (std::size_t pixel = 0; pixel < probs.pixel_count(); ++pixel) {
        double sum = 0.0;
        for (int c = 0; c < probs.num_classes; ++c) {
            const double v = probs.at(pixel, c);
            if (v < 0.0)
                throw std::invalid_argument("ProbMap: negative probability");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-6)
            throw std::invalid_argument("ProbMap: per-pixel probabilities must sum to 1");
    }
}

double cross_entropy(std::span<const ProbMap> probs, std::span<const SegMask> truths,
                     double epsilon) {
    if (epsilon <= 0.0)
        throw std::invalid_argument("cross_entropy: epsilon must be positive");
    if (probs.size() != truths.size())
        throw std::invalid_argument("cross_entropy: sample counts differ");
    if (probs.empty())
        throw std::invalid_argument("cross_entropy: no samples");

    double log_sum = 0.0;
    std::uint64_t pixels = 0;
    for (std::size_t s = 0; s < probs.size(); ++s) {
        const ProbMap& p = probs[s];
        const SegMask& t = truths[s];
        validate(p);
        validate(t);
        if (p.width != t.width || p.height != t.height || p.num_classes != t.num_classes)
            throw std::invalid_argument("cross_entropy: prob/truth shape mismatch");
        for (std::size_t pixel = 0; pixel < t.labels.size(); ++pixel) {
            const double y = p.at(pixel, t.labels[pixel]);
            log_sum += std::log(std::max(y, epsilon));
            ++pixels;
        }
    }
    return 0.0 - log_sum / static_cast<double>(pixels);  // +0.0, not -0.0, at perfection
}

MetricsReport make_report(const ConfusionMatrix& cm, std::vector<std::string> class_names,
                          std::optional<double> cross_entropy_value) {
    if (!class_names.empty() && static_cast<int>(class_names.size()) != cm.num_classes())
        throw std::invalid_argument("make_report: class name count mismatch");

    MetricsReport report;
    report.num_classes = cm.num_classes();
    report.total_pixels = cm.total();
    report.cross_entropy = cross_entropy_value;

    double f1_sum = 0.0;
    int f1_defined = 0;
    std::uint64_t diagonal = 0;
    for (int c = 0; c < cm.num_classes(); ++c) {
        ClassReport cls;
        cls.name = class_names.empty() ? "class_" + std::to_string(c) : class_names[c];
        cls.iou = class_iou(cm, c);
        const PrecisionRecallF1 prf = precision_recall_f1(cm, c);
        cls.precision = prf.precision;
        cls.recall = prf.recall;
        cls.f1 = prf.f1;
        if (cls.f1.defined) {
            f1_sum += cls.f1.value;
            ++f1_defined;
        }
        diagonal += cm.at(c, c);
        report.per_class.push_back(std::move(cls));
    }
    report.mean_iou = mean_iou(cm);
    if (f1_defined > 0) report.mean_f1 = f1_sum / f1_defined;
    report.pixel_accuracy =
        report.total_pixels ? static_cast<double>(diagonal) / static_cast<double>(report.total_pixels)
                            : 0.0;
    return report;
}

std::string format_fixed6(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

namespace {

// Rounded to 6 decimals so the JSON text is stable; null when undefined.
nlohmann::ordered_json json_metric(const MetricValue& value) {
    if (!value.defined) return nullptr;
    return std::stod(format_fixed6(value.value));
}

}  // namespace

nlohmann::ordered_json report_to_json(const MetricsReport& report) {
    nlohmann::ordered_json doc;
    doc["num_classes"] = report.num_classes;
    doc["total_pixels"] = report.total_pixels;
    doc["undefined_policy"] = report.undefined_policy;
    doc["mean_iou"] = std::stod(format_fixed6(report.mean_iou));
    doc["mean_f1"] =
        report.mean_f1 ? nlohmann::ordered_json(std::stod(format_fixed6(*report.mean_f1)))
                       : nlohmann::ordered_json(nullptr);
    doc["pixel_accuracy"] = std::stod(format_fixed6(report.pixel_accuracy));
    doc["cross_entropy"] = report.cross_entropy
                               ? nlohmann::ordered_json(std::stod(format_fixed6(*report.cross_entropy)))
                               : nlohmann::ordered_json(nullptr);
    doc["classes"] = nlohmann::ordered_json::array();
    for (const ClassReport& cls : report.per_class) {
        nlohmann::ordered_json entry;
        entry["name"] = cls.name;
        entry["iou"] = json_metric(cls.iou);
        entry["precision"] = json_metric(cls.precision);
        entry["recall"] = json_metric(cls.recall);
        entry["f1"] = json_metric(cls.f1);
        doc["classes"].push_back(std::move(entry));
    }
    return doc;
}

std::string report_csv_header(const MetricsReport& report) {
    std::string header = "id,mean_iou,mean_f1,pixel_accuracy,cross_entropy,total_pixels";
    for (const ClassReport& cls : report.per_class) {
        for (const char* metric : {"iou", "precision", "recall", "f1"}) {
            header += ",";
            header += cls.name;
            header += "_";
            header += metric;
        }
    }
    return header;
}

std::string report_csv_row(const MetricsReport& report, const std::string& row_id) {
    std::string row = row_id;
    row += "," + format_fixed6(report.mean_iou);
    row += ",";
    if (report.mean_f1) row += format_fixed6(*report.mean_f1);
    row += "," + format_fixed6(report.pixel_accuracy);
    row += ",";
    if (report.cross_entropy) row += format_fixed6(*report.cross_entropy);
    row += "," + std::to_string(report.total_pixels);
    for (const ClassReport& cls : report.per_class) {
        for (const MetricValue* value : {&cls.iou, &cls.precision, &cls.recall, &cls.f1}) {
            row += ",";
            if (value->defined) row += format_fixed6(value->value);
        }
    }
    return row;
}

}  // namespace streetlight
