#include "streetlight/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "streetlight/detectors.hpp"
#include "streetlight/errors.hpp"
#include "streetlight/manifest.hpp"
#include "streetlight/pnm.hpp"
#include "streetlight/version.hpp"

namespace streetlight::cli {
namespace {

namespace fs = std::filesystem;

std::vector<fs::path> list_files(const fs::path& dir, std::initializer_list<const char*> exts) {
    if (!fs::is_directory(dir))
        throw NotFoundError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        for (const char* wanted : exts)
            if (ext == wanted) {
                files.push_back(entry.path());
                break;
            }
    }
    std::sort(files.begin(), files.end());
    return files;
}

// One digest per directory: hash of the sorted (basename, content-hash) pairs.
std::string directory_digest(const fs::path& dir, std::initializer_list<const char*> exts) {
    std::string combined;
    for (const fs::path& file : list_files(dir, exts)) {
        combined += file.filename().string();
        combined += ':';
        combined += hex64(fnv1a64_file(file));
        combined += '\n';
    }
    return hex64(fnv1a64(combined.data(), combined.size()));
}

GrayImage load_gray(const fs::path& path) {
    if (path.extension() == ".pgm") return read_pgm(path);
    return to_grayscale(read_ppm(path));
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw NotFoundError("cannot write " + path.string());
    out << text;
}

}  // namespace

IngestResult cmd_ingest(const IngestOptions& options) {
    const ClassMap cmap = ClassMap::load(options.class_map_path);
    const auto labels = list_files(options.label_dir, {".ppm"});
    fs::create_directories(options.out_dir);

    IngestResult result;
    for (const fs::path& label_path : labels) {
        const Frame label = read_ppm(label_path);
        DecodeStats stats;
        SegMask mask;
        try {
            mask = decode_palette_mask(label, cmap, options.strict, &stats);
        } catch (const FormatError& e) {
            throw FormatError(label_path.string() + ": " + e.what());
        }
        const SegMask reduced = reduce_classes(mask, cmap);
        for (std::uint8_t v : reduced.labels) ++result.category_pixels[v];
        result.unknown_pixels += stats.unknown_pixels;
        write_mask_pgm(options.out_dir / (label_path.stem().string() + ".pgm"), reduced);
        ++result.converted;
    }
    return result;
}

MetricsReport cmd_evaluate(const EvaluateOptions& options) {
    const MaskRepository preds(options.pred_dir, options.num_classes);
    const MaskRepository truths(options.truth_dir, options.num_classes);
    const auto pred_ids = preds.frame_ids();
    const auto truth_ids = truths.frame_ids();

    std::vector<std::string> missing;
    for (const auto& id : truth_ids)
        if (!std::binary_search(pred_ids.begin(), pred_ids.end(), id))
            missing.push_back("prediction missing for '" + id + "'");
    for (const auto& id : pred_ids)
        if (!std::binary_search(truth_ids.begin(), truth_ids.end(), id))
            missing.push_back("truth missing for '" + id + "'");
    if (!missing.empty()) {
        std::string what = "pred/truth basenames differ:";
        for (const auto& line : missing) what += "\n  " + line;
        throw NotFoundError(what);
    }
    if (truth_ids.empty())
        throw NotFoundError("no .pgm masks found in " + options.truth_dir.string());

    std::vector<std::string> class_names;
    if (options.num_classes == kReducedClasses)
        class_names = {"background", "vehicle", "pedestrian"};

    ConfusionMatrix dataset(options.num_classes);
    std::vector<std::pair<std::string, MetricsReport>> per_image;
    for (const auto& id : truth_ids) {
        const ConfusionMatrix cm = confusion(preds.load(id), truths.load(id));
        dataset = accumulate(dataset, cm);
        per_image.emplace_back(id, make_report(cm, class_names));
    }
    const MetricsReport report = make_report(dataset, class_names);

    nlohmann::ordered_json config;
    config["pred_dir"] = options.pred_dir.string();
    config["truth_dir"] = options.truth_dir.string();
    config["num_classes"] = options.num_classes;
    RunManifest manifest = make_manifest("evaluate", std::move(config), {}, options.seed);
    manifest.inputs.emplace_back(options.pred_dir.string(),
                                 directory_digest(options.pred_dir, {".pgm"}));
    manifest.inputs.emplace_back(options.truth_dir.string(),
                                 directory_digest(options.truth_dir, {".pgm"}));

    nlohmann::ordered_json doc;
    doc["manifest"] = manifest_to_json(manifest);
    doc["dataset"] = report_to_json(report);
    doc["per_image"] = nlohmann::ordered_json::array();
    for (const auto& [id, image_report] : per_image) {
        nlohmann::ordered_json entry = report_to_json(image_report);
        entry["id"] = id;
        doc["per_image"].push_back(std::move(entry));
    }
    write_text(options.out_report, doc.dump(2) + "\n");

    std::string csv = report_csv_header(report) + "\n" + report_csv_row(report, "dataset") + "\n";
    for (const auto& [id, image_report] : per_image)
        csv += report_csv_row(image_report, id) + "\n";
    fs::path csv_path = options.out_report;
    csv_path.replace_extension(".csv");
    write_text(csv_path, csv);

    return report;
}

DayNightAnswer cmd_daynight(const DayNightQuery& query) {
    const bool image_mode = query.image.has_value();
    const bool solar_mode = query.location.has_value() || query.utc_seconds.has_value();
    if (image_mode == solar_mode)
        throw std::invalid_argument(
            "daynight: supply exactly one of --image or --lat/--lon/--utc");

    DayNightAnswer answer;
    if (image_mode) {
        const GrayImage gray = median_denoise(load_gray(*query.image));
        const BrightnessEstimate b = mean_brightness(gray);
        const DayNight verdict = classify_brightness(b, query.thresholds, DayNightPrior::kUnknown);
        answer.verdict = to_string(verdict);
        answer.value_name = "brightness";
        answer.value = b.value;
        answer.sources = {"vision"};
    } else {
        if (!query.location || !query.utc_seconds)
            throw std::invalid_argument("daynight: --lat, --lon and --utc are required together");
        const double elevation = solar_elevation(*query.location, *query.utc_seconds);
        answer.verdict = to_string(solar_verdict(elevation));
        answer.value_name = "elevation_deg";
        answer.value = elevation;
        answer.sources = {"solar"};
    }
    return answer;
}

CalibrationResult cmd_calibrate(const CalibrateOptions& options) {
    if (!(options.band > 0.0 && options.band <= 0.5))
        throw std::invalid_argument("calibrate: band must be in (0, 0.5]");

    struct Sample {
        double brightness;
        bool is_day;
    };
    std::vector<Sample> samples;
    for (const auto& [dir, is_day] :
         {std::pair{options.day_dir, true}, std::pair{options.night_dir, false}}) {
        const auto files = list_files(dir, {".ppm", ".pgm"});
        if (files.empty())
            throw NotFoundError("calibrate: no images in " + dir.string());
        for (const fs::path& file : files)
            samples.push_back({mean_brightness(load_gray(file)).value, is_day});
    }

    // Exhaustive single-threshold search (DAY iff brightness >= t) over the
    // midpoints of adjacent observed values plus both extremes; ties prefer
    // the smallest threshold.
    std::vector<double> values;
    values.reserve(samples.size());
    for (const Sample& s : samples) values.push_back(s.brightness);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<double> candidates{0.0, 1.0};
    for (std::size_t i = 1; i < values.size(); ++i)
        candidates.push_back(0.5 * (values[i - 1] + values[i]));
    std::sort(candidates.begin(), candidates.end());

    CalibrationResult result;
    result.day_images = static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(), [](const Sample& s) { return s.is_day; }));
    result.night_images = samples.size() - result.day_images;

    std::size_t best_correct = 0;
    double best_threshold = 0.0;
    for (double t : candidates) {
        std::size_t correct = 0;
        for (const Sample& s : samples)
            if ((s.brightness >= t) == s.is_day) ++correct;
        if (correct > best_correct) {
            best_correct = correct;
            best_threshold = t;
        }
    }
    result.threshold = best_threshold;
    result.accuracy = static_cast<double>(best_correct) / static_cast<double>(samples.size());
    result.thresholds.theta_day = std::min(1.0, best_threshold + options.band);
    result.thresholds.theta_night = std::max(0.0, best_threshold - options.band);
    const double majority =
        static_cast<double>(std::max(result.day_images, result.night_images)) /
        static_cast<double>(samples.size());
    result.degenerate = result.accuracy <= majority;

    if (options.out_path) {
        nlohmann::ordered_json config;
        config["day_dir"] = options.day_dir.string();
        config["night_dir"] = options.night_dir.string();
        config["band"] = options.band;
        RunManifest manifest = make_manifest("calibrate", std::move(config), {}, 0);
        manifest.inputs.emplace_back(options.day_dir.string(),
                                     directory_digest(options.day_dir, {".ppm", ".pgm"}));
        manifest.inputs.emplace_back(options.night_dir.string(),
                                     directory_digest(options.night_dir, {".ppm", ".pgm"}));
        nlohmann::ordered_json doc;
        doc["manifest"] = manifest_to_json(manifest);
        doc["threshold"] = result.threshold;
        doc["theta_day"] = result.thresholds.theta_day;
        doc["theta_night"] = result.thresholds.theta_night;
        doc["accuracy"] = result.accuracy;
        doc["day_images"] = result.day_images;
        doc["night_images"] = result.night_images;
        write_text(*options.out_path, doc.dump(2) + "\n");
    }
    return result;
}

SimReport cmd_simulate(const SimulateOptions& options) {
    const Scenario scenario = load_scenario(options.scenario_path);
    NetParams params = scenario.net;
    if (options.seed_override) params.seed = *options.seed_override;
    const SimReport report = run_sim(scenario, params);

    nlohmann::ordered_json config;
    config["scenario"] = options.scenario_path.string();
    config["latency_ms"] = params.latency_ms;
    config["drop_probability"] = params.drop_probability;
    config["gossip_period_s"] = params.gossip_period_s;
    const std::array input_paths{options.scenario_path};
    const RunManifest manifest = make_manifest("simulate", std::move(config), input_paths, params.seed);

    nlohmann::ordered_json doc;
    doc["manifest"] = manifest_to_json(manifest);
    doc["report"] = sim_report_to_json(report);
    write_text(options.out_report, doc.dump(2) + "\n");

    fs::path csv_path = options.out_report;
    csv_path.replace_extension(".csv");
    write_text(csv_path, sim_report_timeline_csv(report));

    return report;
}

namespace {

// Values from --config JSON act as defaults for flags the user did not pass.
class ConfigDefaults {
public:
    void load(const fs::path& path) {
        std::ifstream in(path);
        if (!in)
            throw NotFoundError("cannot open config " + path.string());
        try {
            doc_ = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw FormatError("config " + path.string() + ": " + e.what());
        }
    }

    template <typename T>
    T value(const char* key, T fallback) const {
        if (!doc_.is_object() || !doc_.contains(key)) return fallback;
        return doc_[key].get<T>();
    }

private:
    nlohmann::json doc_;
};

int dispatch(CLI::App& app, int argc, const char* const* argv) {
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Streetlight control-plane simulator and segmentation evaluator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    ConfigDefaults config;
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with default option values")
        ->check(CLI::ExistingFile);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Convert palette labels to 3-class masks");
    IngestOptions ingest_options;
    ingest->add_option("label_dir", ingest_options.label_dir, "Directory of P6 palette labels")
        ->required();
    ingest->add_option("class_map", ingest_options.class_map_path, "Class-map text file")
        ->required();
    ingest->add_option("out_dir", ingest_options.out_dir, "Output directory for P5 masks")
        ->required();
    auto* strict_flag = ingest->add_flag("--strict", ingest_options.strict,
                                         "Fail on unknown palette colors");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score predicted masks against ground truth");
    EvaluateOptions evaluate_options;
    evaluate->add_option("pred_dir", evaluate_options.pred_dir, "Predicted masks (P5)")->required();
    evaluate->add_option("truth_dir", evaluate_options.truth_dir, "Ground-truth masks (P5)")
        ->required();
    evaluate->add_option("--out", evaluate_options.out_report, "Report JSON path")->required();
    auto* classes_opt =
        evaluate->add_option("--classes", evaluate_options.num_classes, "Label-space size");
    evaluate->add_option("--seed", evaluate_options.seed, "Seed echoed into the manifest");

    // daynight
    auto* daynight = app.add_subcommand("daynight", "Classify DAY/NIGHT from an image or sun position");
    std::string image_path, utc_text;
    double lat = 0.0, lon = 0.0;
    auto* image_opt = daynight->add_option("--image", image_path, "Frame to classify (P6/P5)");
    auto* lat_opt = daynight->add_option("--lat", lat, "Latitude, degrees");
    auto* lon_opt = daynight->add_option("--lon", lon, "Longitude, degrees");
    auto* utc_opt = daynight->add_option("--utc", utc_text, "UTC time, YYYY-MM-DD HH:MM[:SS]");
    double theta_day_flag = 0.45, theta_night_flag = 0.35;
    auto* theta_day_opt = daynight->add_option("--theta-day", theta_day_flag, "DAY threshold");
    auto* theta_night_opt =
        daynight->add_option("--theta-night", theta_night_flag, "NIGHT threshold");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Fit day/night thresholds from a corpus");
    CalibrateOptions calibrate_options;
    calibrate->add_option("day_dir", calibrate_options.day_dir, "Daytime images")->required();
    calibrate->add_option("night_dir", calibrate_options.night_dir, "Nighttime images")->required();
    auto* band_opt =
        calibrate->add_option("--band", calibrate_options.band, "Hysteresis half-width");
    std::string calibrate_out;
    calibrate->add_option("--out", calibrate_out, "Write thresholds JSON here");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a lamp-network scenario");
    SimulateOptions simulate_options;
    simulate->add_option("scenario", simulate_options.scenario_path, "Scenario JSON")->required();
    simulate->add_option("--out", simulate_options.out_report, "Report JSON path")->required();
    std::uint64_t simulate_seed = 0;
    auto* sim_seed_opt = simulate->add_option("--seed", simulate_seed, "Override the scenario seed");

    const int parse_code = dispatch(app, argc, argv);
    if (parse_code != 0 || app.get_subcommands().empty()) return parse_code;

    try {
        if (!config_path.empty()) config.load(config_path);

        if (ingest->parsed()) {
            if (!*strict_flag) ingest_options.strict = config.value("strict", false);
            const IngestResult result = cmd_ingest(ingest_options);
            if (result.converted == 0)
                std::cerr << "warning: no .ppm labels found in "
                          << ingest_options.label_dir.string() << "\n";
            if (result.unknown_pixels > 0)
                std::cerr << "warning: " << result.unknown_pixels
                          << " unknown-color pixels mapped to background\n";
            std::cout << "converted " << result.converted << " masks\n";
            const char* names[] = {"background", "vehicle", "pedestrian"};
            for (int c = 0; c < kReducedClasses; ++c)
                std::cout << names[c] << "_pixels=" << result.category_pixels[c] << "\n";
            return 0;
        }
        if (evaluate->parsed()) {
            if (!*classes_opt)
                evaluate_options.num_classes = config.value("classes", kReducedClasses);
            const MetricsReport report = cmd_evaluate(evaluate_options);
            std::cout << "mean_iou=" << format_fixed6(report.mean_iou);
            if (report.mean_f1) std::cout << " mean_f1=" << format_fixed6(*report.mean_f1);
            std::cout << " pixel_accuracy=" << format_fixed6(report.pixel_accuracy) << "\n";
            return 0;
        }
        if (daynight->parsed()) {
            DayNightQuery query;
            if (*image_opt) query.image = image_path;
            if (*lat_opt || *lon_opt || *utc_opt) {
                if (!*lat_opt || !*lon_opt || !*utc_opt)
                    throw std::invalid_argument("daynight: --lat, --lon and --utc go together");
                const auto utc = parse_utc(utc_text);
                if (!utc)
                    throw std::invalid_argument("daynight: cannot parse UTC time '" + utc_text + "'");
                query.location = GeoLocation{lat, lon};
                query.utc_seconds = utc;
            }
            query.thresholds.theta_day =
                *theta_day_opt ? theta_day_flag : config.value("theta_day", 0.45);
            query.thresholds.theta_night =
                *theta_night_opt ? theta_night_flag : config.value("theta_night", 0.35);
            const DayNightAnswer answer = cmd_daynight(query);
            std::cout << answer.verdict << " " << answer.value_name << "="
                      << format_fixed6(answer.value) << " sources=";
            for (std::size_t i = 0; i < answer.sources.size(); ++i)
                std::cout << (i ? "," : "") << answer.sources[i];
            std::cout << "\n";
            return 0;
        }
        if (calibrate->parsed()) {
            if (!*band_opt) calibrate_options.band = config.value("band", 0.05);
            if (!calibrate_out.empty()) calibrate_options.out_path = calibrate_out;
            const CalibrationResult result = cmd_calibrate(calibrate_options);
            if (result.degenerate)
                std::cerr << "warning: corpus is not separable by brightness (accuracy "
                          << format_fixed6(result.accuracy) << ")\n";
            std::cout << "threshold=" << format_fixed6(result.threshold)
                      << " theta_day=" << format_fixed6(result.thresholds.theta_day)
                      << " theta_night=" << format_fixed6(result.thresholds.theta_night)
                      << " accuracy=" << format_fixed6(result.accuracy) << "\n";
            return 0;
        }
        if (simulate->parsed()) {
            if (*sim_seed_opt) simulate_options.seed_override = simulate_seed;
            const SimReport report = cmd_simulate(simulate_options);
            std::cout << "fleet_energy_wh=" << format_fixed6(report.fleet_energy_wh)
                      << " fleet_baseline_wh=" << format_fixed6(report.fleet_baseline_wh)
                      << " savings=";
            if (report.fleet_savings) std::cout << format_fixed6(*report.fleet_savings);
            else std::cout << "n/a";
            std::cout << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> with_program{"streetlight"};
    with_program.insert(with_program.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(with_program.size());
    for (const std::string& arg : with_program) argv.push_back(arg.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace streetlight::cli
