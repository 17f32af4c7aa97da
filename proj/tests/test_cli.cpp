#include <fstream>

#include "doctest.h"
#include "streetlight/cli.hpp"
#include "streetlight/detectors.hpp"
#include "streetlight/errors.hpp"
#include "streetlight/pnm.hpp"
#include "testutil.hpp"

using namespace streetlight;

namespace {

const char* kTwoClassMap =
    "0 0 0    0 void background\n"
    "64 0 128 1 car  vehicle\n";

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Strips the wall-clock manifest line so replays can be compared bytewise.
std::string without_wallclock(std::string text) {
    const auto pos = text.find("\"created_utc\"");
    if (pos == std::string::npos) return text;
    const auto line_end = text.find('\n', pos);
    text.erase(pos, line_end - pos);
    return text;
}

}  // namespace

TEST_CASE("cmd_ingest converts palette labels") {
    testutil::TempDir dir("ingest");
    const auto labels = dir.path() / "labels";
    const auto out = dir.path() / "masks";
    std::filesystem::create_directories(labels);
    const auto map_path = dir.path() / "classes.txt";
    write_file(map_path, kTwoClassMap);

    Frame car = testutil::solid_frame(4, 4, 64, 0, 128);
    Frame background = testutil::solid_frame(4, 4, 0, 0, 0);
    write_ppm(labels / "a.ppm", car);
    write_ppm(labels / "b.ppm", background);
    write_ppm(labels / "c.ppm", background);

    SUBCASE("three labels convert to three masks") {
        const auto result = cli::cmd_ingest({labels, map_path, out, true});
        CHECK(result.converted == 3);
        CHECK(result.category_pixels[1] == 16);  // one all-car image
        CHECK(result.category_pixels[0] == 32);
        const SegMask mask = read_mask_pgm(out / "a.pgm", 3);
        for (auto label : mask.labels) CHECK(label == kVehicleIndex);
    }
    SUBCASE("empty directory converts nothing") {
        testutil::TempDir empty("ingest_empty");
        const auto result = cli::cmd_ingest({empty.path(), map_path, out, true});
        CHECK(result.converted == 0);
    }
    SUBCASE("unknown color in strict mode names the file") {
        write_ppm(labels / "z.ppm", testutil::solid_frame(2, 2, 9, 9, 9));
        CHECK_THROWS_WITH_AS(cli::cmd_ingest({labels, map_path, out, true}),
                             doctest::Contains("z.ppm"), FormatError);
        CHECK(cli::run({"ingest", labels.string(), map_path.string(), out.string(),
                        "--strict"}) != 0);
    }
    SUBCASE("corrupt image names the file") {
        write_file(labels / "broken.ppm", "P6\n4 4\n255\nxx");
        CHECK_THROWS_WITH_AS(cli::cmd_ingest({labels, map_path, out, false}),
                             doctest::Contains("broken.ppm"), FormatError);
    }
    SUBCASE("through the CLI entry point") {
        CHECK(cli::run({"ingest", labels.string(), map_path.string(), out.string()}) == 0);
        CHECK(std::filesystem::exists(out / "b.pgm"));
    }
}

TEST_CASE("cmd_evaluate") {
    testutil::TempDir dir("evaluate");
    const auto pred = dir.path() / "pred";
    const auto truth = dir.path() / "truth";
    std::filesystem::create_directories(pred);
    std::filesystem::create_directories(truth);

    for (int i = 0; i < 3; ++i) {
        const SegMask mask = testutil::random_mask(8, 8, 3, 40 + static_cast<std::uint64_t>(i));
        write_mask_pgm(truth / ("f" + std::to_string(i) + ".pgm"), mask);
        write_mask_pgm(pred / ("f" + std::to_string(i) + ".pgm"), mask);
    }

    SUBCASE("pred == truth scores 1.0 everywhere") {
        const auto report_path = dir.path() / "report.json";
        const MetricsReport report = cli::cmd_evaluate({pred, truth, report_path, 3, 0});
        CHECK(report.mean_iou == 1.0);
        REQUIRE(report.mean_f1.has_value());
        CHECK(*report.mean_f1 == 1.0);
        CHECK(report.pixel_accuracy == 1.0);

        const std::string json_text = read_file(report_path);
        CHECK(json_text.find("\"manifest\"") != std::string::npos);
        CHECK(json_text.find("\"per_image\"") != std::string::npos);
        const std::string csv_text = read_file(dir.path() / "report.csv");
        CHECK(csv_text.find("dataset,1.000000") != std::string::npos);
    }
    SUBCASE("perturbed predictions score strictly worse as the flip rate rises") {
        testutil::TempDir noisy("evaluate_noisy");
        const auto noisy_pred = noisy.path() / "pred";
        std::filesystem::create_directories(noisy_pred);
        double previous = 2.0;
        for (const double rate : {0.1, 0.3}) {
            const MaskRepository truths(truth);
            for (const auto& id : truths.frame_ids())
                write_mask_pgm(noisy_pred / (id + ".pgm"), perturb(truths.load(id), {rate, 11}));
            const MetricsReport report =
                cli::cmd_evaluate({noisy_pred, truth, noisy.path() / "r.json", 3, 0});
            CHECK(report.mean_iou < previous);
            previous = report.mean_iou;
        }
    }
    SUBCASE("re-evaluation is byte-identical outside the wall-clock field") {
        const auto a = dir.path() / "a.json";
        const auto b = dir.path() / "b.json";
        cli::cmd_evaluate({pred, truth, a, 3, 0});
        cli::cmd_evaluate({pred, truth, b, 3, 0});
        CHECK(without_wallclock(read_file(a)) == without_wallclock(read_file(b)));
        CHECK(read_file(dir.path() / "a.csv") == read_file(dir.path() / "b.csv"));
    }
    SUBCASE("basename mismatch lists the missing pair") {
        std::filesystem::remove(pred / "f1.pgm");
        CHECK_THROWS_WITH_AS(cli::cmd_evaluate({pred, truth, dir.path() / "r.json", 3, 0}),
                             doctest::Contains("f1"), NotFoundError);
    }
    SUBCASE("mismatched mask sizes fail") {
        write_mask_pgm(pred / "f0.pgm", testutil::random_mask(4, 4, 3, 1));
        CHECK(cli::run({"evaluate", pred.string(), truth.string(), "--out",
                        (dir.path() / "r.json").string()}) != 0);
    }
}

TEST_CASE("cmd_daynight") {
    testutil::TempDir dir("daynight");

    SUBCASE("all-black image is NIGHT with brightness 0") {
        const auto image_path = dir.path() / "black.ppm";
        write_ppm(image_path, testutil::solid_frame(4, 4, 0, 0, 0));
        cli::DayNightQuery query;
        query.image = image_path;
        const auto answer = cli::cmd_daynight(query);
        CHECK(answer.verdict == "NIGHT");
        CHECK(answer.value == 0.0);
        CHECK(answer.sources == std::vector<std::string>{"vision"});
    }
    SUBCASE("equator at equinox noon is DAY by elevation") {
        cli::DayNightQuery query;
        query.location = GeoLocation{0.0, 0.0};
        query.utc_seconds = parse_utc("2024-03-20 12:07");
        const auto answer = cli::cmd_daynight(query);
        CHECK(answer.verdict == "DAY");
        CHECK(answer.value > 85.0);
        CHECK(answer.sources == std::vector<std::string>{"solar"});
    }
    SUBCASE("image and coordinates together are a usage error") {
        cli::DayNightQuery query;
        query.image = dir.path() / "black.ppm";
        query.location = GeoLocation{0.0, 0.0};
        query.utc_seconds = 0.0;
        CHECK_THROWS_AS(cli::cmd_daynight(query), std::invalid_argument);
    }
    SUBCASE("neither input mode is a usage error") {
        CHECK_THROWS_AS(cli::cmd_daynight({}), std::invalid_argument);
        CHECK(cli::run({"daynight"}) != 0);
    }
    SUBCASE("in-band image resolves to NIGHT via the unknown prior") {
        const auto image_path = dir.path() / "dusk.ppm";
        write_ppm(image_path, testutil::solid_frame(4, 4, 102, 102, 102));  // 0.4: inside band
        cli::DayNightQuery query;
        query.image = image_path;
        const auto answer = cli::cmd_daynight(query);
        CHECK(answer.verdict == "NIGHT");
    }
}

TEST_CASE("cmd_calibrate") {
    testutil::TempDir dir("calibrate");
    const auto day = dir.path() / "day";
    const auto night = dir.path() / "night";
    std::filesystem::create_directories(day);
    std::filesystem::create_directories(night);

    SUBCASE("separable extremes calibrate to an interior threshold with accuracy 1") {
        write_ppm(day / "d0.ppm", testutil::solid_frame(4, 4, 255, 255, 255));
        write_ppm(day / "d1.ppm", testutil::solid_frame(4, 4, 250, 250, 250));
        write_ppm(night / "n0.ppm", testutil::solid_frame(4, 4, 0, 0, 0));
        write_ppm(night / "n1.ppm", testutil::solid_frame(4, 4, 5, 5, 5));
        const auto result = cli::cmd_calibrate({day, night, 0.05, std::nullopt});
        CHECK(result.accuracy == 1.0);
        CHECK(result.threshold > 0.0);
        CHECK(result.threshold < 1.0);
        CHECK(result.thresholds.theta_night < result.thresholds.theta_day);
        CHECK_FALSE(result.degenerate);
    }
    SUBCASE("identical corpora hit exactly majority-class accuracy with a warning") {
        write_ppm(day / "same.ppm", testutil::solid_frame(4, 4, 100, 100, 100));
        write_ppm(night / "same.ppm", testutil::solid_frame(4, 4, 100, 100, 100));
        const auto result = cli::cmd_calibrate({day, night, 0.05, std::nullopt});
        CHECK(result.accuracy == 0.5);
        CHECK(result.degenerate);
    }
    SUBCASE("single image per directory, day brighter") {
        write_ppm(day / "d.ppm", testutil::solid_frame(4, 4, 200, 200, 200));
        write_ppm(night / "n.ppm", testutil::solid_frame(4, 4, 20, 20, 20));
        const auto result = cli::cmd_calibrate({day, night, 0.05, std::nullopt});
        CHECK(result.accuracy == 1.0);
    }
    SUBCASE("empty directory fails") {
        write_ppm(day / "d.ppm", testutil::solid_frame(4, 4, 200, 200, 200));
        CHECK_THROWS_AS(cli::cmd_calibrate({day, night, 0.05, std::nullopt}), NotFoundError);
        CHECK(cli::run({"calibrate", day.string(), night.string()}) != 0);
    }
    SUBCASE("thresholds JSON written with --out") {
        write_ppm(day / "d.ppm", testutil::solid_frame(4, 4, 200, 200, 200));
        write_ppm(night / "n.ppm", testutil::solid_frame(4, 4, 20, 20, 20));
        const auto out = dir.path() / "th.json";
        const auto result = cli::cmd_calibrate({day, night, 0.05, out});
        CHECK(result.accuracy == 1.0);
        const std::string text = read_file(out);
        CHECK(text.find("\"theta_day\"") != std::string::npos);
        CHECK(text.find("\"manifest\"") != std::string::npos);
    }
}

TEST_CASE("cmd_simulate on the bundled demo scenario") {
    testutil::TempDir dir("simulate");
    const auto scenario_path =
        std::filesystem::path(STREETLIGHT_DATA_DIR) / "demo_scenario.json";

    SUBCASE("40% savings and an embedded manifest") {
        const auto out = dir.path() / "report.json";
        const SimReport report = cli::cmd_simulate({scenario_path, out, std::nullopt});
        REQUIRE(report.fleet_savings.has_value());
        CHECK(*report.fleet_savings == 0.4);
        const std::string text = read_file(out);
        CHECK(text.find("\"manifest\"") != std::string::npos);
        CHECK(text.find("\"fnv1a64\"") != std::string::npos);
        CHECK(std::filesystem::exists(dir.path() / "report.csv"));
    }
    SUBCASE("two runs are byte-identical outside the wall-clock field") {
        const auto out_a = dir.path() / "a.json";
        const auto out_b = dir.path() / "b.json";
        cli::cmd_simulate({scenario_path, out_a, std::nullopt});
        cli::cmd_simulate({scenario_path, out_b, std::nullopt});
        CHECK(without_wallclock(read_file(out_a)) == without_wallclock(read_file(out_b)));
    }
    SUBCASE("backwards timestamps exit non-zero through the CLI") {
        nlohmann::json doc;
        doc["clock"] = {{"start_ms", 0}, {"end_ms", 1000}};
        doc["lamps"] = nlohmann::json::array({{{"lamp_id", "L0"}}});
        doc["events"] = nlohmann::json::array();
        doc["events"].push_back({{"time_ms", 900},
                                 {"lamp_id", "L0"},
                                 {"kind", "detection"},
                                 {"presence", {{"vehicle_present", true}}}});
        doc["events"].push_back({{"time_ms", 100},
                                 {"lamp_id", "L0"},
                                 {"kind", "detection"},
                                 {"presence", {{"vehicle_present", true}}}});
        const auto bad = dir.path() / "bad.json";
        write_file(bad, doc.dump());
        CHECK(cli::run({"simulate", bad.string(), "--out", (dir.path() / "r.json").string()}) != 0);
    }
    SUBCASE("seed override is echoed") {
        const auto out = dir.path() / "seeded.json";
        const SimReport report = cli::cmd_simulate({scenario_path, out, 777});
        CHECK(report.seed == 777);
    }
}

TEST_CASE("config file supplies defaults") {
    testutil::TempDir dir("config");
    const auto image_path = dir.path() / "gray.ppm";
    // brightness 0.5: DAY under default 0.45 threshold, NIGHT under a raised one
    write_ppm(image_path, testutil::solid_frame(4, 4, 128, 128, 128));
    const auto config_path = dir.path() / "config.json";
    write_file(config_path, "{\"theta_day\": 0.7, \"theta_night\": 0.6}\n");

    CHECK(cli::run({"daynight", "--image", image_path.string()}) == 0);
    CHECK(cli::run({"--config", config_path.string(), "daynight", "--image",
                    image_path.string()}) == 0);
}
