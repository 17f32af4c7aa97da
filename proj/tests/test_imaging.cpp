#include <sstream>

#include "doctest.h"
#include "streetlight/errors.hpp"
#include "streetlight/image.hpp"
#include "streetlight/pnm.hpp"
#include "streetlight/rng.hpp"
#include "testutil.hpp"

using namespace streetlight;

TEST_CASE("decimate_frames keeps every k-th frame") {
    std::vector<Frame> frames;
    for (int i = 0; i < 10; ++i) {
        Frame f = testutil::solid_frame(2, 2, 0, 0, 0);
        f.timestamp = i;
        frames.push_back(f);
    }

    SUBCASE("keep_every=1 is the identity") {
        const auto kept = decimate_frames(frames, 1);
        REQUIRE(kept.size() == 10);
        for (int i = 0; i < 10; ++i) CHECK(kept[i].timestamp == i);
    }
    SUBCASE("keep_every=3 keeps indices 0,3,6,9") {
        const auto kept = decimate_frames(frames, 3);
        REQUIRE(kept.size() == 4);
        CHECK(kept[0].timestamp == 0);
        CHECK(kept[1].timestamp == 3);
        CHECK(kept[2].timestamp == 6);
        CHECK(kept[3].timestamp == 9);
    }
    SUBCASE("empty input stays empty") {
        CHECK(decimate_frames({}, 5).empty());
    }
    SUBCASE("keep_every=0 is rejected") {
        CHECK_THROWS_AS(decimate_frames(frames, 0), std::invalid_argument);
    }
}

TEST_CASE("to_grayscale uses BT.601 weights with half-up rounding") {
    CHECK(to_grayscale(testutil::solid_frame(1, 1, 255, 255, 255)).pixels[0] == 255);
    CHECK(to_grayscale(testutil::solid_frame(1, 1, 0, 0, 0)).pixels[0] == 0);
    // 0.299 * 255 = 76.245 -> 76
    CHECK(to_grayscale(testutil::solid_frame(1, 1, 255, 0, 0)).pixels[0] == 76);
    // 0.587 * 255 = 149.685 -> 150
    CHECK(to_grayscale(testutil::solid_frame(1, 1, 0, 255, 0)).pixels[0] == 150);

    SUBCASE("gray input maps to itself") {
        for (int v : {0, 1, 17, 127, 128, 200, 254, 255}) {
            const auto gray = to_grayscale(
                testutil::solid_frame(1, 1, std::uint8_t(v), std::uint8_t(v), std::uint8_t(v)));
            CHECK(gray.pixels[0] == v);
        }
    }
    SUBCASE("bad buffer is rejected") {
        Frame broken = testutil::solid_frame(2, 2, 1, 2, 3);
        broken.pixels.pop_back();
        CHECK_THROWS_AS(to_grayscale(broken), std::invalid_argument);
    }
}

TEST_CASE("median_denoise") {
    SUBCASE("constant image is a fixed point") {
        const auto out = median_denoise(testutil::gray_of(5, 4, 7), 1);
        for (auto v : out.pixels) CHECK(v == 7);
    }
    SUBCASE("single salt pixel is removed") {
        GrayImage image = testutil::gray_of(3, 3, 0);
        image.pixels[4] = 255;  // center
        const auto out = median_denoise(image, 1);
        CHECK(out.pixels[4] == 0);
    }
    SUBCASE("1x1 image with replicate padding keeps its value") {
        CHECK(median_denoise(testutil::gray_of(1, 1, 42), 1).pixels[0] == 42);
    }
    SUBCASE("radius larger than the image is rejected") {
        CHECK_THROWS_AS(median_denoise(testutil::gray_of(3, 3, 0), 4), std::invalid_argument);
    }
    SUBCASE("output stays inside the input range") {
        SplitMix64 rng(99);
        GrayImage image = testutil::gray_of(9, 7, 0);
        for (auto& v : image.pixels) v = static_cast<std::uint8_t>(rng.next_below(256));
        std::uint8_t lo = 255, hi = 0;
        for (auto v : image.pixels) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (int radius : {1, 2, 3}) {
            const auto out = median_denoise(image, radius);
            for (auto v : out.pixels) {
                CHECK(v >= lo);
                CHECK(v <= hi);
            }
        }
    }
}

TEST_CASE("mean_brightness") {
    CHECK(mean_brightness(testutil::gray_of(4, 4, 0)).value == 0.0);
    CHECK(mean_brightness(testutil::gray_of(4, 4, 255)).value == 1.0);

    SUBCASE("2x1 fixture averages to exactly 0.4") {
        GrayImage image = testutil::gray_of(2, 1, 0);
        image.pixels = {51, 153};
        CHECK(mean_brightness(image).value == 0.4);
    }
    SUBCASE("invariant under pixel permutation") {
        SplitMix64 rng(5);
        GrayImage image = testutil::gray_of(8, 8, 0);
        for (auto& v : image.pixels) v = static_cast<std::uint8_t>(rng.next_below(256));
        GrayImage shuffled = image;
        // Fisher-Yates with the pinned generator
        for (std::size_t i = shuffled.pixels.size(); i > 1; --i)
            std::swap(shuffled.pixels[i - 1], shuffled.pixels[rng.next_below(i)]);
        CHECK(mean_brightness(image).value == mean_brightness(shuffled).value);
    }
    SUBCASE("zero-pixel image is rejected") {
        GrayImage empty;
        CHECK_THROWS_AS(mean_brightness(empty), std::invalid_argument);
    }
}

TEST_CASE("splitmix64 matches its published reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next_u64() == 0x06C45D188009454FULL);

    SplitMix64 doubles(42);
    const double first = doubles.next_double();
    CHECK(first >= 0.0);
    CHECK(first < 1.0);
    CHECK(first == doctest::Approx(0.7415648787718233).epsilon(1e-15));
}

TEST_CASE("PPM/PGM round-trips and header handling") {
    SUBCASE("P6 round-trip") {
        Frame frame = testutil::solid_frame(3, 2, 10, 20, 30);
        frame.pixels[0] = 99;
        std::stringstream buffer;
        write_ppm(buffer, frame);
        const Frame back = read_ppm(buffer, "<test>");
        CHECK(back.width == 3);
        CHECK(back.height == 2);
        CHECK(back.pixels == frame.pixels);
    }
    SUBCASE("P5 round-trip with comment in header") {
        std::stringstream buffer;
        buffer << "P5\n# a comment\n2 2\n255\n";
        buffer.write("\x01\x02\x03\x04", 4);
        const GrayImage image = read_pgm(buffer, "<test>");
        CHECK(image.width == 2);
        CHECK(image.pixels == std::vector<std::uint8_t>{1, 2, 3, 4});
    }
    SUBCASE("truncated raster is a format error") {
        std::stringstream buffer;
        buffer << "P5\n4 4\n255\nxx";
        CHECK_THROWS_AS(read_pgm(buffer, "<test>"), FormatError);
    }
    SUBCASE("wrong magic is a format error") {
        std::stringstream buffer;
        buffer << "P3\n1 1\n255\n";
        CHECK_THROWS_AS(read_ppm(buffer, "<test>"), FormatError);
    }
}

TEST_CASE("timestamps from frame filenames") {
    CHECK(timestamp_from_filename("frames/1500.ppm", 0, 0.2) == 1.5);
    CHECK(timestamp_from_filename("frames/0001.png", 3, 0.2) == 0.001);
    CHECK(timestamp_from_filename("frames/scene_a.ppm", 3, 0.2) == doctest::Approx(0.6));
    CHECK(timestamp_from_filename("frames/scene_a.ppm", 0, 0.2) == 0.0);
}
