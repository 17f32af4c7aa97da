#include "doctest.h"
#include "streetlight/control.hpp"
#include "streetlight/errors.hpp"
#include "streetlight/rng.hpp"

using namespace streetlight;

namespace {

LampConfig test_config() {
    LampConfig cfg;
    cfg.lamp_id = "L0";
    cfg.rated_watts = 100.0;
    cfg.dim_level = 0.5;
    cfg.hold_seconds = 10.0;
    return cfg;
}

DayNightVerdict verdict_of(DayNight state) {
    DayNightVerdict v;
    v.state = state;
    v.sources.vision = true;
    v.confidence = 1.0;
    return v;
}

PresenceReport pedestrian() {
    PresenceReport p;
    p.pedestrian_present = true;
    p.pedestrian_fraction = 0.01;
    return p;
}

}  // namespace

TEST_CASE("lamp step transitions") {
    const LampConfig cfg = test_config();
    LampState state = initial_state(cfg);

    SUBCASE("night with pedestrian goes FULL") {
        state = step(state, cfg, verdict_of(DayNight::kNight), pedestrian(), 100.0);
        CHECK(state.mode == LampMode::kFull);
        CHECK(state.brightness == 1.0);
        CHECK(state.last_presence_at == 100.0);
    }
    SUBCASE("night, no presence, expired hold dims to dim_level") {
        state = step(state, cfg, verdict_of(DayNight::kNight), pedestrian(), 100.0);
        state = step(state, cfg, verdict_of(DayNight::kNight), {}, 110.0);  // hold expired
        CHECK(state.mode == LampMode::kDim);
        CHECK(state.brightness == 0.5);
    }
    SUBCASE("night, no presence, inside hold stays FULL") {
        state = step(state, cfg, verdict_of(DayNight::kNight), pedestrian(), 100.0);
        state = step(state, cfg, verdict_of(DayNight::kNight), {}, 109.999);
        CHECK(state.mode == LampMode::kFull);
    }
    SUBCASE("day gate dominates presence") {
        state = step(state, cfg, verdict_of(DayNight::kDay), pedestrian(), 100.0);
        CHECK(state.mode == LampMode::kOff);
        CHECK(state.brightness == 0.0);
    }
    SUBCASE("time going backwards is rejected") {
        state = step(state, cfg, verdict_of(DayNight::kNight), {}, 100.0);
        CHECK_THROWS_AS(step(state, cfg, verdict_of(DayNight::kNight), {}, 99.0),
                        std::invalid_argument);
    }
}

TEST_CASE("randomized controller properties, 1000 seeded sequences") {
    const LampConfig cfg = test_config();
    SplitMix64 rng(20240317);

    for (int sequence = 0; sequence < 1000; ++sequence) {
        LampState state = initial_state(cfg);
        double now = static_cast<double>(rng.next_below(1000));
        for (int i = 0; i < 20; ++i) {
            now += static_cast<double>(rng.next_below(30));
            const bool day = rng.next_below(4) == 0;
            PresenceReport presence;
            if (rng.next_below(3) == 0) {
                presence.vehicle_present = true;
                presence.vehicle_fraction = 0.25;
            }
            state = step(state, cfg, verdict_of(day ? DayNight::kDay : DayNight::kNight),
                         presence, now);

            if (day) CHECK(state.brightness == 0.0);
            if (!day && presence.any()) {
                CHECK(state.mode == LampMode::kFull);
                CHECK(state.brightness == 1.0);
            }
            if (state.mode == LampMode::kDim) CHECK(state.brightness <= 0.5);
            CHECK((state.brightness == 0.0 || state.brightness == cfg.dim_level ||
                   state.brightness == 1.0));
        }
    }
}

TEST_CASE("presence monotonicity: adding presence never lowers brightness afterwards") {
    const LampConfig cfg = test_config();
    const std::vector<double> times{0, 3, 7, 12, 18, 25, 31};

    auto run = [&](bool with_presence_at_7) {
        LampState state = initial_state(cfg);
        std::vector<double> brightness;
        for (double t : times) {
            PresenceReport presence;
            if (with_presence_at_7 && t == 7) presence.vehicle_present = true;
            state = step(state, cfg, verdict_of(DayNight::kNight), presence, t);
            brightness.push_back(state.brightness);
        }
        return brightness;
    };

    const auto without = run(false);
    const auto with = run(true);
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(with[i] >= without[i]);
}

TEST_CASE("brightness timeline invariants") {
    BrightnessTimeline timeline;
    timeline.record(0.0, 0.5);
    timeline.record(10.0, 0.5);  // no-op change dropped
    timeline.record(20.0, 1.0);
    timeline.record(20.0, 0.75);  // same-instant update replaces
    REQUIRE(timeline.points.size() == 2);
    CHECK(timeline.points[1].brightness == 0.75);

    SUBCASE("same-instant replacement collapsing to a no-op removes the point") {
        BrightnessTimeline t2;
        t2.record(0.0, 0.5);
        t2.record(5.0, 1.0);
        t2.record(5.0, 0.5);
        CHECK(t2.points.size() == 1);
        CHECK(t2.points[0].brightness == 0.5);
    }
}

TEST_CASE("energy integration") {
    SUBCASE("FULL for one hour at 100 W is 100 Wh") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 1.0);
        CHECK(energy_wh(timeline, 100.0, 3600.0) == 100.0);
    }
    SUBCASE("DIM 0.5 for one hour at 100 W is 50 Wh") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 0.5);
        CHECK(energy_wh(timeline, 100.0, 3600.0) == 50.0);
    }
    SUBCASE("10-hour night, 2 h FULL + 8 h DIM: exactly 600 Wh") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 1.0);
        timeline.record(7200.0, 0.5);
        CHECK(energy_wh(timeline, 100.0, 36000.0) == 600.0);
    }
    SUBCASE("energy of a concatenation equals the sum of the parts") {
        BrightnessTimeline whole;
        whole.record(0.0, 1.0);
        whole.record(100.0, 0.25);
        whole.record(400.0, 0.5);

        BrightnessTimeline first, second;
        first.record(0.0, 1.0);
        first.record(100.0, 0.25);
        second.record(250.0, 0.25);
        second.record(400.0, 0.5);
        const double split =
            energy_wh(first, 60.0, 250.0) + energy_wh(second, 60.0, 900.0);
        CHECK(energy_wh(whole, 60.0, 900.0) == doctest::Approx(split).epsilon(1e-12));
    }
    SUBCASE("horizon before the last point is rejected") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 1.0);
        timeline.record(50.0, 0.5);
        CHECK_THROWS_AS(energy_wh(timeline, 100.0, 10.0), std::invalid_argument);
    }
    SUBCASE("unsorted timeline is rejected") {
        BrightnessTimeline timeline;
        timeline.points = {{10.0, 1.0}, {5.0, 0.5}};
        CHECK_THROWS_AS(energy_wh(timeline, 100.0, 100.0), std::invalid_argument);
    }
}

TEST_CASE("savings against the always-FULL baseline") {
    const LampConfig cfg = test_config();

    SUBCASE("timeline identical to the baseline saves nothing") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 1.0);
        const Interval night{0.0, 36000.0};
        CHECK(savings_vs_baseline(timeline, cfg, {&night, 1}) == 0.0);
    }
    SUBCASE("600 Wh against a 1000 Wh baseline saves exactly 40%") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 1.0);
        timeline.record(7200.0, 0.5);
        const Interval night{0.0, 36000.0};
        CHECK(savings_vs_baseline(timeline, cfg, {&night, 1}) == 0.4);
    }
    SUBCASE("all-night DIM at 0.5 saves exactly half") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 0.5);
        const Interval night{0.0, 36000.0};
        CHECK(savings_vs_baseline(timeline, cfg, {&night, 1}) == 0.5);
    }
    SUBCASE("zero-length night makes savings undefined") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 1.0);
        const Interval night{5.0, 5.0};
        CHECK_THROWS_AS(savings_vs_baseline(timeline, cfg, {&night, 1}), UndefinedSavingsError);
    }
    SUBCASE("overlapping intervals are rejected") {
        BrightnessTimeline timeline;
        timeline.record(0.0, 1.0);
        const std::vector<Interval> nights{{0.0, 10.0}, {5.0, 20.0}};
        CHECK_THROWS_AS(savings_vs_baseline(timeline, cfg, nights), std::invalid_argument);
    }
}

TEST_CASE("lamp config validation") {
    LampConfig cfg = test_config();
    CHECK_NOTHROW(validate(cfg));
    cfg.dim_level = 0.6;  // above the 50% bound
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.dim_level = 0.5;
    cfg.rated_watts = 0.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}
