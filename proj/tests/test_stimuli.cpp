#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "lplc2/error.hpp"
#include "lplc2/stimuli.hpp"

using namespace lplc2;

namespace {

// Total darkness (in units of fully dark pixels) relative to mid-gray.
double dark_mass(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m += (kMidGray - v) / kMidGray;
    return m;
}

ErrorCode render_error(const StimulusSpec& spec) {
    try {
        render(spec);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("render should have failed");
    return ErrorCode::io;
}

}  // namespace

TEST_CASE("built-in scenario set") {
    const auto all = builtin_scenarios();
    std::set<std::string> names;
    for (const auto& [name, spec] : all) names.insert(name);
    CHECK(names == std::set<std::string>{"dark_loom", "dark_recede", "bright_loom", "bright_recede", "translate",
                                         "grating", "four_phase", "six_object"});
    for (const char* name : {"dark_loom", "dark_recede", "bright_loom", "bright_recede", "translate", "grating"}) {
        const auto& s = all.at(name);
        CHECK(s.width == 100);
        CHECK(s.height == 100);
        CHECK(s.frames == 50);
        CHECK(s.fps == 33.0);
        CHECK_NOTHROW(s.validate());
    }
    const auto& fp = all.at("four_phase");
    CHECK(fp.width == 320);
    CHECK(fp.height == 240);
    CHECK(fp.frames == 400);
    REQUIRE(fp.objects.size() == 5);
    const int onsets[] = {0, 100, 200, 300, 300};
    for (int k = 0; k < 5; ++k) {
        CHECK(fp.objects[k].onset == onsets[k]);
        CHECK(fp.objects[k].offset == onsets[k] + 100);
        CHECK(fp.objects[k].polarity == Polarity::dark);
    }
    // phase 4: one object upper-left, one lower-right
    const Point2 a = fp.objects[3].center_path[300];
    const Point2 b = fp.objects[4].center_path[300];
    CHECK((a.x < 160 && a.y < 120));
    CHECK((b.x > 160 && b.y > 120));

    const auto& six = all.at("six_object");
    CHECK(six.width == 320);
    CHECK(six.height == 240);
    REQUIRE(six.objects.size() == 6);
    const int six_onsets[] = {5, 15, 25, 45, 55, 65};
    for (int k = 0; k < 6; ++k) CHECK(six.objects[k].onset == six_onsets[k]);

    CHECK(builtin_scenario("quadrant_loom").width == 320);
    CHECK_THROWS_AS(builtin_scenario("no_such_scene"), Error);
}

TEST_CASE("looming square edge follows the size path") {
    const StimulusSpec spec = builtin_scenario("dark_loom");
    const auto& obj = spec.objects[0];
    const auto frames = render(spec);
    REQUIRE(frames.size() == 50);
    double previous = 0.0;
    for (int t = 0; t < spec.frames; ++t) {
        const double size = obj.size_path[static_cast<std::size_t>(t)];
        CHECK(size >= previous);
        previous = size;
        // rounding to integer levels perturbs each boundary pixel by <= 0.5/128
        const double slack = (4.0 * size + 4.0) * 0.5 / kMidGray + 1e-9;
        CHECK(std::abs(dark_mass(frames[static_cast<std::size_t>(t)]) - size * size) <= slack);
    }
    CHECK(obj.size_path.front() == 6.0);
    for (const auto& f : frames)
        for (double v : f.values()) {
            CHECK(v >= 0.0);
            CHECK(v <= 255.0);
            CHECK(v == std::round(v));
        }
}

TEST_CASE("receding is the looming sequence played backwards") {
    for (const char* pair : {"dark", "bright"}) {
        const auto loom = render(builtin_scenario(std::string(pair) + "_loom"));
        const auto recede = render(builtin_scenario(std::string(pair) + "_recede"));
        REQUIRE(loom.size() == recede.size());
        for (std::size_t t = 0; t < loom.size(); ++t) CHECK(recede[t] == loom[loom.size() - 1 - t]);
    }
}

TEST_CASE("dark and bright looms mirror each other about the background") {
    const auto dark = render(builtin_scenario("dark_loom"));
    const auto bright = render(builtin_scenario("bright_loom"));
    for (std::size_t t = 0; t < dark.size(); ++t)
        for (std::size_t i = 0; i < dark[t].size(); ++i) {
            const double dd = dark[t][i] - kMidGray;
            const double db = bright[t][i] - kMidGray;
            CHECK(dd <= 0.0);
            CHECK(db >= 0.0);
            CHECK((dd == 0.0) == (db == 0.0));
            // coverage c gives -128 c and +127 c before rounding
            CHECK(std::abs(dd * (kBrightLevel - kMidGray) / kMidGray + db) <= 1.0);
        }
}

TEST_CASE("objects appear exactly at their onset frame") {
    const StimulusSpec spec = builtin_scenario("six_object");
    StimulusSpec background = spec;
    background.objects.clear();
    const auto with = render(spec);
    const auto without = render(background);
    for (const auto& obj : spec.objects) {
        const Point2 c = obj.center_path[static_cast<std::size_t>(obj.onset)];
        int first = -1;
        for (int t = 0; t < spec.frames && first < 0; ++t)
            for (int y = static_cast<int>(c.y) - 14; y <= static_cast<int>(c.y) + 14 && first < 0; ++y)
                for (int x = static_cast<int>(c.x) - 14; x <= static_cast<int>(c.x) + 14; ++x)
                    if (with[static_cast<std::size_t>(t)].at(x, y) != without[static_cast<std::size_t>(t)].at(x, y)) {
                        first = t;
                        break;
                    }
        CHECK(first == obj.onset);
    }
}

TEST_CASE("shifting background moves by the configured step") {
    StimulusSpec spec;
    spec.width = 64;
    spec.height = 32;
    spec.frames = 4;
    spec.background = ShiftingImageBackground{"", 3, 7, 40.0};
    const auto frames = render(spec);
    for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 64; ++x) CHECK(frames[t + 1].at(x, y) == frames[t].at((x + 3) % 64, y));
        // the best-matching shift is the configured one
        int best = -1;
        double best_err = std::numeric_limits<double>::infinity();
        for (int s = 0; s < 10; ++s) {
            double err = 0.0;
            for (int y = 0; y < 32; ++y)
                for (int x = 0; x < 64; ++x) {
                    const double d = frames[t + 1].at(x, y) - frames[t].at((x + s) % 64, y);
                    err += d * d;
                }
            if (err < best_err) {
                best_err = err;
                best = s;
            }
        }
        CHECK(best == 3);
    }
    CHECK(frames[0].max() > frames[0].min());
}

TEST_CASE("procedural texture") {
    const ScalarField a = procedural_texture(40, 30, 1, 10.0);
    CHECK(a == procedural_texture(40, 30, 1, 10.0));
    CHECK_FALSE(a == procedural_texture(40, 30, 2, 10.0));
    for (double v : a.values()) {
        CHECK(v >= kMidGray - 10.0 - 1e-9);
        CHECK(v <= kMidGray + 10.0 + 1e-9);
    }
    CHECK(procedural_texture(40, 30, 1, 0.0) == ScalarField(40, 30, kMidGray));
}

TEST_CASE("rendering is deterministic") {
    const StimulusSpec spec = builtin_scenario("grating");
    CHECK(render(spec) == render(spec));
    CHECK(render_frame(spec, 17) == render(spec)[17]);
}

TEST_CASE("time reversal of a delayed object") {
    StimulusSpec spec;
    spec.frames = 20;
    spec.objects.push_back(looming_square(Polarity::dark, {50, 50}, 5, 10, 4.0, 20.0, 20));
    const StimulusSpec r = time_reversed(spec);
    CHECK(r.objects[0].onset == 5);
    CHECK(r.objects[0].offset == 15);
    const auto f = render(spec);
    const auto g = render(r);
    for (int t = 0; t < 20; ++t) CHECK(g[static_cast<std::size_t>(t)] == f[static_cast<std::size_t>(19 - t)]);
    CHECK(time_reversed(r) == spec);
}

TEST_CASE("approach, hold and recede path") {
    const ObjectTrack o = approach_hold_recede({10, 10}, 2, 4, 3, 4, 2.0, 10.0, 20);
    CHECK(o.onset == 2);
    CHECK(o.offset == 13);
    CHECK(o.size_path[2] == 4.0);
    CHECK(o.size_path[5] == 10.0);
    CHECK(o.size_path[6] == 10.0);
    CHECK(o.size_path[8] == 10.0);
    CHECK(o.size_path[9] == 8.0);
    CHECK(o.size_path[12] == 2.0);
    const auto ramp = linear_ramp(6, 1, 5, 0.0, 3.0);
    CHECK(ramp == std::vector<double>{0.0, 0.0, 1.0, 2.0, 3.0, 0.0});
}

TEST_CASE("invalid stimuli") {
    StimulusSpec spec;
    spec.frames = 10;
    spec.objects.push_back(looming_square(Polarity::dark, {3, 50}, 0, 10, 4.0, 12.0, 10));
    CHECK(render_error(spec) == ErrorCode::out_of_bounds);

    StimulusSpec ok;
    ok.frames = 10;
    CHECK_THROWS_AS(render_frame(ok, 10), Error);
    try {
        render_frame(ok, -1);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::out_of_bounds);
    }

    StimulusSpec one = ok;
    one.frames = 1;
    CHECK(render_error(one) == ErrorCode::invalid_value);
    StimulusSpec slow = ok;
    slow.fps = 0.0;
    CHECK(render_error(slow) == ErrorCode::invalid_value);
    StimulusSpec late = ok;
    late.objects.push_back(looming_square(Polarity::dark, {50, 50}, 0, 10, 4.0, 12.0, 10));
    late.objects.back().offset = 12;
    CHECK(render_error(late) == ErrorCode::invalid_value);
    StimulusSpec short_path = ok;
    short_path.objects.push_back(looming_square(Polarity::dark, {50, 50}, 0, 5, 4.0, 12.0, 5));
    CHECK(render_error(short_path) == ErrorCode::invalid_value);
}

TEST_CASE("stimulus documents round-trip") {
    auto all = builtin_scenarios();
    all.merge(extra_scenarios());
    for (const auto& [name, spec] : all) {
        CAPTURE(name);
        CHECK(stimulus_from_json(nlohmann::json::parse(to_json(spec).dump())) == spec);
    }
    StimulusSpec bar;
    ObjectTrack t = looming_square(Polarity::bright, {50, 50}, 0, 50, 4.0, 10.0, 50);
    t.shape = Shape::bar;
    t.aspect = 2.5;
    bar.objects.push_back(t);
    CHECK(stimulus_from_json(to_json(bar)) == bar);

    CHECK_THROWS_AS(stimulus_from_json(nlohmann::json::parse(R"({"background": {"type": "starfield"}})")), Error);
}
