#include <doctest.h>

#include <cmath>
#include <string>

#include "lplc2/config.hpp"
#include "lplc2/error.hpp"

using namespace lplc2;

namespace {

ErrorCode code_of(const std::string& document) {
    try {
        load_config(document);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error for " << document);
    return ErrorCode::io;
}

std::string message_of(const std::string& document) {
    try {
        load_config(document);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("empty document yields the published defaults") {
    const ModelConfig c = load_config("");
    CHECK(c.r_de == 5);
    CHECK(c.r_di == 11);
    CHECK(c.r_dc == 5);
    CHECK(c.sigma_e == 10.0);
    CHECK(c.sigma_i == 20.0);
    CHECK(c.sigma_c == 20.0);
    CHECK(c.epsilon == 0.2);
    CHECK(c.n_c == 5);
    CHECK(c.tau_1 == 80.0);
    CHECK(c.tau_nc_start == 80.0);
    CHECK(c.tau_nc_end == 40.0);
    CHECK(c.beta == 1.5);
    CHECK(c.gamma_1 == 0.9);
    CHECK(c.gamma_2 == 0.5);
    CHECK(c.r_af == 40);
    CHECK(c.t_a == 10.0);
    CHECK(c.t_d == 5000.0);
    CHECK(c.d_frames == 10);
    CHECK(c.frame_interval_ms == doctest::Approx(1000.0 / 33.0).epsilon(1e-15));
    CHECK(c.leak_slope == 0.1);
    CHECK(c.gate_epsilon == 1e-9);
    CHECK_FALSE(c.max_afs.has_value());
    CHECK(c.variant == Variant::multi);
    CHECK(c.boundary == Boundary::replicate);
    CHECK(c == default_config());
    CHECK(load_config("  \n\t") == default_config());
    CHECK(load_config("{}") == default_config());
}

TEST_CASE("alpha for a delay") {
    const double ti = 1000.0 / 33.0;
    // (1000/33) / (1000/33 + 80) = 1000 / 3640 = 25/91
    CHECK(alpha_for_delay(80.0, ti) == doctest::Approx(25.0 / 91.0).epsilon(1e-14));
    CHECK(alpha_for_delay(80.0, ti) == doctest::Approx(0.274725274725).epsilon(1e-11));
    CHECK(alpha_for_delay(ti, ti) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(alpha_for_delay(1e-9, ti) > 1.0 - 1e-10);
    CHECK(alpha_for_delay(1e-9, ti) < 1.0);

    double previous = 1.0;
    for (double tau = 0.5; tau < 500.0; tau *= 1.3) {
        const double a = alpha_for_delay(tau, ti);
        CHECK(a > 0.0);
        CHECK(a < previous);
        previous = a;
    }
}

TEST_CASE("dynamic delay slides from start to end") {
    ModelConfig c;
    CHECK(c.tau_for_step(1) == 80.0);
    CHECK(c.tau_for_step(3) == 60.0);
    CHECK(c.tau_for_step(5) == 40.0);
    CHECK(c.alpha_1() == doctest::Approx(25.0 / 91.0).epsilon(1e-14));
    // mean delay 60 ms
    CHECK(c.alpha_2() == doctest::Approx(alpha_for_delay(60.0, c.frame_interval_ms)).epsilon(1e-15));
    c.n_c = 1;
    CHECK(c.tau_for_step(1) == 80.0);
    CHECK(c.alpha_2() == doctest::Approx(c.alpha_1()).epsilon(1e-15));
}

TEST_CASE("each invariant is enforced with the field named") {
    struct Bad {
        const char* document;
        const char* field;
    };
    const Bad cases[] = {
        {R"({"sigma_e": 0})", "sigma_e"},
        {R"({"sigma_i": -1})", "sigma_i"},
        {R"({"sigma_c": 0})", "sigma_c"},
        {R"({"r_de": 11, "r_di": 5})", "r_di"},
        {R"({"r_de": 5, "r_di": 5})", "r_di"},
        {R"({"r_de": 0})", "r_de"},
        {R"({"r_dc": 0})", "r_dc"},
        {R"({"r_af": 0})", "r_af"},
        {R"({"epsilon": 0})", "epsilon"},
        {R"({"beta": -0.5})", "beta"},
        {R"({"n_c": 0})", "n_c"},
        {R"({"tau_1": 0})", "tau_1"},
        {R"({"tau_nc_end": 0, "tau_nc_start": 10})", "tau_nc_end"},
        {R"({"tau_nc_start": 30, "tau_nc_end": 40})", "tau_nc_start"},
        {R"({"gamma_1": 0})", "gamma_1"},
        {R"({"gamma_2": -1})", "gamma_2"},
        {R"({"t_a": 0})", "t_a"},
        {R"({"t_d": -5})", "t_d"},
        {R"({"d_frames": 0})", "d_frames"},
        {R"({"frame_interval_ms": 0})", "frame_interval_ms"},
        {R"({"leak_slope": 1})", "leak_slope"},
        {R"({"leak_slope": -0.1})", "leak_slope"},
        {R"({"gate_epsilon": -1e-9})", "gate_epsilon"},
        {R"({"max_afs": 0})", "max_afs"},
        {R"({"variant": "single", "max_afs": 3})", "max_afs"},
        {R"({"variant": "center", "max_afs": 2})", "max_afs"},
        {R"({"variant": "sideways"})", "variant"},
        {R"({"boundary": "wrap"})", "boundary"},
        {R"({"r_de": 2.5})", "r_de"},
        {R"({"sigma_e": "wide"})", "sigma_e"},
    };
    for (const auto& bad : cases) {
        CAPTURE(bad.document);
        CHECK(code_of(bad.document) == ErrorCode::invalid_value);
        CHECK(message_of(bad.document).rfind(std::string(bad.field) + ":", 0) == 0);
    }
}

TEST_CASE("boundary values that are allowed") {
    CHECK_NOTHROW(load_config(R"({"beta": 0})"));
    CHECK_NOTHROW(load_config(R"({"leak_slope": 0})"));
    CHECK_NOTHROW(load_config(R"({"gate_epsilon": 0})"));
    CHECK_NOTHROW(load_config(R"({"tau_nc_start": 40, "tau_nc_end": 40})"));
    CHECK_NOTHROW(load_config(R"({"variant": "single", "max_afs": 1})"));
    CHECK(load_config(R"({"r_de": 3.0})").r_de == 3);
    CHECK(load_config(R"({"max_afs": null})").max_afs == std::nullopt);
    CHECK(load_config(R"({"max_afs": 4})").effective_max_afs() == 4);
    CHECK(load_config(R"({"variant": "single"})").effective_max_afs() == 1);
    CHECK(load_config(R"({"variant": "center"})").effective_max_afs() == 1);
}

TEST_CASE("unknown keys and malformed documents") {
    CHECK(code_of(R"({"sigma_x": 3})") == ErrorCode::unknown_key);
    CHECK(code_of("[1, 2]") == ErrorCode::parse);
    CHECK(code_of("{\"r_de\": ") == ErrorCode::parse);
    CHECK(code_of("r_de = 5") == ErrorCode::parse);
}

TEST_CASE("missing config file is an io error") {
    try {
        load_config_file("/nonexistent/config.json");
        FAIL("expected io error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::io);
    }
}

TEST_CASE("key=value overrides") {
    ModelConfig c;
    apply_override(c, "variant=single");
    CHECK(c.variant == Variant::single);
    apply_override(c, "variant=\"center\"");
    CHECK(c.variant == Variant::center);
    apply_override(c, "t_a=0.25");
    CHECK(c.t_a == 0.25);
    apply_override(c, "r_af=12");
    CHECK(c.r_af == 12);
    apply_override(c, "boundary=zero");
    CHECK(c.boundary == Boundary::zero);
    apply_override(c, "delay_mode=per_distance");
    CHECK(c.delay_mode == DelayMode::per_distance);
    apply_override(c, "max_afs=null");
    CHECK_FALSE(c.max_afs.has_value());

    auto code = [&](const char* text) {
        try {
            apply_override(c, text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::io;
    };
    CHECK(code("t_a") == ErrorCode::parse);
    CHECK(code("=3") == ErrorCode::parse);
    CHECK(code("bogus=3") == ErrorCode::unknown_key);
    CHECK(code("n_c=many") == ErrorCode::invalid_value);
}

TEST_CASE("serialize then reload is field-equal") {
    ModelConfig c;
    c.sigma_e = 3.3;
    c.t_a = 0.123456789012345;
    c.t_d = 1e-7;
    c.frame_interval_ms = 1000.0 / 29.97;
    c.variant = Variant::single;
    c.max_afs = 1;
    c.boundary = Boundary::zero;
    c.delay_mode = DelayMode::per_distance;
    CHECK(load_config(serialize(c)) == c);
    CHECK(load_config(serialize(default_config())) == default_config());
    // every field appears in the serialized form
    CHECK(to_json(c).size() == 25);
}
