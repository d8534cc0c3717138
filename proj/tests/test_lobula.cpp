#include <doctest.h>

#include <cmath>
#include <random>

#include "lplc2/error.hpp"
#include "lplc2/lobula.hpp"
#include "support.hpp"

using namespace lplc2;
using testing_support::motion_from;
using testing_support::random_field;

namespace {

ScalarField one(double v) { return ScalarField(1, 1, v); }

}  // namespace

TEST_CASE("leaky rectifier") {
    CHECK(leaky_relu(2.0, 0.1) == 2.0);
    CHECK(leaky_relu(0.0, 0.1) == 0.0);
    CHECK(leaky_relu(-2.0, 0.1) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(leaky_relu(-2.0, 0.0) == 0.0);
}

TEST_CASE("direction fusion") {
    const ModelConfig c;
    CHECK(fuse_direction(one(0), one(0), one(0), one(0), c)[0] == 0.0);
    CHECK(fuse_direction(one(1), one(1), one(0), one(0), c)[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(fuse_direction(one(0), one(0), one(1), one(1), c)[0] == doctest::Approx(-0.2).epsilon(1e-15));

    // exponents act on each pathway separately
    const double expected = std::pow(4.0, 0.9) + std::sqrt(9.0) - std::pow(1.0, 0.9) - std::sqrt(0.25);
    CHECK(fuse_direction(one(4), one(9), one(1), one(0.25), c)[0] == doctest::Approx(expected).epsilon(1e-14));

    // negative bases count as zero
    CHECK(fuse_direction(one(-3), one(-1), one(0), one(0), c)[0] == 0.0);
    CHECK(fuse_direction(one(1), one(0), one(-5), one(-5), c)[0] == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(fuse_direction(ScalarField(2, 2), ScalarField(2, 2), ScalarField(2, 3), ScalarField(2, 2), c),
                    Error);
}

TEST_CASE("motion magnitude") {
    const ScalarField z(3, 3);
    CHECK(motion_from(z, z, z, z).magnitude == z);

    CHECK(motion_from(one(3), one(0), one(0), one(0)).magnitude[0] == 3.0);
    CHECK(motion_from(one(3), one(0), one(4), one(0)).magnitude[0] == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(motion_from(one(-0.1), one(3), one(-0.2), one(4)).magnitude[0] == doctest::Approx(5.0).epsilon(1e-15));
    // two losing leaks still give a nonnegative magnitude
    CHECK(motion_from(one(-0.3), one(-0.1), one(-0.4), one(-0.5)).magnitude[0] ==
          doctest::Approx(std::sqrt(0.01 + 0.16)).epsilon(1e-14));
}

TEST_CASE("integration uses the opposite direction as the null pair") {
    ModelConfig c;
    DirectionalMaps maps;
    for (auto& f : maps.t4) f = ScalarField(2, 1);
    for (auto& f : maps.t5) f = ScalarField(2, 1);
    maps.t4[static_cast<int>(Direction::right)][0] = 1.0;
    maps.t5[static_cast<int>(Direction::up)][1] = 4.0;
    const DirectionalMotion dm = integrate_lobula(maps, c);
    CHECK(dm.lm_r[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dm.lm_l[0] == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(dm.lm_u[0] == 0.0);
    CHECK(dm.lm_u[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dm.lm_d[1] == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(dm.magnitude[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dm.magnitude[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(&dm.of(Direction::down) == &dm.lm_d);

    // opponency holds for arbitrary maps
    std::mt19937_64 rng(6);
    for (auto& f : maps.t4) f = random_field(9, 7, rng, -1.0, 3.0);
    for (auto& f : maps.t5) f = random_field(9, 7, rng, -1.0, 3.0);
    const DirectionalMotion r = integrate_lobula(maps, c);
    for (std::size_t i = 0; i < r.magnitude.size(); ++i) {
        CHECK_FALSE((r.lm_r[i] > 0.0 && r.lm_l[i] > 0.0));
        CHECK_FALSE((r.lm_u[i] > 0.0 && r.lm_d[i] > 0.0));
        CHECK(r.magnitude[i] >= 0.0);
    }
}

TEST_CASE("magnitude is positively homogeneous") {
    std::mt19937_64 rng(21);
    const auto r = random_field(6, 6, rng, -1.0, 5.0);
    const auto l = random_field(6, 6, rng, -1.0, 5.0);
    const auto u = random_field(6, 6, rng, -1.0, 5.0);
    const auto d = random_field(6, 6, rng, -1.0, 5.0);
    const auto base = motion_from(r, l, u, d).magnitude;
    for (double k : {0.5, 3.0, 1e3}) {
        auto scale = [k](ScalarField f) {
            for (double& v : f.values()) v *= k;
            return f;
        };
        const auto scaled = motion_from(scale(r), scale(l), scale(u), scale(d)).magnitude;
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(scaled[i] == doctest::Approx(k * base[i]).epsilon(1e-13));
    }
}
