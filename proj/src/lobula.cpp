#include "lplc2/lobula.hpp"

#include <algorithm>
#include <cmath>

namespace lplc2 {

namespace {

double rectified_power(double base, double exponent) {
    if (base <= 0.0) return 0.0;
    if (exponent == 1.0) return base;
    if (exponent == 0.5) return std::sqrt(base);
    return std::pow(base, exponent);
}

}  // namespace

const ScalarField& DirectionalMotion::of(Direction d) const {
    switch (d) {
        case Direction::right: return lm_r;
        case Direction::left: return lm_l;
        case Direction::up: return lm_u;
        case Direction::down: return lm_d;
    }
    return lm_r;
}

double leaky_relu(double value, double slope) { return value >= 0.0 ? value : slope * value; }

ScalarField fuse_direction(const ScalarField& t4_pref, const ScalarField& t5_pref,
                           const ScalarField& t4_null, const ScalarField& t5_null,
                           const ModelConfig& config) {
    require_same_shape(t4_pref, t5_pref, "fuse_direction");
    require_same_shape(t4_pref, t4_null, "fuse_direction");
    require_same_shape(t4_pref, t5_null, "fuse_direction");
    ScalarField out(t4_pref.width(), t4_pref.height());
    const double g1 = config.gamma_1;
    const double g2 = config.gamma_2;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double pref = rectified_power(t4_pref[i], g1) + rectified_power(t5_pref[i], g2);
        const double null = rectified_power(t4_null[i], g1) + rectified_power(t5_null[i], g2);
        out[i] = leaky_relu(pref - null, config.leak_slope);
    }
    return out;
}

ScalarField motion_magnitude(const DirectionalMotion& dm) {
    ScalarField out(dm.lm_r.width(), dm.lm_r.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double h = std::max(dm.lm_r[i], dm.lm_l[i]);
        const double v = std::max(dm.lm_d[i], dm.lm_u[i]);
        out[i] = std::sqrt(h * h + v * v);
    }
    return out;
}

DirectionalMotion integrate_lobula(const DirectionalMaps& maps, const ModelConfig& config) {
    auto fuse = [&](Direction pref) {
        const Direction null = opposite(pref);
        return fuse_direction(maps.t4_of(pref), maps.t5_of(pref), maps.t4_of(null),
                              maps.t5_of(null), config);
    };
    DirectionalMotion dm;
    dm.lm_r = fuse(Direction::right);
    dm.lm_l = fuse(Direction::left);
    dm.lm_u = fuse(Direction::up);
    dm.lm_d = fuse(Direction::down);
    dm.magnitude = motion_magnitude(dm);
    return dm;
}

}  // namespace lplc2
