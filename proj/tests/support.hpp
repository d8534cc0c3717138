#pragma once

// Small builders shared by the test suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "lplc2/config.hpp"
#include "lplc2/lobula.hpp"
#include "lplc2/scalar_field.hpp"

namespace testing_support {

using lplc2::ScalarField;

inline ScalarField random_field(int w, int h, std::mt19937_64& rng, double lo = 0.0,
                                double hi = 255.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    ScalarField f(w, h);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = dist(rng);
    return f;
}

inline std::vector<ScalarField> random_stream(int w, int h, int frames, std::mt19937_64& rng) {
    std::vector<ScalarField> out;
    for (int t = 0; t < frames; ++t) out.push_back(random_field(w, h, rng));
    return out;
}

/// Dark half-plane whose edge sits at x = x0 + speed * t (rightward if
/// speed > 0), on a bright background.
inline std::vector<ScalarField> vertical_edge_stream(int w, int h, int frames, int x0, int speed,
                                                     double dark = 0.0, double bright = 255.0) {
    std::vector<ScalarField> out;
    for (int t = 0; t < frames; ++t) {
        ScalarField f(w, h, bright);
        const int edge = x0 + speed * t;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (x < edge) f.at(x, y) = dark;
        out.push_back(f);
    }
    return out;
}

/// Dark square centred at (cx, cy) with half-edge r0 + t on a mid-gray field.
inline std::vector<ScalarField> expanding_square_stream(int w, int h, int frames, int cx, int cy,
                                                        int r0) {
    std::vector<ScalarField> out;
    for (int t = 0; t < frames; ++t) {
        ScalarField f(w, h, 128.0);
        const int r = r0 + t;
        for (int y = cy - r; y <= cy + r; ++y)
            for (int x = cx - r; x <= cx + r; ++x)
                if (f.contains(x, y)) f.at(x, y) = 0.0;
        out.push_back(f);
    }
    return out;
}

/// Config whose pools fit inside a side x side frame.
inline lplc2::ModelConfig small_config(int side) {
    lplc2::ModelConfig c;
    c.r_de = std::min(c.r_de, side - 1);
    c.r_di = std::min(c.r_di, side - 1);
    c.r_dc = std::min(c.r_dc, side - 1);
    c.n_c = std::min(c.n_c, side - 1);
    return c;
}

/// LM maps built from explicit direction fields.
inline lplc2::DirectionalMotion motion_from(const ScalarField& r, const ScalarField& l,
                                            const ScalarField& u, const ScalarField& d) {
    lplc2::DirectionalMotion dm;
    dm.lm_r = r;
    dm.lm_l = l;
    dm.lm_u = u;
    dm.lm_d = d;
    dm.magnitude = lplc2::motion_magnitude(dm);
    return dm;
}

}  // namespace testing_support
