#pragma once

#include "lplc2/config.hpp"
#include "lplc2/medulla.hpp"
#include "lplc2/scalar_field.hpp"

namespace lplc2 {

struct DirectionalMotion {
    ScalarField lm_r;
    ScalarField lm_l;
    ScalarField lm_u;
    ScalarField lm_d;
    ScalarField magnitude;

    const ScalarField& of(Direction d) const;
};

double leaky_relu(double value, double slope);

/// f((T4p^g1 + T5p^g2) - (T4n^g1 + T5n^g2)); negative T4/T5 bases count as 0.
ScalarField fuse_direction(const ScalarField& t4_pref, const ScalarField& t5_pref,
                           const ScalarField& t4_null, const ScalarField& t5_null,
                           const ModelConfig& config);

/// sqrt(H^2 + V^2) with H = max(r, l), V = max(d, u).
ScalarField motion_magnitude(const DirectionalMotion& dm);

/// All four opponent maps plus the magnitude.
DirectionalMotion integrate_lobula(const DirectionalMaps& maps, const ModelConfig& config);

}  // namespace lplc2
