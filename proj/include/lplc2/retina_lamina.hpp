#pragma once

#include <vector>

#include "lplc2/config.hpp"
#include "lplc2/scalar_field.hpp"

namespace lplc2 {

/// Square (2r+1)^2 weight table. Gaussian kernels also keep their normalized
/// 1-D factor so convolution can run as two passes.
struct Kernel {
    int radius = 0;
    std::vector<double> weights;   // row-major, (v + r) * (2r+1) + (u + r)
    std::vector<double> profile;   // separable factor, empty if not separable

    int extent() const noexcept { return 2 * radius + 1; }
    double at(int u, int v) const {
        return weights[static_cast<std::size_t>((v + radius) * extent() + (u + radius))];
    }
    bool separable() const noexcept { return !profile.empty(); }
};

/// Isotropic 2-D normal density with standard deviation sigma.
double gaussian_density(double u, double v, double sigma);

/// Gaussian truncated to |u|,|v| <= radius and renormalized to sum to 1.
Kernel build_gaussian_kernel(double sigma, int radius);

/// P(t) - P(t-1).
ScalarField frame_difference(const ScalarField& current, const ScalarField& previous);

/// Windowed correlation; output has the input's shape. Under the zero
/// policy off-frame taps are dropped and the remaining weights rescaled, so
/// a constant field stays constant up to the border.
ScalarField convolve(const ScalarField& field, const Kernel& kernel, Boundary boundary);

/// Excitatory pool minus the wider inhibitory pool on the signed change map.
ScalarField vdog(const ScalarField& luminance_change, const ModelConfig& config);

struct OnOff {
    ScalarField on;
    ScalarField off;
};

OnOff half_wave_split(const ScalarField& field);

/// Retina + lamina with kernels built once for a stream.
class Lamina {
public:
    explicit Lamina(const ModelConfig& config);

    ScalarField vdog(const ScalarField& luminance_change) const;
    OnOff process(const ScalarField& current, const ScalarField& previous) const;

    const Kernel& excitatory() const noexcept { return excitatory_; }
    const Kernel& inhibitory() const noexcept { return inhibitory_; }

private:
    Kernel excitatory_;
    Kernel inhibitory_;
    Boundary boundary_;
};

}  // namespace lplc2
