#include "lplc2/retina_lamina.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lplc2/error.hpp"

namespace lplc2 {

namespace {

void require_fits(const ScalarField& field, const Kernel& kernel) {
    if (kernel.radius >= std::min(field.width(), field.height())) {
        throw Error(ErrorCode::kernel_too_large,
                    "kernel radius " + std::to_string(kernel.radius) + " needs a field larger than " +
                        std::to_string(field.width()) + "x" + std::to_string(field.height()));
    }
}

// One separable pass along x (horizontal) or y.
ScalarField correlate_1d(const ScalarField& in, const std::vector<double>& profile, int radius,
                         bool horizontal, Boundary boundary) {
    const int w = in.width();
    const int h = in.height();
    const int n = horizontal ? w : h;
    ScalarField out(w, h);
    const auto src = in.values();
    auto dst = out.values();
    const std::size_t stride = horizontal ? 1 : static_cast<std::size_t>(w);
    const int lines = horizontal ? h : w;

    for (int line = 0; line < lines; ++line) {
        const std::size_t base = horizontal ? static_cast<std::size_t>(line) * w
                                            : static_cast<std::size_t>(line);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            if (i >= radius && i + radius < n) {
                const double* p = src.data() + base + (i - radius) * stride;
                for (int k = 0; k <= 2 * radius; ++k) acc += profile[k] * p[k * stride];
            } else {
                double weight = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    int j = i + k;
                    if (j < 0 || j >= n) {
                        if (boundary == Boundary::zero) continue;
                        j = std::clamp(j, 0, n - 1);
                    }
                    acc += profile[k + radius] * src[base + j * stride];
                    weight += profile[k + radius];
                }
                acc /= weight;
            }
            dst[base + i * stride] = acc;
        }
    }
    return out;
}

}  // namespace

double gaussian_density(double u, double v, double sigma) {
    const double s2 = sigma * sigma;
    return std::exp(-(u * u + v * v) / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

Kernel build_gaussian_kernel(double sigma, int radius) {
    if (!(sigma > 0)) throw Error(ErrorCode::invalid_value, "kernel sigma must be > 0");
    if (radius < 1) throw Error(ErrorCode::invalid_value, "kernel radius must be >= 1");

    Kernel k;
    k.radius = radius;
    const int n = k.extent();
    k.weights.resize(static_cast<std::size_t>(n) * n);
    double total = 0.0;
    for (int v = -radius; v <= radius; ++v)
        for (int u = -radius; u <= radius; ++u) {
            const double w = gaussian_density(u, v, sigma);
            k.weights[static_cast<std::size_t>((v + radius) * n + (u + radius))] = w;
            total += w;
        }
    for (double& w : k.weights) w /= total;

    // The truncated square support factorizes, so the renormalized kernel is
    // the outer product of a renormalized 1-D Gaussian with itself.
    k.profile.resize(n);
    double line = 0.0;
    for (int u = -radius; u <= radius; ++u) {
        k.profile[u + radius] = std::exp(-(u * u) / (2.0 * sigma * sigma));
        line += k.profile[u + radius];
    }
    for (double& p : k.profile) p /= line;
    return k;
}

ScalarField frame_difference(const ScalarField& current, const ScalarField& previous) {
    require_same_shape(current, previous, "frame_difference");
    ScalarField out(current.width(), current.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = current[i] - previous[i];
    return out;
}

ScalarField convolve(const ScalarField& field, const Kernel& kernel, Boundary boundary) {
    require_fits(field, kernel);
    if (kernel.separable()) {
        const ScalarField rows = correlate_1d(field, kernel.profile, kernel.radius, true, boundary);
        return correlate_1d(rows, kernel.profile, kernel.radius, false, boundary);
    }

    const int w = field.width();
    const int h = field.height();
    const int r = kernel.radius;
    ScalarField out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            double weight = 0.0;
            for (int v = -r; v <= r; ++v) {
                int yy = y + v;
                if (yy < 0 || yy >= h) {
                    if (boundary == Boundary::zero) continue;
                    yy = std::clamp(yy, 0, h - 1);
                }
                for (int u = -r; u <= r; ++u) {
                    int xx = x + u;
                    if (xx < 0 || xx >= w) {
                        if (boundary == Boundary::zero) continue;
                        xx = std::clamp(xx, 0, w - 1);
                    }
                    acc += field.at(xx, yy) * kernel.at(u, v);
                    weight += kernel.at(u, v);
                }
            }
            out.at(x, y) = acc / weight;
        }
    return out;
}

ScalarField vdog(const ScalarField& luminance_change, const ModelConfig& config) {
    return Lamina(config).vdog(luminance_change);
}

OnOff half_wave_split(const ScalarField& field) {
    OnOff out{ScalarField(field.width(), field.height()), ScalarField(field.width(), field.height())};
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double v = field[i];
        out.on[i] = v > 0.0 ? v : 0.0;
        out.off[i] = v < 0.0 ? -v : 0.0;
    }
    return out;
}

Lamina::Lamina(const ModelConfig& config)
    : excitatory_(build_gaussian_kernel(config.sigma_e, config.r_de)),
      inhibitory_(build_gaussian_kernel(config.sigma_i, config.r_di)),
      boundary_(config.boundary) {}

ScalarField Lamina::vdog(const ScalarField& luminance_change) const {
    ScalarField e = convolve(luminance_change, excitatory_, boundary_);
    const ScalarField i = convolve(luminance_change, inhibitory_, boundary_);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= i[k];
    return e;
}

OnOff Lamina::process(const ScalarField& current, const ScalarField& previous) const {
    return half_wave_split(vdog(frame_difference(current, previous)));
}

}  // namespace lplc2
