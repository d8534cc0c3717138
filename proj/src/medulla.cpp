#include "lplc2/medulla.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lplc2/error.hpp"

namespace lplc2 {

namespace {

// out += HRC(direction, distance); the partner is upstream of the preferred
// direction.
void accumulate_hrc(ScalarField& out, const ScalarField& n, const ScalarField& d,
                    Direction direction, int distance, double beta, Boundary boundary) {
    const Offset step = unit_step(direction);
    const int w = n.width();
    const int h = n.height();
    const int dx = -step.dx * distance;
    const int dy = -step.dy * distance;

    for (int y = 0; y < h; ++y) {
        int py = y + dy;
        const bool row_outside = py < 0 || py >= h;
        if (row_outside && boundary == Boundary::zero) continue;
        py = std::clamp(py, 0, h - 1);
        const double* n_row = &n.values()[static_cast<std::size_t>(y) * w];
        const double* d_row = &d.values()[static_cast<std::size_t>(y) * w];
        const double* n_partner_row = &n.values()[static_cast<std::size_t>(py) * w];
        const double* d_partner_row = &d.values()[static_cast<std::size_t>(py) * w];
        double* o_row = &out.values()[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            int px = x + dx;
            if (px < 0 || px >= w) {
                if (boundary == Boundary::zero) continue;
                px = std::clamp(px, 0, w - 1);
            }
            const double dd = d_row[x] * d_partner_row[px];
            o_row[x] += dd * (n_row[x] - beta * n_partner_row[px]);
        }
    }
}

void require_distance(const ScalarField& field, Direction direction, int distance) {
    const Offset step = unit_step(direction);
    const int extent = step.dx != 0 ? field.width() : field.height();
    if (distance < 1 || distance >= extent) {
        throw Error(ErrorCode::distance_too_large,
                    "HRC distance " + std::to_string(distance) + " must lie in [1, " +
                        std::to_string(extent) + ") along " + to_string(direction));
    }
}

}  // namespace

const char* to_string(Direction d) {
    switch (d) {
        case Direction::right: return "right";
        case Direction::left: return "left";
        case Direction::up: return "up";
        case Direction::down: return "down";
    }
    return "right";
}

Direction opposite(Direction d) {
    switch (d) {
        case Direction::right: return Direction::left;
        case Direction::left: return Direction::right;
        case Direction::up: return Direction::down;
        case Direction::down: return Direction::up;
    }
    return d;
}

Offset unit_step(Direction d) {
    switch (d) {
        case Direction::right: return {1, 0};
        case Direction::left: return {-1, 0};
        case Direction::up: return {0, -1};
        case Direction::down: return {0, 1};
    }
    return {0, 0};
}

ScalarField contrast_normalize(const ScalarField& raw, const Kernel& pool, double epsilon,
                               Boundary boundary) {
    ScalarField out = convolve(raw, pool, boundary);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(raw[i] / (epsilon + out[i]));
    return out;
}

ScalarField contrast_normalize(const ScalarField& raw, const ModelConfig& config) {
    return contrast_normalize(raw, build_gaussian_kernel(config.sigma_c, config.r_dc),
                              config.epsilon, config.boundary);
}

ScalarField temporal_lowpass(const ScalarField& current, const ScalarField& state, double alpha) {
    require_same_shape(current, state, "temporal_lowpass");
    ScalarField out(current.width(), current.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = alpha * current[i] + (1.0 - alpha) * state[i];
    return out;
}

ScalarField hrc_triple(const ScalarField& n_field, const ScalarField& d_field, Direction direction,
                       int distance, double beta, Boundary boundary) {
    require_same_shape(n_field, d_field, "hrc_triple");
    require_distance(n_field, direction, distance);
    ScalarField out(n_field.width(), n_field.height());
    accumulate_hrc(out, n_field, d_field, direction, distance, beta, boundary);
    return out;
}

ChannelState::ChannelState(Channel ch, int width, int height, int n_c)
    : channel(ch), normalized(width, height), delayed(width, height) {
    for (auto& a : accum_delay) a = ScalarField(width, height);
    for (auto& steps : step_delay) steps.assign(static_cast<std::size_t>(n_c), ScalarField(width, height));
}

void ChannelState::update(const ScalarField& rectified, const Kernel& pool,
                          const ModelConfig& config) {
    normalized = contrast_normalize(rectified, pool, config.epsilon, config.boundary);
    delayed = temporal_lowpass(normalized, delayed, config.alpha_1());
}

ScalarField directional_map(ChannelState& state, Direction direction, const ModelConfig& config) {
    const int w = state.normalized.width();
    const int h = state.normalized.height();
    const auto dir = static_cast<std::size_t>(direction);
    for (int i = 1; i <= config.n_c; ++i) require_distance(state.normalized, direction, i);

    if (config.delay_mode == DelayMode::pooled) {
        ScalarField summed(w, h);
        for (int i = 1; i <= config.n_c; ++i)
            accumulate_hrc(summed, state.normalized, state.delayed, direction, i, config.beta,
                           config.boundary);
        state.accum_delay[dir] = temporal_lowpass(summed, state.accum_delay[dir], config.alpha_2());
        return state.accum_delay[dir];
    }

    auto& steps = state.step_delay[dir];
    if (steps.size() != static_cast<std::size_t>(config.n_c))
        steps.assign(static_cast<std::size_t>(config.n_c), ScalarField(w, h));
    ScalarField total(w, h);
    for (int i = 1; i <= config.n_c; ++i) {
        ScalarField m(w, h);
        accumulate_hrc(m, state.normalized, state.delayed, direction, i, config.beta,
                       config.boundary);
        auto& s = steps[static_cast<std::size_t>(i - 1)];
        s = temporal_lowpass(m, s, config.alpha_for_step(i));
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += s[k];
    }
    state.accum_delay[dir] = total;
    return total;
}

Medulla::Medulla(const ModelConfig& config, int width, int height)
    : config_(config),
      pool_(build_gaussian_kernel(config.sigma_c, config.r_dc)),
      on_(Channel::on, width, height, config.n_c),
      off_(Channel::off, width, height, config.n_c) {}

DirectionalMaps Medulla::step(const OnOff& rectified) {
    on_.update(rectified.on, pool_, config_);
    off_.update(rectified.off, pool_, config_);
    DirectionalMaps maps;
    for (Direction d : kDirections) {
        maps.t4[static_cast<std::size_t>(d)] = directional_map(on_, d, config_);
        maps.t5[static_cast<std::size_t>(d)] = directional_map(off_, d, config_);
    }
    return maps;
}

}  // namespace lplc2
