#pragma once

#include <array>
#include <vector>

#include "lplc2/config.hpp"
#include "lplc2/retina_lamina.hpp"
#include "lplc2/scalar_field.hpp"

namespace lplc2 {

/// Cardinal motion directions in image coordinates (y grows downward, so
/// `up` means decreasing row index).
enum class Direction { right = 0, left = 1, up = 2, down = 3 };

inline constexpr std::array<Direction, 4> kDirections{
    Direction::right, Direction::left, Direction::up, Direction::down};

const char* to_string(Direction d);
Direction opposite(Direction d);

struct Offset {
    int dx;
    int dy;
};

/// Unit step along the direction.
Offset unit_step(Direction d);

enum class Channel { on, off };

/// tanh(raw / (epsilon + pooled(raw))) with the medulla pooling kernel.
ScalarField contrast_normalize(const ScalarField& raw, const ModelConfig& config);
ScalarField contrast_normalize(const ScalarField& raw, const Kernel& pool, double epsilon,
                               Boundary boundary);

/// alpha * current + (1 - alpha) * state.
ScalarField temporal_lowpass(const ScalarField& current, const ScalarField& state, double alpha);

/// Triple-correlation HRC tuned to `direction`.
///
/// The partner sample sits `distance` pixels upstream of the preferred
/// direction, i.e. where an edge moving along `direction` was a moment ago:
///   N(x) D(x) D(p) - beta N(p) D(x) D(p),   p = x - distance * unit_step.
ScalarField hrc_triple(const ScalarField& n_field, const ScalarField& d_field, Direction direction,
                       int distance, double beta, Boundary boundary = Boundary::replicate);

/// Per-channel medulla state; zero at stream start.
struct ChannelState {
    Channel channel = Channel::on;
    ScalarField normalized;
    ScalarField delayed;
    std::array<ScalarField, 4> accum_delay;
    // Only used in DelayMode::per_distance: one state per correlation step.
    std::array<std::vector<ScalarField>, 4> step_delay;

    ChannelState() = default;
    ChannelState(Channel ch, int width, int height, int n_c);

    /// Normalizes `rectified` and advances the delayed signal.
    void update(const ScalarField& rectified, const Kernel& pool, const ModelConfig& config);
};

/// T4 (ON) or T5 (OFF) map for one direction; advances accum_delay.
ScalarField directional_map(ChannelState& state, Direction direction, const ModelConfig& config);

struct DirectionalMaps {
    std::array<ScalarField, 4> t4;
    std::array<ScalarField, 4> t5;

    const ScalarField& t4_of(Direction d) const { return t4[static_cast<int>(d)]; }
    const ScalarField& t5_of(Direction d) const { return t5[static_cast<int>(d)]; }
};

/// Both channels for one stream.
class Medulla {
public:
    Medulla(const ModelConfig& config, int width, int height);

    DirectionalMaps step(const OnOff& rectified);

    const ChannelState& on() const noexcept { return on_; }
    const ChannelState& off() const noexcept { return off_; }

private:
    ModelConfig config_;
    Kernel pool_;
    ChannelState on_;
    ChannelState off_;
};

}  // namespace lplc2
