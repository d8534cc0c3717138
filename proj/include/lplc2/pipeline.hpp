#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lplc2/attention.hpp"
#include "lplc2/config.hpp"
#include "lplc2/lobula.hpp"
#include "lplc2/medulla.hpp"
#include "lplc2/retina_lamina.hpp"
#include "lplc2/scalar_field.hpp"

namespace lplc2 {

/// Streaming detector. Feed frames in order; every frame after the first
/// yields one DetectionEvent.
class Detector {
public:
    explicit Detector(ModelConfig config);

    std::optional<DetectionEvent> push(const ScalarField& frame);

    const ModelConfig& config() const noexcept { return config_; }
    const EnsembleState& ensemble() const noexcept { return ensemble_; }
    /// Motion maps of the most recent event; empty before the second frame.
    const DirectionalMotion& last_motion() const noexcept { return motion_; }
    int frames_seen() const noexcept { return frames_seen_; }

private:
    ModelConfig config_;
    Lamina lamina_;
    std::unique_ptr<Medulla> medulla_;
    EnsembleState ensemble_;
    ScalarField previous_;
    DirectionalMotion motion_;
    int frames_seen_ = 0;
};

std::vector<DetectionEvent> run_detector(const std::vector<ScalarField>& frames,
                                         const ModelConfig& config);

}  // namespace lplc2
