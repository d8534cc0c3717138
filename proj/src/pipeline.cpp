#include "lplc2/pipeline.hpp"

#include "lplc2/error.hpp"

namespace lplc2 {

Detector::Detector(ModelConfig config) : config_(std::move(config)), lamina_((config_.validate(), config_)) {}

std::optional<DetectionEvent> Detector::push(const ScalarField& frame) {
    ++frames_seen_;
    if (previous_.empty()) {
        previous_ = frame;
        medulla_ = std::make_unique<Medulla>(config_, frame.width(), frame.height());
        return std::nullopt;
    }
    require_same_shape(frame, previous_, "frame");

    const OnOff rectified = lamina_.process(frame, previous_);
    const DirectionalMaps maps = medulla_->step(rectified);
    motion_ = integrate_lobula(maps, config_);
    previous_ = frame;
    return step(ensemble_, motion_, config_);
}

std::vector<DetectionEvent> run_detector(const std::vector<ScalarField>& frames,
                                         const ModelConfig& config) {
    if (frames.size() < 2) throw Error(ErrorCode::too_few_frames, "need at least 2 frames");
    Detector detector(config);
    std::vector<DetectionEvent> events;
    events.reserve(frames.size() - 1);
    for (const auto& frame : frames) {
        if (auto event = detector.push(frame)) events.push_back(std::move(*event));
    }
    return events;
}

}  // namespace lplc2
