#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lplc2/config.hpp"
#include "lplc2/lobula.hpp"
#include "lplc2/scalar_field.hpp"

namespace lplc2 {

/// One attention field: a disk of radius R_AF watched by one LPLC2 unit.
struct AttentionField {
    int id = 0;
    int cx = 0;
    int cy = 0;
    int radius = 0;
    int birth_frame = 0;
    std::vector<double> response_history;

    /// Frames elapsed since birth at `frame` (0 on the birth frame).
    int age(int frame) const noexcept { return frame - birth_frame; }
    /// Sum of the most recent `window` responses (fewer if younger).
    double windowed_sum(int window) const;
    double last_response() const noexcept {
        return response_history.empty() ? 0.0 : response_history.back();
    }
    bool contains(int x, int y) const noexcept {
        const long dx = x - cx;
        const long dy = y - cy;
        return dx * dx + dy * dy <= static_cast<long>(radius) * radius;
    }
};

struct EnsembleState {
    std::vector<AttentionField> fields;
    int next_id = 0;
    int frame_index = 1;  // index of the frame the next step belongs to
};

struct AfSnapshot {
    int id = 0;
    int cx = 0;
    int cy = 0;
    int radius = 0;
    double response = 0.0;
    int age_frames = 0;
    double windowed_sum = 0.0;

    bool operator==(const AfSnapshot&) const = default;
};

struct DetectionEvent {
    int frame_index = 0;
    std::vector<AfSnapshot> afs;
    std::vector<int> created;
    std::vector<int> removed;

    bool operator==(const DetectionEvent&) const = default;
};

struct Candidate {
    int x = 0;
    int y = 0;
    double value = 0.0;

    bool operator==(const Candidate&) const = default;
};

/// Strongest LM pixel outside every existing AF disk, if it exceeds T_a.
/// Ties resolve to the smallest (y, x).
std::optional<Candidate> find_candidate(const ScalarField& magnitude, const EnsembleState& state,
                                        const ModelConfig& config);

/// LM-weighted centroid rounded to the nearest pixel; empty if LM sums to 0.
std::optional<Candidate> weighted_centroid(const ScalarField& magnitude);

/// Rectified quadrant integrals Q1..Q4 over the AF disk. Q1 is right/up,
/// Q2 left/up, Q3 left/down, Q4 right/down; pixels on the axes are skipped.
std::array<double, 4> quadrant_integrals(const AttentionField& af, const DirectionalMotion& dm);

/// Gated four-quadrant sum; appends the result to the AF's history.
double integrate_af(AttentionField& af, const DirectionalMotion& dm, const ModelConfig& config);

/// One frame of Algorithm-1 bookkeeping: create, integrate, remove.
DetectionEvent step(EnsembleState& state, const DirectionalMotion& dm, const ModelConfig& config);

}  // namespace lplc2
