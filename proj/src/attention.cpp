#include "lplc2/attention.hpp"

#include <algorithm>
#include <cmath>

namespace lplc2 {

namespace {

AttentionField make_field(EnsembleState& state, int cx, int cy, int radius) {
    AttentionField af;
    af.id = state.next_id++;
    af.cx = cx;
    af.cy = cy;
    af.radius = radius;
    af.birth_frame = state.frame_index;
    return af;
}

bool at_capacity(const EnsembleState& state, const ModelConfig& config) {
    const auto cap = config.effective_max_afs();
    return cap && static_cast<int>(state.fields.size()) >= *cap;
}

}  // namespace

double AttentionField::windowed_sum(int window) const {
    const auto n = static_cast<int>(response_history.size());
    double total = 0.0;
    for (int i = std::max(0, n - window); i < n; ++i) total += response_history[static_cast<std::size_t>(i)];
    return total;
}

std::optional<Candidate> find_candidate(const ScalarField& magnitude, const EnsembleState& state,
                                        const ModelConfig& config) {
    std::optional<Candidate> best;
    for (int y = 0; y < magnitude.height(); ++y)
        for (int x = 0; x < magnitude.width(); ++x) {
            const double v = magnitude.at(x, y);
            if (best && v <= best->value) continue;
            const bool covered = std::any_of(state.fields.begin(), state.fields.end(),
                                             [&](const AttentionField& af) { return af.contains(x, y); });
            if (covered) continue;
            best = Candidate{x, y, v};
        }
    if (!best || !(best->value > config.t_a)) return std::nullopt;
    return best;
}

std::optional<Candidate> weighted_centroid(const ScalarField& magnitude) {
    double total = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    for (int y = 0; y < magnitude.height(); ++y)
        for (int x = 0; x < magnitude.width(); ++x) {
            const double v = std::max(magnitude.at(x, y), 0.0);
            total += v;
            sx += v * x;
            sy += v * y;
        }
    if (!(total > 0.0)) return std::nullopt;
    const int cx = std::clamp(static_cast<int>(std::lround(sx / total)), 0, magnitude.width() - 1);
    const int cy = std::clamp(static_cast<int>(std::lround(sy / total)), 0, magnitude.height() - 1);
    return Candidate{cx, cy, magnitude.at(cx, cy)};
}

std::array<double, 4> quadrant_integrals(const AttentionField& af, const DirectionalMotion& dm) {
    std::array<double, 4> q{0.0, 0.0, 0.0, 0.0};
    const int w = dm.lm_r.width();
    const int h = dm.lm_r.height();
    const int y0 = std::max(0, af.cy - af.radius);
    const int y1 = std::min(h - 1, af.cy + af.radius);
    const int x0 = std::max(0, af.cx - af.radius);
    const int x1 = std::min(w - 1, af.cx + af.radius);
    for (int y = y0; y <= y1; ++y) {
        if (y == af.cy) continue;
        const bool upper = y < af.cy;
        for (int x = x0; x <= x1; ++x) {
            if (x == af.cx || !af.contains(x, y)) continue;
            const bool right = x > af.cx;
            const double horizontal = right ? dm.lm_r.at(x, y) : dm.lm_l.at(x, y);
            const double vertical = upper ? dm.lm_u.at(x, y) : dm.lm_d.at(x, y);
            const int quadrant = upper ? (right ? 0 : 1) : (right ? 3 : 2);
            q[static_cast<std::size_t>(quadrant)] += horizontal + vertical;
        }
    }
    for (double& v : q) v = std::max(v, 0.0);
    return q;
}

double integrate_af(AttentionField& af, const DirectionalMotion& dm, const ModelConfig& config) {
    const auto q = quadrant_integrals(af, dm);
    const bool active = std::all_of(q.begin(), q.end(),
                                    [&](double v) { return v > config.gate_epsilon; });
    const double response = active ? q[0] + q[1] + q[2] + q[3] : 0.0;
    af.response_history.push_back(response);
    return response;
}

DetectionEvent step(EnsembleState& state, const DirectionalMotion& dm, const ModelConfig& config) {
    DetectionEvent event;
    event.frame_index = state.frame_index;
    const ScalarField& lm = dm.magnitude;

    switch (config.variant) {
        case Variant::center:
            if (state.fields.empty()) {
                state.fields.push_back(make_field(state, lm.width() / 2, lm.height() / 2, config.r_af));
                event.created.push_back(state.fields.back().id);
            }
            break;
        case Variant::single:
            if (state.fields.empty() && find_candidate(lm, state, config)) {
                if (const auto c = weighted_centroid(lm)) {
                    state.fields.push_back(make_field(state, c->x, c->y, config.r_af));
                    event.created.push_back(state.fields.back().id);
                }
            }
            break;
        case Variant::multi:
            if (!at_capacity(state, config)) {
                if (const auto c = find_candidate(lm, state, config)) {
                    state.fields.push_back(make_field(state, c->x, c->y, config.r_af));
                    event.created.push_back(state.fields.back().id);
                }
            }
            break;
    }

    for (auto& af : state.fields) integrate_af(af, dm, config);

    if (config.variant != Variant::center && !state.fields.empty()) {
        std::vector<bool> drop(state.fields.size(), false);
        std::size_t dropped = 0;
        for (std::size_t i = 0; i < state.fields.size(); ++i) {
            const auto& af = state.fields[i];
            if (af.age(state.frame_index) >= config.d_frames &&
                af.windowed_sum(config.d_frames) < config.t_d) {
                drop[i] = true;
                ++dropped;
            }
        }
        // The ensemble never empties itself; the single-AF variant is exempt
        // so that its field can move to a new motion centroid.
        if (config.variant == Variant::multi && dropped == state.fields.size()) {
            std::size_t keep = 0;
            for (std::size_t i = 1; i < state.fields.size(); ++i) {
                if (state.fields[i].windowed_sum(config.d_frames) >
                    state.fields[keep].windowed_sum(config.d_frames))
                    keep = i;
            }
            drop[keep] = false;
        }
        std::vector<AttentionField> kept;
        kept.reserve(state.fields.size());
        for (std::size_t i = 0; i < state.fields.size(); ++i) {
            if (drop[i]) {
                event.removed.push_back(state.fields[i].id);
            } else {
                kept.push_back(std::move(state.fields[i]));
            }
        }
        state.fields = std::move(kept);
    }

    for (const auto& af : state.fields) {
        event.afs.push_back(AfSnapshot{af.id, af.cx, af.cy, af.radius, af.last_response(),
                                       af.age(state.frame_index), af.windowed_sum(config.d_frames)});
    }
    ++state.frame_index;
    return event;
}

}  // namespace lplc2
