#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lplc2/scalar_field.hpp"

namespace lplc2 {

enum class Shape { square, bar, grating };
enum class Polarity { dark, bright };

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2&) const = default;
};

/// One object. Paths are indexed by absolute frame and must cover every
/// frame in [onset, offset). For a grating, center_path[t].x is the phase
/// (pixels) and size_path[t] is unused.
struct ObjectTrack {
    Shape shape = Shape::square;
    Polarity polarity = Polarity::dark;
    std::vector<Point2> center_path;
    std::vector<double> size_path;  // edge length (width for bars)
    int onset = 0;
    int offset = 0;                 // exclusive
    double aspect = 1.0;            // bar height / width
    double period = 20.0;           // grating period, pixels

    bool visible(int frame) const noexcept { return frame >= onset && frame < offset; }
    bool operator==(const ObjectTrack&) const = default;
};

struct UniformBackground {
    double level = 128.0;

    bool operator==(const UniformBackground&) const = default;
};

/// Image scrolled left by px_per_frame each frame, wrapping horizontally.
/// An empty source selects the bundled procedural clutter texture.
struct ShiftingImageBackground {
    std::string source;
    int px_per_frame = 1;
    std::uint32_t texture_seed = 1;
    double texture_contrast = 10.0;

    bool operator==(const ShiftingImageBackground&) const = default;
};

using Background = std::variant<UniformBackground, ShiftingImageBackground>;

struct StimulusSpec {
    int width = 100;
    int height = 100;
    int frames = 50;
    double fps = 33.0;
    Background background = UniformBackground{};
    std::vector<ObjectTrack> objects;

    void validate() const;
    bool operator==(const StimulusSpec&) const = default;
};

inline constexpr double kDarkLevel = 0.0;
inline constexpr double kBrightLevel = 255.0;
inline constexpr double kMidGray = 128.0;

/// Deterministic, area-sampled rendering rounded to integer gray levels.
std::vector<ScalarField> render(const StimulusSpec& spec);
ScalarField render_frame(const StimulusSpec& spec, int frame);

/// Periodic multi-octave value noise around mid-gray; wraps in x and y.
ScalarField procedural_texture(int width, int height, std::uint32_t seed, double contrast);

// Track builders used by the built-in scenarios.
std::vector<double> linear_ramp(int frames, int start, int end, double from, double to);
ObjectTrack looming_square(Polarity polarity, Point2 center, int onset, int frames,
                           double from_size, double to_size, int total_frames);
/// Approach, hold, recede; offset = onset + approach + hold + recede.
ObjectTrack approach_hold_recede(Point2 center, int onset, int approach, int hold, int recede,
                                 double min_size, double max_size, int total_frames);
StimulusSpec time_reversed(const StimulusSpec& spec);

/// dark_loom, dark_recede, bright_loom, bright_recede, translate, grating,
/// four_phase, six_object.
std::map<std::string, StimulusSpec> builtin_scenarios();
/// Additional stimuli: quadrant_loom, large_loom, shifting_center.
std::map<std::string, StimulusSpec> extra_scenarios();
/// Looks up `name` in both sets.
StimulusSpec builtin_scenario(const std::string& name);

nlohmann::ordered_json to_json(const StimulusSpec& spec);
StimulusSpec stimulus_from_json(const nlohmann::json& document);

}  // namespace lplc2
