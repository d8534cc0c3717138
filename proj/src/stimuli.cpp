#include "lplc2/stimuli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "lplc2/error.hpp"
#include "lplc2/io.hpp"

namespace lplc2 {

namespace {

using json = nlohmann::json;

// Overlap of [a0, a1] with the pixel footprint [p - 0.5, p + 0.5].
double overlap(double a0, double a1, int p) {
    return std::max(0.0, std::min(a1, p + 0.5) - std::max(a0, p - 0.5));
}

// Measure of dark stripe within (-inf, s] for stripes [phase + kP, phase + kP + P/2).
double stripe_cumulative(double s, double phase, double period) {
    const double rel = s - phase;
    const double k = std::floor(rel / period);
    return k * period / 2.0 + std::min(rel - k * period, period / 2.0);
}

double polarity_level(Polarity p) { return p == Polarity::dark ? kDarkLevel : kBrightLevel; }

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Lattice value in [-1, 1].
double lattice(std::uint32_t seed, int octave, int i, int j) {
    std::uint64_t h = mix((static_cast<std::uint64_t>(seed) << 32) ^ static_cast<std::uint32_t>(octave));
    h = mix(h ^ static_cast<std::uint32_t>(i));
    h = mix(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)) << 20));
    return static_cast<double>(h >> 11) / static_cast<double>(1ULL << 53) * 2.0 - 1.0;
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

void check_object_bounds(const StimulusSpec& spec, const ObjectTrack& obj, std::size_t index) {
    if (obj.shape == Shape::grating) return;
    for (int t = obj.onset; t < obj.offset; ++t) {
        const double w = obj.size_path[static_cast<std::size_t>(t)];
        const double h = obj.shape == Shape::bar ? w * obj.aspect : w;
        const Point2 c = obj.center_path[static_cast<std::size_t>(t)];
        const double eps = 1e-9;
        if (c.x - w / 2 < -0.5 - eps || c.x + w / 2 > spec.width - 0.5 + eps ||
            c.y - h / 2 < -0.5 - eps || c.y + h / 2 > spec.height - 0.5 + eps) {
            throw Error(ErrorCode::out_of_bounds, "object " + std::to_string(index) +
                                                      " leaves the frame at frame " +
                                                      std::to_string(t));
        }
    }
}

ScalarField background_frame(const StimulusSpec& spec, const ScalarField* texture, int frame) {
    ScalarField out(spec.width, spec.height);
    if (const auto* uniform = std::get_if<UniformBackground>(&spec.background)) {
        out.fill(uniform->level);
        return out;
    }
    const auto& shifting = std::get<ShiftingImageBackground>(spec.background);
    const int tw = texture->width();
    const int th = texture->height();
    const long shift = static_cast<long>(frame) * shifting.px_per_frame;
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            long sx = (x + shift) % tw;
            if (sx < 0) sx += tw;
            out.at(x, y) = texture->at(static_cast<int>(sx), y % th);
        }
    return out;
}

ScalarField load_texture(const StimulusSpec& spec) {
    const auto& shifting = std::get<ShiftingImageBackground>(spec.background);
    if (shifting.source.empty())
        return procedural_texture(spec.width, spec.height, shifting.texture_seed,
                                  shifting.texture_contrast);
    return read_image(shifting.source);
}

void draw_object(ScalarField& frame, const ObjectTrack& obj, int t) {
    const double level = polarity_level(obj.polarity);
    const auto ti = static_cast<std::size_t>(t);
    if (obj.shape == Shape::grating) {
        const double phase = obj.center_path[ti].x;
        for (int x = 0; x < frame.width(); ++x) {
            const double cover = stripe_cumulative(x + 0.5, phase, obj.period) -
                                 stripe_cumulative(x - 0.5, phase, obj.period);
            if (cover <= 0.0) continue;
            for (int y = 0; y < frame.height(); ++y)
                frame.at(x, y) = frame.at(x, y) * (1.0 - cover) + level * cover;
        }
        return;
    }
    const double w = obj.size_path[ti];
    if (w <= 0.0) return;
    const double h = obj.shape == Shape::bar ? w * obj.aspect : w;
    const Point2 c = obj.center_path[ti];
    const double x0 = c.x - w / 2;
    const double x1 = c.x + w / 2;
    const double y0 = c.y - h / 2;
    const double y1 = c.y + h / 2;
    const int px0 = std::max(0, static_cast<int>(std::floor(x0 + 0.5)));
    const int px1 = std::min(frame.width() - 1, static_cast<int>(std::ceil(x1 - 0.5)));
    const int py0 = std::max(0, static_cast<int>(std::floor(y0 + 0.5)));
    const int py1 = std::min(frame.height() - 1, static_cast<int>(std::ceil(y1 - 0.5)));
    for (int y = py0; y <= py1; ++y) {
        const double cy = overlap(y0, y1, y);
        if (cy <= 0.0) continue;
        for (int x = px0; x <= px1; ++x) {
            const double cover = cy * overlap(x0, x1, x);
            if (cover <= 0.0) continue;
            frame.at(x, y) = frame.at(x, y) * (1.0 - cover) + level * cover;
        }
    }
}

ScalarField compose_frame(const StimulusSpec& spec, const ScalarField* texture, int t) {
    ScalarField out = background_frame(spec, texture, t);
    for (const auto& obj : spec.objects)
        if (obj.visible(t)) draw_object(out, obj, t);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(std::round(out[i]), 0.0, 255.0);
    return out;
}

const char* to_string(Shape s) {
    switch (s) {
        case Shape::square: return "square";
        case Shape::bar: return "bar";
        case Shape::grating: return "grating";
    }
    return "square";
}

Shape parse_shape(const std::string& s) {
    if (s == "square") return Shape::square;
    if (s == "bar") return Shape::bar;
    if (s == "grating") return Shape::grating;
    throw Error(ErrorCode::invalid_value, "shape: unknown '" + s + "'");
}

Polarity parse_polarity(const std::string& s) {
    if (s == "dark") return Polarity::dark;
    if (s == "bright") return Polarity::bright;
    throw Error(ErrorCode::invalid_value, "polarity: unknown '" + s + "'");
}

}  // namespace

void StimulusSpec::validate() const {
    if (width < 1 || height < 1) throw Error(ErrorCode::invalid_value, "stimulus: bad dimensions");
    if (frames < 2) throw Error(ErrorCode::invalid_value, "stimulus: frames must be >= 2");
    if (!(fps > 0)) throw Error(ErrorCode::invalid_value, "stimulus: fps must be > 0");
    if (const auto* s = std::get_if<ShiftingImageBackground>(&background)) {
        if (s->texture_contrast < 0)
            throw Error(ErrorCode::invalid_value, "stimulus: texture_contrast must be >= 0");
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& obj = objects[i];
        const std::string tag = "object " + std::to_string(i) + ": ";
        if (obj.onset < 0 || obj.offset > frames || obj.onset >= obj.offset)
            throw Error(ErrorCode::invalid_value, tag + "onset/offset outside the sequence");
        if (obj.center_path.size() != static_cast<std::size_t>(frames) ||
            obj.size_path.size() != static_cast<std::size_t>(frames))
            throw Error(ErrorCode::invalid_value, tag + "paths must have one entry per frame");
        if (std::any_of(obj.size_path.begin(), obj.size_path.end(), [](double s) { return s < 0; }))
            throw Error(ErrorCode::invalid_value, tag + "sizes must be nonnegative");
        if (!(obj.aspect > 0) || !(obj.period > 0))
            throw Error(ErrorCode::invalid_value, tag + "aspect and period must be > 0");
        check_object_bounds(*this, obj, i);
    }
}

ScalarField procedural_texture(int width, int height, std::uint32_t seed, double contrast) {
    struct Octave {
        double cell;
        double amplitude;
    };
    // Mostly coarse blobs with a little fine clutter.
    constexpr Octave octaves[] = {{48.0, 1.0}, {24.0, 0.5}, {12.0, 0.25}, {6.0, 0.125}};
    double amplitude_total = 0.0;
    for (const auto& o : octaves) amplitude_total += o.amplitude;

    ScalarField out(width, height);
    for (int k = 0; k < static_cast<int>(std::size(octaves)); ++k) {
        const auto& o = octaves[k];
        const int nx = std::max(1, static_cast<int>(std::lround(width / o.cell)));
        const int ny = std::max(1, static_cast<int>(std::lround(height / o.cell)));
        const double cx = static_cast<double>(width) / nx;
        const double cy = static_cast<double>(height) / ny;
        for (int y = 0; y < height; ++y) {
            const double v = y / cy;
            const int j0 = static_cast<int>(std::floor(v));
            const double fy = smooth(v - j0);
            for (int x = 0; x < width; ++x) {
                const double u = x / cx;
                const int i0 = static_cast<int>(std::floor(u));
                const double fx = smooth(u - i0);
                const int i1 = (i0 + 1) % nx;
                const int j1 = (j0 + 1) % ny;
                const double a = lattice(seed, k, i0 % nx, j0 % ny);
                const double b = lattice(seed, k, i1, j0 % ny);
                const double c = lattice(seed, k, i0 % nx, j1);
                const double d = lattice(seed, k, i1, j1);
                const double top = a + (b - a) * fx;
                const double bottom = c + (d - c) * fx;
                out.at(x, y) += o.amplitude * (top + (bottom - top) * fy);
            }
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::clamp(kMidGray + contrast * out[i] / amplitude_total, 0.0, 255.0);
    return out;
}

ScalarField render_frame(const StimulusSpec& spec, int frame) {
    spec.validate();
    if (frame < 0 || frame >= spec.frames)
        throw Error(ErrorCode::out_of_bounds, "frame " + std::to_string(frame) + " outside the sequence");
    std::optional<ScalarField> texture;
    if (std::holds_alternative<ShiftingImageBackground>(spec.background)) texture = load_texture(spec);
    return compose_frame(spec, texture ? &*texture : nullptr, frame);
}

std::vector<ScalarField> render(const StimulusSpec& spec) {
    spec.validate();
    std::optional<ScalarField> texture;
    if (std::holds_alternative<ShiftingImageBackground>(spec.background)) texture = load_texture(spec);
    std::vector<ScalarField> frames;
    frames.reserve(static_cast<std::size_t>(spec.frames));
    for (int t = 0; t < spec.frames; ++t) frames.push_back(compose_frame(spec, texture ? &*texture : nullptr, t));
    return frames;
}

std::vector<double> linear_ramp(int frames, int start, int end, double from, double to) {
    std::vector<double> path(static_cast<std::size_t>(frames), 0.0);
    const int n = end - start;
    for (int t = start; t < end; ++t) {
        const double f = n > 1 ? static_cast<double>(t - start) / (n - 1) : 0.0;
        path[static_cast<std::size_t>(t)] = from + (to - from) * f;
    }
    return path;
}

ObjectTrack looming_square(Polarity polarity, Point2 center, int onset, int frames,
                           double from_size, double to_size, int total_frames) {
    ObjectTrack obj;
    obj.shape = Shape::square;
    obj.polarity = polarity;
    obj.onset = onset;
    obj.offset = onset + frames;
    obj.center_path.assign(static_cast<std::size_t>(total_frames), center);
    obj.size_path = linear_ramp(total_frames, onset, onset + frames, from_size, to_size);
    return obj;
}

ObjectTrack approach_hold_recede(Point2 center, int onset, int approach, int hold, int recede,
                                 double min_size, double max_size, int total_frames) {
    ObjectTrack obj;
    obj.shape = Shape::square;
    obj.polarity = Polarity::dark;
    obj.onset = onset;
    obj.offset = onset + approach + hold + recede;
    obj.center_path.assign(static_cast<std::size_t>(total_frames), center);
    obj.size_path.assign(static_cast<std::size_t>(total_frames), 0.0);
    for (int j = 0; j < approach; ++j)
        obj.size_path[static_cast<std::size_t>(onset + j)] =
            min_size + (max_size - min_size) * (j + 1) / approach;
    for (int j = 0; j < hold; ++j)
        obj.size_path[static_cast<std::size_t>(onset + approach + j)] = max_size;
    for (int j = 0; j < recede; ++j)
        obj.size_path[static_cast<std::size_t>(onset + approach + hold + j)] =
            max_size - (max_size - min_size) * (j + 1) / recede;
    return obj;
}

StimulusSpec time_reversed(const StimulusSpec& spec) {
    StimulusSpec out = spec;
    for (auto& obj : out.objects) {
        std::reverse(obj.center_path.begin(), obj.center_path.end());
        std::reverse(obj.size_path.begin(), obj.size_path.end());
        const int onset = spec.frames - obj.offset;
        obj.offset = spec.frames - obj.onset;
        obj.onset = onset;
    }
    return out;
}

std::map<std::string, StimulusSpec> builtin_scenarios() {
    std::map<std::string, StimulusSpec> out;

    // Characteristic study: 100x100, 50 frames, 33 Hz, mid-gray background.
    StimulusSpec small;
    small.width = 100;
    small.height = 100;
    small.frames = 50;
    small.fps = 33.0;
    small.background = UniformBackground{kMidGray};
    const Point2 centre{50.0, 50.0};

    StimulusSpec dark_loom = small;
    dark_loom.objects.push_back(looming_square(Polarity::dark, centre, 0, 50, 6.0, 96.0, 50));
    out["dark_loom"] = dark_loom;
    out["dark_recede"] = time_reversed(dark_loom);

    StimulusSpec bright_loom = small;
    bright_loom.objects.push_back(looming_square(Polarity::bright, centre, 0, 50, 6.0, 96.0, 50));
    out["bright_loom"] = bright_loom;
    out["bright_recede"] = time_reversed(bright_loom);

    StimulusSpec translate = small;
    {
        ObjectTrack obj;
        obj.shape = Shape::square;
        obj.polarity = Polarity::dark;
        obj.onset = 0;
        obj.offset = 50;
        obj.size_path.assign(50, 20.0);
        const auto xs = linear_ramp(50, 0, 50, 20.0, 80.0);
        for (int t = 0; t < 50; ++t) obj.center_path.push_back({xs[static_cast<std::size_t>(t)], 50.0});
        translate.objects.push_back(obj);
    }
    out["translate"] = translate;

    StimulusSpec grating = small;
    {
        ObjectTrack obj;
        obj.shape = Shape::grating;
        obj.polarity = Polarity::dark;
        obj.onset = 0;
        obj.offset = 50;
        obj.period = 20.0;
        obj.size_path.assign(50, 0.0);
        for (int t = 0; t < 50; ++t) obj.center_path.push_back({2.0 * t, 0.0});
        grating.objects.push_back(obj);
    }
    out["grating"] = grating;

    // Shifting-scene experiments: 320x240, 33 Hz, clutter scrolling left.
    StimulusSpec wide;
    wide.width = 320;
    wide.height = 240;
    wide.fps = 33.0;
    wide.background = ShiftingImageBackground{};

    StimulusSpec four_phase = wide;
    four_phase.frames = 400;
    {
        const Point2 centres[] = {{160, 120}, {240, 60}, {80, 180}};
        for (int phase = 0; phase < 3; ++phase)
            four_phase.objects.push_back(
                approach_hold_recede(centres[phase], 100 * phase, 40, 20, 40, 6.0, 24.0, 400));
        four_phase.objects.push_back(approach_hold_recede({80, 60}, 300, 40, 20, 40, 6.0, 24.0, 400));
        four_phase.objects.push_back(approach_hold_recede({240, 180}, 300, 40, 20, 40, 6.0, 24.0, 400));
    }
    out["four_phase"] = four_phase;

    StimulusSpec six_object = wide;
    six_object.frames = 100;
    {
        const int onsets[] = {5, 15, 25, 45, 55, 65};
        const Point2 centres[] = {{60, 60}, {260, 180}, {160, 60}, {60, 180}, {260, 60}, {160, 180}};
        for (int k = 0; k < 6; ++k)
            six_object.objects.push_back(
                looming_square(Polarity::dark, centres[k], onsets[k], 30, 6.0, 24.0, 100));
    }
    out["six_object"] = six_object;

    return out;
}

std::map<std::string, StimulusSpec> extra_scenarios() {
    std::map<std::string, StimulusSpec> out;

    StimulusSpec quadrant;
    quadrant.width = 320;
    quadrant.height = 240;
    quadrant.frames = 60;
    quadrant.fps = 33.0;
    quadrant.background = UniformBackground{kMidGray};
    quadrant.objects.push_back(looming_square(Polarity::dark, {205, 85}, 0, 40, 6.0, 40.0, 60));
    out["quadrant_loom"] = quadrant;

    // Object outgrowing one attention field.
    StimulusSpec large = quadrant;
    large.objects.clear();
    large.width = 160;
    large.height = 120;
    large.frames = 60;
    large.objects.push_back(looming_square(Polarity::dark, {80, 60}, 0, 60, 6.0, 110.0, 60));
    out["large_loom"] = large;

    // Expansion centre drifting across the field while the object looms.
    StimulusSpec drifting = large;
    drifting.objects.clear();
    {
        ObjectTrack obj = looming_square(Polarity::dark, {40, 60}, 0, 60, 6.0, 40.0, 60);
        const auto xs = linear_ramp(60, 0, 60, 40.0, 120.0);
        for (int t = 0; t < 60; ++t) obj.center_path[static_cast<std::size_t>(t)].x = xs[static_cast<std::size_t>(t)];
        drifting.objects.push_back(obj);
    }
    out["shifting_center"] = drifting;

    return out;
}

StimulusSpec builtin_scenario(const std::string& name) {
    auto all = builtin_scenarios();
    all.merge(extra_scenarios());
    const auto it = all.find(name);
    if (it == all.end()) throw Error(ErrorCode::invalid_value, "unknown scenario '" + name + "'");
    return it->second;
}

nlohmann::ordered_json to_json(const StimulusSpec& spec) {
    nlohmann::ordered_json out;
    out["width"] = spec.width;
    out["height"] = spec.height;
    out["frames"] = spec.frames;
    out["fps"] = spec.fps;
    if (const auto* u = std::get_if<UniformBackground>(&spec.background)) {
        out["background"] = {{"type", "uniform"}, {"level", u->level}};
    } else {
        const auto& s = std::get<ShiftingImageBackground>(spec.background);
        out["background"] = {{"type", "shifting_image"},
                             {"source", s.source},
                             {"px_per_frame", s.px_per_frame},
                             {"texture_seed", s.texture_seed},
                             {"texture_contrast", s.texture_contrast}};
    }
    auto objects = nlohmann::ordered_json::array();
    for (const auto& obj : spec.objects) {
        nlohmann::ordered_json o;
        o["shape"] = to_string(obj.shape);
        o["polarity"] = obj.polarity == Polarity::dark ? "dark" : "bright";
        o["onset"] = obj.onset;
        o["offset"] = obj.offset;
        o["aspect"] = obj.aspect;
        o["period"] = obj.period;
        auto centres = nlohmann::ordered_json::array();
        for (const auto& p : obj.center_path) centres.push_back({p.x, p.y});
        o["center_path"] = centres;
        o["size_path"] = obj.size_path;
        objects.push_back(o);
    }
    out["objects"] = objects;
    return out;
}

StimulusSpec stimulus_from_json(const json& doc) {
    try {
        StimulusSpec spec;
        spec.width = doc.at("width").get<int>();
        spec.height = doc.at("height").get<int>();
        spec.frames = doc.at("frames").get<int>();
        spec.fps = doc.value("fps", 33.0);
        const auto& bg = doc.at("background");
        const auto type = bg.at("type").get<std::string>();
        if (type == "uniform") {
            spec.background = UniformBackground{bg.value("level", kMidGray)};
        } else if (type == "shifting_image") {
            ShiftingImageBackground s;
            s.source = bg.value("source", std::string{});
            s.px_per_frame = bg.value("px_per_frame", 1);
            s.texture_seed = bg.value("texture_seed", 1u);
            s.texture_contrast = bg.value("texture_contrast", s.texture_contrast);
            spec.background = s;
        } else {
            throw Error(ErrorCode::invalid_value, "background: unknown type '" + type + "'");
        }
        for (const auto& o : doc.value("objects", json::array())) {
            ObjectTrack obj;
            obj.shape = parse_shape(o.at("shape").get<std::string>());
            obj.polarity = parse_polarity(o.at("polarity").get<std::string>());
            obj.onset = o.at("onset").get<int>();
            obj.offset = o.at("offset").get<int>();
            obj.aspect = o.value("aspect", 1.0);
            obj.period = o.value("period", 20.0);
            for (const auto& p : o.at("center_path")) obj.center_path.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            obj.size_path = o.at("size_path").get<std::vector<double>>();
            spec.objects.push_back(std::move(obj));
        }
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse, std::string("stimulus: ") + e.what());
    }
}

}  // namespace lplc2
