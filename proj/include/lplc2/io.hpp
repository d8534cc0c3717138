#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lplc2/attention.hpp"
#include "lplc2/config.hpp"
#include "lplc2/lobula.hpp"
#include "lplc2/scalar_field.hpp"

namespace lplc2 {

/// 0.299 R + 0.587 G + 0.114 B.
double luminance(double r, double g, double b) noexcept;

/// Any image OpenCV can decode; colour is reduced to luminance.
ScalarField read_image(const std::filesystem::path& path);
/// Rounds and clamps to 8 bits; the format follows the extension.
void write_image(const std::filesystem::path& path, const ScalarField& field);

/// Image files in a directory, sorted by the first number in each file name
/// (then by name).
std::vector<ScalarField> ingest_directory(const std::filesystem::path& dir);
/// Concatenated 8-bit frames of width*height bytes each.
std::vector<ScalarField> ingest_raw(const std::filesystem::path& file, int width, int height);

struct RawGeometry {
    int width = 0;
    int height = 0;
};

/// Directory or raw file; sets config.frame_interval_ms from fps.
std::vector<ScalarField> ingest(const std::filesystem::path& source, double fps,
                                ModelConfig& config, const RawGeometry& raw = {});

/// Real values are written with 9 significant digits.
double round_significant(double value, int digits = 9);
nlohmann::ordered_json to_json(const DetectionEvent& event);
std::string to_json_line(const DetectionEvent& event);
DetectionEvent event_from_json(const nlohmann::json& record);

struct EmitOptions {
    std::filesystem::path out_dir;
    std::string events_file = "events.jsonl";
    bool write_csv = true;
};

/// events.jsonl plus af_<id>.csv (frame,response) for every AF seen.
void emit(const std::vector<DetectionEvent>& events, const EmitOptions& options);

/// Writes lm_r, lm_l, lm_u, lm_d, magnitude as consecutive little-endian
/// float64 planes to fields/frame_<index>.f64.
void dump_fields(const std::filesystem::path& out_dir, int frame_index,
                 const DirectionalMotion& dm);

}  // namespace lplc2
