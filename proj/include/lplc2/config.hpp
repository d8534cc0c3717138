#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace lplc2 {

/// mLPLC2 (multi-attention), sLPLC2 (one AF at the motion centroid) and the
/// original LPLC2 with a single receptive field pinned to the frame centre.
enum class Variant { multi, single, center };

/// Edge policy for every spatial lookup (convolution and HRC partners).
enum class Boundary { replicate, zero };

/// How the T4/T5 accumulation is delayed: one low-pass on the summed
/// correlator output (pooled), or one low-pass per correlation distance.
enum class DelayMode { pooled, per_distance };

const char* to_string(Variant v);
const char* to_string(Boundary b);
const char* to_string(DelayMode m);
Variant parse_variant(std::string_view text);
Boundary parse_boundary(std::string_view text);
DelayMode parse_delay_mode(std::string_view text);

struct ModelConfig {
    // Lamina / medulla spatial pools (pixels).
    int r_de = 5;
    int r_di = 11;
    int r_dc = 5;
    double sigma_e = 10.0;
    double sigma_i = 20.0;
    double sigma_c = 20.0;

    double epsilon = 0.2;
    int n_c = 5;

    // Delays (milliseconds). The T4/T5 delay slides linearly from start to
    // end across correlation distances 1..n_c.
    double tau_1 = 80.0;
    double tau_nc_start = 80.0;
    double tau_nc_end = 40.0;

    double beta = 1.5;
    double gamma_1 = 0.9;
    double gamma_2 = 0.5;

    int r_af = 40;
    double t_a = 10.0;
    double t_d = 5000.0;
    int d_frames = 10;
    double frame_interval_ms = 1000.0 / 33.0;

    double leak_slope = 0.1;
    double gate_epsilon = 1e-9;

    std::optional<int> max_afs;
    Variant variant = Variant::multi;
    Boundary boundary = Boundary::replicate;
    DelayMode delay_mode = DelayMode::pooled;

    /// Throws Error(invalid_value) naming the first violated invariant.
    void validate() const;

    /// AF cap actually enforced: 1 for single/center, max_afs otherwise.
    std::optional<int> effective_max_afs() const;

    /// Dynamic delay at correlation step `step` (1-based).
    double tau_for_step(int step) const;
    double alpha_1() const;
    double alpha_2() const;
    double alpha_for_step(int step) const;

    bool operator==(const ModelConfig&) const = default;
};

/// tau_i / (tau_i + tau): the first-order low-pass coefficient for a delay.
double alpha_for_delay(double tau_ms, double frame_interval_ms);

/// Flat key/value document (a JSON object). Missing keys keep their defaults.
ModelConfig load_config(std::string_view document);
ModelConfig config_from_json(const nlohmann::json& document);
ModelConfig load_config_file(const std::string& path);
ModelConfig default_config();

/// `key=value`; the value is read as JSON when it parses, otherwise as a
/// bare string (so `variant=single` works without quoting).
void apply_override(ModelConfig& config, std::string_view assignment);
void set_field(ModelConfig& config, std::string_view key, const nlohmann::json& value);

nlohmann::ordered_json to_json(const ModelConfig& config);
std::string serialize(const ModelConfig& config);

}  // namespace lplc2
