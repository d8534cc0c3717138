#include "lplc2/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "lplc2/error.hpp"

namespace lplc2 {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(std::string_view field, std::string_view why) {
    throw Error(ErrorCode::invalid_value, std::string(field) + ": " + std::string(why));
}

int as_int(std::string_view key, const json& value) {
    if (value.is_number_integer()) return value.get<int>();
    if (value.is_number_float()) {
        const double d = value.get<double>();
        if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
    }
    invalid(key, "expected an integer");
}

double as_real(std::string_view key, const json& value) {
    if (value.is_number()) return value.get<double>();
    invalid(key, "expected a number");
}

std::string as_text(std::string_view key, const json& value) {
    if (value.is_string()) return value.get<std::string>();
    invalid(key, "expected a string");
}

struct FieldSpec {
    const char* name;
    std::function<void(ModelConfig&, const json&)> set;
    std::function<json(const ModelConfig&)> get;
};

#define LPLC2_INT_FIELD(member)                                                        \
    FieldSpec {                                                                        \
        #member, [](ModelConfig& c, const json& v) { c.member = as_int(#member, v); }, \
            [](const ModelConfig& c) { return json(c.member); }                        \
    }
#define LPLC2_REAL_FIELD(member)                                                        \
    FieldSpec {                                                                         \
        #member, [](ModelConfig& c, const json& v) { c.member = as_real(#member, v); }, \
            [](const ModelConfig& c) { return json(c.member); }                         \
    }

const std::vector<FieldSpec>& field_table() {
    static const std::vector<FieldSpec> table = {
        LPLC2_INT_FIELD(r_de),
        LPLC2_INT_FIELD(r_di),
        LPLC2_INT_FIELD(r_dc),
        LPLC2_REAL_FIELD(sigma_e),
        LPLC2_REAL_FIELD(sigma_i),
        LPLC2_REAL_FIELD(sigma_c),
        LPLC2_REAL_FIELD(epsilon),
        LPLC2_INT_FIELD(n_c),
        LPLC2_REAL_FIELD(tau_1),
        LPLC2_REAL_FIELD(tau_nc_start),
        LPLC2_REAL_FIELD(tau_nc_end),
        LPLC2_REAL_FIELD(beta),
        LPLC2_REAL_FIELD(gamma_1),
        LPLC2_REAL_FIELD(gamma_2),
        LPLC2_INT_FIELD(r_af),
        LPLC2_REAL_FIELD(t_a),
        LPLC2_REAL_FIELD(t_d),
        LPLC2_INT_FIELD(d_frames),
        LPLC2_REAL_FIELD(frame_interval_ms),
        LPLC2_REAL_FIELD(leak_slope),
        LPLC2_REAL_FIELD(gate_epsilon),
        FieldSpec{"max_afs",
                  [](ModelConfig& c, const json& v) {
                      if (v.is_null()) {
                          c.max_afs.reset();
                      } else {
                          c.max_afs = as_int("max_afs", v);
                      }
                  },
                  [](const ModelConfig& c) { return c.max_afs ? json(*c.max_afs) : json(nullptr); }},
        FieldSpec{"variant",
                  [](ModelConfig& c, const json& v) { c.variant = parse_variant(as_text("variant", v)); },
                  [](const ModelConfig& c) { return json(to_string(c.variant)); }},
        FieldSpec{"boundary",
                  [](ModelConfig& c, const json& v) { c.boundary = parse_boundary(as_text("boundary", v)); },
                  [](const ModelConfig& c) { return json(to_string(c.boundary)); }},
        FieldSpec{"delay_mode",
                  [](ModelConfig& c, const json& v) {
                      c.delay_mode = parse_delay_mode(as_text("delay_mode", v));
                  },
                  [](const ModelConfig& c) { return json(to_string(c.delay_mode)); }},
    };
    return table;
}

#undef LPLC2_INT_FIELD
#undef LPLC2_REAL_FIELD

}  // namespace

const char* to_string(Variant v) {
    switch (v) {
        case Variant::multi: return "multi";
        case Variant::single: return "single";
        case Variant::center: return "center";
    }
    return "multi";
}

const char* to_string(Boundary b) {
    return b == Boundary::replicate ? "replicate" : "zero";
}

const char* to_string(DelayMode m) {
    return m == DelayMode::pooled ? "pooled" : "per_distance";
}

Variant parse_variant(std::string_view text) {
    if (text == "multi") return Variant::multi;
    if (text == "single") return Variant::single;
    if (text == "center") return Variant::center;
    invalid("variant", "expected multi, single or center, got '" + std::string(text) + "'");
}

Boundary parse_boundary(std::string_view text) {
    if (text == "replicate") return Boundary::replicate;
    if (text == "zero") return Boundary::zero;
    invalid("boundary", "expected replicate or zero, got '" + std::string(text) + "'");
}

DelayMode parse_delay_mode(std::string_view text) {
    if (text == "pooled") return DelayMode::pooled;
    if (text == "per_distance") return DelayMode::per_distance;
    invalid("delay_mode", "expected pooled or per_distance, got '" + std::string(text) + "'");
}

double alpha_for_delay(double tau_ms, double frame_interval_ms) {
    return frame_interval_ms / (frame_interval_ms + tau_ms);
}

void ModelConfig::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };

    if (r_de < 1) invalid("r_de", "radius must be >= 1");
    if (r_di < 1) invalid("r_di", "radius must be >= 1");
    if (r_dc < 1) invalid("r_dc", "radius must be >= 1");
    if (r_af < 1) invalid("r_af", "radius must be >= 1");
    if (r_di <= r_de) invalid("r_di", "inhibitory radius must exceed r_de");
    if (!(sigma_e > 0) || !finite(sigma_e)) invalid("sigma_e", "must be > 0");
    if (!(sigma_i > 0) || !finite(sigma_i)) invalid("sigma_i", "must be > 0");
    if (!(sigma_c > 0) || !finite(sigma_c)) invalid("sigma_c", "must be > 0");
    if (!(epsilon > 0) || !finite(epsilon)) invalid("epsilon", "must be > 0");
    if (!(beta >= 0) || !finite(beta)) invalid("beta", "must be >= 0");
    if (n_c < 1) invalid("n_c", "must be >= 1");
    if (!(tau_1 > 0) || !finite(tau_1)) invalid("tau_1", "must be > 0");
    if (!(tau_nc_end > 0) || !finite(tau_nc_end)) invalid("tau_nc_end", "must be > 0");
    if (!(tau_nc_start >= tau_nc_end) || !finite(tau_nc_start))
        invalid("tau_nc_start", "must be >= tau_nc_end");
    if (!(gamma_1 > 0) || !finite(gamma_1)) invalid("gamma_1", "must be > 0");
    if (!(gamma_2 > 0) || !finite(gamma_2)) invalid("gamma_2", "must be > 0");
    if (!(t_a > 0) || !finite(t_a)) invalid("t_a", "must be > 0");
    if (!(t_d > 0) || !finite(t_d)) invalid("t_d", "must be > 0");
    if (d_frames < 1) invalid("d_frames", "must be >= 1");
    if (!(frame_interval_ms > 0) || !finite(frame_interval_ms))
        invalid("frame_interval_ms", "must be > 0");
    if (!(leak_slope >= 0 && leak_slope < 1)) invalid("leak_slope", "must lie in [0, 1)");
    if (!(gate_epsilon >= 0) || !finite(gate_epsilon)) invalid("gate_epsilon", "must be >= 0");
    if (max_afs && *max_afs < 1) invalid("max_afs", "must be >= 1 when set");
    if (variant != Variant::multi && max_afs && *max_afs != 1)
        invalid("max_afs", std::string("must be 1 for variant ") + to_string(variant));
}

std::optional<int> ModelConfig::effective_max_afs() const {
    if (variant != Variant::multi) return 1;
    return max_afs;
}

double ModelConfig::tau_for_step(int step) const {
    if (n_c == 1) return tau_nc_start;
    return tau_nc_start + (static_cast<double>(step - 1) / (n_c - 1)) * (tau_nc_end - tau_nc_start);
}

double ModelConfig::alpha_1() const { return alpha_for_delay(tau_1, frame_interval_ms); }

double ModelConfig::alpha_2() const {
    double mean = 0.0;
    for (int i = 1; i <= n_c; ++i) mean += tau_for_step(i);
    return alpha_for_delay(mean / n_c, frame_interval_ms);
}

double ModelConfig::alpha_for_step(int step) const {
    return alpha_for_delay(tau_for_step(step), frame_interval_ms);
}

void set_field(ModelConfig& config, std::string_view key, const json& value) {
    for (const auto& field : field_table()) {
        if (key == field.name) {
            field.set(config, value);
            return;
        }
    }
    throw Error(ErrorCode::unknown_key, "unknown config key '" + std::string(key) + "'");
}

ModelConfig default_config() { return ModelConfig{}; }

ModelConfig config_from_json(const json& document) {
    ModelConfig config;
    if (document.is_null()) return config;
    if (!document.is_object()) throw Error(ErrorCode::parse, "config document must be an object");
    for (const auto& [key, value] : document.items()) set_field(config, key, value);
    config.validate();
    return config;
}

ModelConfig load_config(std::string_view document) {
    const auto first = document.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return ModelConfig{};
    json parsed;
    try {
        parsed = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse, std::string("config: ") + e.what());
    }
    return config_from_json(parsed);
}

ModelConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot read config '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_config(buffer.str());
}

void apply_override(ModelConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw Error(ErrorCode::parse, "override must look like key=value: '" +
                                          std::string(assignment) + "'");
    const std::string_view key = assignment.substr(0, eq);
    const std::string text(assignment.substr(eq + 1));
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    set_field(config, key, value);
}

nlohmann::ordered_json to_json(const ModelConfig& config) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& field : field_table()) out[field.name] = field.get(config);
    return out;
}

std::string serialize(const ModelConfig& config) { return to_json(config).dump(2) + "\n"; }

}  // namespace lplc2
