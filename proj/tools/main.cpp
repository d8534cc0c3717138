// lplc2: looming detection over frame sequences with an attention-driven
// LPLC2 ensemble.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lplc2/config.hpp"
#include "lplc2/error.hpp"
#include "lplc2/io.hpp"
#include "lplc2/pipeline.hpp"
#include "lplc2/stimuli.hpp"

namespace fs = std::filesystem;
using namespace lplc2;

namespace {

struct ModelOptions {
    std::string config_path;
    std::string variant;
    std::vector<std::string> overrides;
};

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Model configuration (flat JSON object)");
    cmd->add_option("--variant", opts.variant, "multi | single | center")
        ->check(CLI::IsMember({"multi", "single", "center"}));
    cmd->add_option("--set", opts.overrides, "Override one parameter, key=value (repeatable)");
}

ModelConfig build_config(const ModelOptions& opts) {
    ModelConfig config = opts.config_path.empty() ? default_config() : load_config_file(opts.config_path);
    for (const auto& o : opts.overrides) apply_override(config, o);
    if (!opts.variant.empty()) config.variant = parse_variant(opts.variant);
    return config;
}

void detect_and_emit(const std::vector<ScalarField>& frames, const ModelConfig& config,
                     const fs::path& out, bool dump) {
    config.validate();
    if (frames.size() < 2) throw Error(ErrorCode::too_few_frames, "need at least 2 frames");
    Detector detector(config);
    std::vector<DetectionEvent> events;
    for (const auto& frame : frames) {
        if (auto event = detector.push(frame)) {
            if (dump) dump_fields(out, event->frame_index, detector.last_motion());
            events.push_back(std::move(*event));
        }
    }
    emit(events, EmitOptions{out});
    std::ofstream(out / "config.json") << serialize(config);

    int created = 0;
    for (const auto& e : events) created += static_cast<int>(e.created.size());
    std::cout << "frames: " << frames.size() << ", events: " << events.size()
              << ", attention fields created: " << created << "\n";
}

void write_frames(const std::vector<ScalarField>& frames, const fs::path& out) {
    fs::create_directories(out);
    for (std::size_t t = 0; t < frames.size(); ++t) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.png", t);
        write_image(out / name, frames[t]);
    }
}

StimulusSpec load_scenario(const std::string& name) {
    if (fs::is_regular_file(name)) {
        std::ifstream in(name);
        return stimulus_from_json(nlohmann::json::parse(in));
    }
    return builtin_scenario(name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attention-driven LPLC2 ensemble looming detector"};
    app.require_subcommand(1);

    // detect
    auto* detect = app.add_subcommand("detect", "Run the detector over a frame sequence");
    std::string input;
    std::string out_dir;
    double fps = 33.0;
    int raw_width = 0;
    int raw_height = 0;
    bool dump_flag = false;
    ModelOptions detect_model;
    detect->add_option("--input", input, "Directory of numbered images, or a raw 8-bit file")->required();
    detect->add_option("--fps", fps, "Input frame rate in Hz")->check(CLI::PositiveNumber);
    detect->add_option("--width", raw_width, "Frame width for raw input");
    detect->add_option("--height", raw_height, "Frame height for raw input");
    detect->add_option("--out", out_dir, "Output directory")->required();
    detect->add_flag("--dump-fields", dump_flag, "Write per-frame LM maps to <out>/fields");
    add_model_options(detect, detect_model);

    // render-stimulus
    auto* render_cmd = app.add_subcommand("render-stimulus", "Write a stimulus as numbered PNG frames");
    std::string scenario;
    std::string render_out;
    bool save_spec = false;
    render_cmd->add_option("--scenario", scenario, "Built-in scenario name or spec JSON file")->required();
    render_cmd->add_option("--out", render_out, "Output directory")->required();
    render_cmd->add_flag("--save-spec", save_spec, "Also write the scenario as <out>/stimulus.json");

    // run-scenario
    auto* run_cmd = app.add_subcommand("run-scenario", "Render a stimulus and run the detector on it");
    std::string run_scenario_name;
    std::string run_out;
    bool run_dump = false;
    ModelOptions run_model;
    run_cmd->add_option("--scenario", run_scenario_name, "Built-in scenario name or spec JSON file")->required();
    run_cmd->add_option("--out", run_out, "Output directory")->required();
    run_cmd->add_flag("--dump-fields", run_dump, "Write per-frame LM maps to <out>/fields");
    add_model_options(run_cmd, run_model);

    auto* list_cmd = app.add_subcommand("list-scenarios", "Print the built-in scenario names");
    auto* config_cmd = app.add_subcommand("print-config", "Print the effective configuration");
    ModelOptions print_model;
    add_model_options(config_cmd, print_model);

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed()) {
            ModelConfig config = build_config(detect_model);
            const auto frames = ingest(input, fps, config, RawGeometry{raw_width, raw_height});
            detect_and_emit(frames, config, out_dir, dump_flag);
        } else if (render_cmd->parsed()) {
            const StimulusSpec spec = load_scenario(scenario);
            write_frames(render(spec), render_out);
            if (save_spec) std::ofstream(fs::path(render_out) / "stimulus.json") << to_json(spec).dump(1) << "\n";
        } else if (run_cmd->parsed()) {
            const StimulusSpec spec = load_scenario(run_scenario_name);
            ModelConfig config = build_config(run_model);
            config.frame_interval_ms = 1000.0 / spec.fps;
            fs::create_directories(run_out);
            detect_and_emit(render(spec), config, run_out, run_dump);
        } else if (list_cmd->parsed()) {
            auto all = builtin_scenarios();
            all.merge(extra_scenarios());
            for (const auto& [name, spec] : all)
                std::cout << name << "  " << spec.width << "x" << spec.height << ", " << spec.frames
                          << " frames\n";
        } else if (config_cmd->parsed()) {
            ModelConfig config = build_config(print_model);
            config.validate();
            std::cout << serialize(config);
        }
    } catch (const Error& e) {
        std::cerr << "lplc2: " << to_string(e.code()) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "lplc2: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
