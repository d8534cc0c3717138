#include "lplc2/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "lplc2/error.hpp"

namespace lplc2 {

namespace fs = std::filesystem;

namespace {

bool is_image_file(const fs::path& p) {
    static const std::set<std::string> extensions = {".png", ".pgm", ".ppm", ".pnm", ".pbm",
                                                     ".jpg", ".jpeg", ".bmp", ".tif", ".tiff"};
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return extensions.count(ext) > 0;
}

// First run of digits in the stem, if any.
std::optional<long long> leading_number(const std::string& stem) {
    const auto first = stem.find_first_of("0123456789");
    if (first == std::string::npos) return std::nullopt;
    const auto last = stem.find_first_not_of("0123456789", first);
    return std::stoll(stem.substr(first, last == std::string::npos ? std::string::npos : last - first));
}

std::string format_real(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.9g", value);
    return buffer;
}

void check_frames(const std::vector<ScalarField>& frames, const std::string& source) {
    if (frames.size() < 2)
        throw Error(ErrorCode::too_few_frames,
                    source + ": need at least 2 frames, found " + std::to_string(frames.size()));
}

}  // namespace

double luminance(double r, double g, double b) noexcept { return 0.299 * r + 0.587 * g + 0.114 * b; }

ScalarField read_image(const fs::path& path) {
    const cv::Mat image = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (image.empty()) throw Error(ErrorCode::io, "cannot read image '" + path.string() + "'");

    cv::Mat values;
    const double scale = image.depth() == CV_16U ? 255.0 / 65535.0 : 1.0;
    image.convertTo(values, CV_MAKETYPE(CV_64F, image.channels()), scale);

    ScalarField out(values.cols, values.rows);
    const int channels = values.channels();
    for (int y = 0; y < values.rows; ++y) {
        const double* row = values.ptr<double>(y);
        for (int x = 0; x < values.cols; ++x) {
            const double* px = row + static_cast<std::ptrdiff_t>(x) * channels;
            // OpenCV stores colour as BGR(A).
            out.at(x, y) = channels >= 3 ? luminance(px[2], px[1], px[0]) : px[0];
        }
    }
    return out;
}

void write_image(const fs::path& path, const ScalarField& field) {
    cv::Mat image(field.height(), field.width(), CV_8UC1);
    for (int y = 0; y < field.height(); ++y) {
        auto* row = image.ptr<unsigned char>(y);
        for (int x = 0; x < field.width(); ++x)
            row[x] = static_cast<unsigned char>(std::clamp(std::round(field.at(x, y)), 0.0, 255.0));
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), image);
    } catch (const cv::Exception& e) {
        throw Error(ErrorCode::io, "cannot write image '" + path.string() + "': " + e.what());
    }
    if (!ok) throw Error(ErrorCode::io, "cannot write image '" + path.string() + "'");
}

std::vector<ScalarField> ingest_directory(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::io, "not a directory: '" + dir.string() + "'");

    std::vector<std::tuple<long long, std::string, fs::path>> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || !is_image_file(entry.path())) continue;
        const std::string name = entry.path().filename().string();
        const auto number = leading_number(entry.path().stem().string());
        files.emplace_back(number.value_or(-1), name, entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<ScalarField> frames;
    frames.reserve(files.size());
    for (const auto& [number, name, path] : files) {
        ScalarField frame = read_image(path);
        if (!frames.empty() && !frame.same_shape(frames.front())) {
            throw Error(ErrorCode::dimension_mismatch,
                        "'" + name + "' is " + std::to_string(frame.width()) + "x" +
                            std::to_string(frame.height()) + ", expected " +
                            std::to_string(frames.front().width()) + "x" +
                            std::to_string(frames.front().height()));
        }
        frames.push_back(std::move(frame));
    }
    check_frames(frames, dir.string());
    return frames;
}

std::vector<ScalarField> ingest_raw(const fs::path& file, int width, int height) {
    if (width < 1 || height < 1)
        throw Error(ErrorCode::invalid_value, "raw input needs positive width and height");
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot read '" + file.string() + "'");
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                           std::istreambuf_iterator<char>());
    const std::size_t frame_bytes = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() % frame_bytes != 0) {
        throw Error(ErrorCode::dimension_mismatch,
                    "'" + file.string() + "' holds " + std::to_string(bytes.size()) +
                        " bytes, not a multiple of " + std::to_string(frame_bytes));
    }
    std::vector<ScalarField> frames;
    for (std::size_t offset = 0; offset < bytes.size(); offset += frame_bytes) {
        ScalarField frame(width, height);
        for (std::size_t i = 0; i < frame_bytes; ++i) frame[i] = bytes[offset + i];
        frames.push_back(std::move(frame));
    }
    check_frames(frames, file.string());
    return frames;
}

std::vector<ScalarField> ingest(const fs::path& source, double fps, ModelConfig& config,
                                const RawGeometry& raw) {
    if (!(fps > 0)) throw Error(ErrorCode::invalid_value, "fps must be > 0");
    std::vector<ScalarField> frames;
    if (fs::is_directory(source)) {
        frames = ingest_directory(source);
    } else if (raw.width > 0 && raw.height > 0) {
        frames = ingest_raw(source, raw.width, raw.height);
    } else if (fs::exists(source)) {
        throw Error(ErrorCode::invalid_value,
                    "'" + source.string() + "' is a file; raw input needs --width and --height");
    } else {
        throw Error(ErrorCode::io, "no such input '" + source.string() + "'");
    }
    config.frame_interval_ms = 1000.0 / fps;
    return frames;
}

double round_significant(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
    return std::strtod(buffer, nullptr);
}

nlohmann::ordered_json to_json(const DetectionEvent& event) {
    nlohmann::ordered_json out;
    out["frame_index"] = event.frame_index;
    auto afs = nlohmann::ordered_json::array();
    for (const auto& af : event.afs) {
        nlohmann::ordered_json a;
        a["id"] = af.id;
        a["cx"] = af.cx;
        a["cy"] = af.cy;
        a["radius"] = af.radius;
        a["response"] = round_significant(af.response);
        a["age_frames"] = af.age_frames;
        a["windowed_sum"] = round_significant(af.windowed_sum);
        afs.push_back(std::move(a));
    }
    out["afs"] = std::move(afs);
    out["created"] = event.created;
    out["removed"] = event.removed;
    return out;
}

std::string to_json_line(const DetectionEvent& event) { return to_json(event).dump(); }

DetectionEvent event_from_json(const nlohmann::json& record) {
    try {
        DetectionEvent event;
        event.frame_index = record.at("frame_index").get<int>();
        for (const auto& a : record.at("afs")) {
            event.afs.push_back(AfSnapshot{a.at("id").get<int>(), a.at("cx").get<int>(),
                                           a.at("cy").get<int>(), a.at("radius").get<int>(),
                                           a.at("response").get<double>(), a.at("age_frames").get<int>(),
                                           a.at("windowed_sum").get<double>()});
        }
        event.created = record.at("created").get<std::vector<int>>();
        event.removed = record.at("removed").get<std::vector<int>>();
        return event;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, std::string("event record: ") + e.what());
    }
}

void emit(const std::vector<DetectionEvent>& events, const EmitOptions& options) {
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create '" + options.out_dir.string() + "': " + ec.message());

    const fs::path events_path = options.out_dir / options.events_file;
    std::ofstream out(events_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write '" + events_path.string() + "'");
    for (const auto& event : events) out << to_json_line(event) << '\n';
    if (!out) throw Error(ErrorCode::io, "write failed for '" + events_path.string() + "'");

    if (!options.write_csv) return;
    std::map<int, std::vector<std::pair<int, double>>> series;
    for (const auto& event : events)
        for (const auto& af : event.afs) series[af.id].emplace_back(event.frame_index, af.response);
    for (const auto& [id, rows] : series) {
        const fs::path path = options.out_dir / ("af_" + std::to_string(id) + ".csv");
        std::ofstream csv(path, std::ios::binary | std::ios::trunc);
        if (!csv) throw Error(ErrorCode::io, "cannot write '" + path.string() + "'");
        csv << "frame,response\n";
        for (const auto& [frame, response] : rows) csv << frame << ',' << format_real(response) << '\n';
    }
}

void dump_fields(const fs::path& out_dir, int frame_index, const DirectionalMotion& dm) {
    const fs::path dir = out_dir / "fields";
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create '" + dir.string() + "': " + ec.message());
    char name[64];
    std::snprintf(name, sizeof name, "frame_%06d.f64", frame_index);
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write '" + (dir / name).string() + "'");
    for (const ScalarField* f : {&dm.lm_r, &dm.lm_l, &dm.lm_u, &dm.lm_d, &dm.magnitude}) {
        const auto values = f->values();
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size() * sizeof(double)));
    }
    if (!out) throw Error(ErrorCode::io, "write failed for '" + (dir / name).string() + "'");
}

}  // namespace lplc2
