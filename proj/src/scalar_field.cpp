#include "lplc2/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lplc2/error.hpp"

namespace lplc2 {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_value: return "invalid value";
        case ErrorCode::unknown_key: return "unknown key";
        case ErrorCode::dimension_mismatch: return "dimension mismatch";
        case ErrorCode::kernel_too_large: return "kernel too large";
        case ErrorCode::distance_too_large: return "distance too large";
        case ErrorCode::out_of_bounds: return "out of bounds";
        case ErrorCode::io: return "i/o error";
        case ErrorCode::parse: return "parse error";
        case ErrorCode::too_few_frames: return "too few frames";
        case ErrorCode::test_scale_exceeded: return "test scale exceeded";
    }
    return "error";
}

ScalarField::ScalarField(int width, int height, double fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::invalid_value,
                    "field dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ScalarField::ScalarField(int width, int height, std::vector<double> values)
    : ScalarField(width, height) {
    if (values.size() != values_.size()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "expected " + std::to_string(values_.size()) + " values, got " +
                        std::to_string(values.size()));
    }
    values_ = std::move(values);
}

double ScalarField::sum() const noexcept {
    double total = 0.0;
    for (double v : values_) total += v;
    return total;
}

double ScalarField::max() const noexcept {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double ScalarField::min() const noexcept {
    return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void ScalarField::fill(double value) { std::fill(values_.begin(), values_.end(), value); }

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what) {
    if (!a.same_shape(b)) {
        throw Error(ErrorCode::dimension_mismatch,
                    std::string(what) + ": " + std::to_string(a.width()) + "x" +
                        std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                        std::to_string(b.height()));
    }
}

ScalarField flip_horizontal(const ScalarField& field) {
    ScalarField out(field.width(), field.height());
    for (int y = 0; y < field.height(); ++y)
        for (int x = 0; x < field.width(); ++x)
            out.at(field.width() - 1 - x, y) = field.at(x, y);
    return out;
}

ScalarField flip_vertical(const ScalarField& field) {
    ScalarField out(field.width(), field.height());
    for (int y = 0; y < field.height(); ++y)
        for (int x = 0; x < field.width(); ++x)
            out.at(x, field.height() - 1 - y) = field.at(x, y);
    return out;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
    require_same_shape(a, b, "max_abs_difference");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace lplc2
