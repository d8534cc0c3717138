#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lplc2 {

/// Dense row-major grid of doubles covering the visual field.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int width, int height, double fill = 0.0);
    ScalarField(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double& at(int x, int y) { return values_[index(x, y)]; }
    double at(int x, int y) const { return values_[index(x, y)]; }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    bool same_shape(const ScalarField& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    double sum() const noexcept;
    double max() const noexcept;
    double min() const noexcept;
    bool all_finite() const noexcept;

    void fill(double value);

    bool operator==(const ScalarField&) const = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

/// Throws dimension_mismatch unless the two fields share a shape.
void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what);

ScalarField flip_horizontal(const ScalarField& field);
ScalarField flip_vertical(const ScalarField& field);

/// Largest absolute pointwise difference; fields must share a shape.
double max_abs_difference(const ScalarField& a, const ScalarField& b);

}  // namespace lplc2
