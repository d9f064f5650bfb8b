#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace dirsr {

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Grayscale image with intensities in [0,1]. Every constructor clamps, so the
// range invariant holds for any Image value.
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0) : pixels_(width, height, clamp01(fill)) {
        require_positive(width, height);
    }
    Image(int width, int height, std::vector<double> pixels)
        : pixels_(width, height, std::move(pixels)) {
        require_positive(width, height);
        clamp_all();
    }
    explicit Image(Plane plane) : pixels_(std::move(plane)) {
        require_positive(pixels_.width(), pixels_.height());
        clamp_all();
    }

    int width() const noexcept { return pixels_.width(); }
    int height() const noexcept { return pixels_.height(); }
    double operator()(int row, int col) const { return pixels_(row, col); }
    void set(int row, int col, double v) { pixels_(row, col) = clamp01(v); }

    const Plane& plane() const noexcept { return pixels_; }
    std::span<const double> pixels() const noexcept { return pixels_.values(); }

    friend bool operator==(const Image&, const Image&) = default;

private:
    static void require_positive(int w, int h) {
        if (w <= 0 || h <= 0) throw ShapeError("image dimensions must be positive");
    }
    void clamp_all() {
        for (auto& v : pixels_) v = clamp01(v);
    }

    Plane pixels_;
};

struct Dims {
    int width = 0;
    int height = 0;
    friend bool operator==(const Dims&, const Dims&) = default;
};

}  // namespace dirsr
