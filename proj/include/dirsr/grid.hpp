#pragma once

#include <algorithm>
#include <cmath>
#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "error.hpp"

namespace dirsr {

// Dense row-major 2-D array. Used for images, patches and subbands alike.
template <class T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height), data_(checked_area(width, height), fill) {}
    Grid(int width, int height, std::vector<T> values)
        : width_(width), height_(height), data_(std::move(values)) {
        if (data_.size() != checked_area(width, height))
            throw ShapeError("grid value count does not match width*height");
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(int row, int col) {
        assert(row >= 0 && row < height_ && col >= 0 && col < width_);
        return data_[static_cast<std::size_t>(row) * width_ + col];
    }
    const T& operator()(int row, int col) const {
        assert(row >= 0 && row < height_ && col >= 0 && col < width_);
        return data_[static_cast<std::size_t>(row) * width_ + col];
    }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }
    const std::vector<T>& vector() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    static std::size_t checked_area(int width, int height) {
        if (width < 0 || height < 0) throw ShapeError("negative grid dimension");
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using Plane = Grid<double>;

template <class T, class F>
Grid<T> map(const Grid<T>& g, F&& f) {
    Grid<T> out = g;
    for (auto& v : out) v = f(v);
    return out;
}

inline Plane scaled(const Plane& g, double s) {
    return map(g, [s](double v) { return v * s; });
}

inline double max_abs_diff(const Plane& a, const Plane& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw ShapeError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

}  // namespace dirsr
