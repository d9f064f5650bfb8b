#pragma once

// Forward observation model: q x q block averaging with identity blur,
// plus optional additive Gaussian noise.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "image.hpp"

namespace dirsr {

inline Plane decimate(const Plane& hr, int q) {
    if (q < 1) throw PreconditionError("decimate: q must be >= 1");
    if (hr.width() % q != 0 || hr.height() % q != 0)
        throw PreconditionError("decimate: dimensions not divisible by q");
    const int w = hr.width() / q;
    const int h = hr.height() / q;
    const double weight = 1.0 / (q * q);
    Plane out(w, h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            double s = 0.0;
            for (int k = q * i; k < q * (i + 1); ++k)
                for (int l = q * j; l < q * (j + 1); ++l) s += hr(k, l);
            out(i, j) = s * weight;
        }
    return out;
}

inline Image decimate(const Image& hr, int q) { return Image(decimate(hr.plane(), q)); }

// Sparse D of y = D z for lexicographically ordered square images.
struct DecimationMatrix {
    int q = 1;
    int lr_side = 0;                        // M
    double weight = 1.0;                    // 1/q^2, shared by every nonzero
    std::vector<std::vector<int>> columns;  // per row, the q^2 referenced HR indices

    int rows() const noexcept { return lr_side * lr_side; }
    int cols() const noexcept { return (q * lr_side) * (q * lr_side); }

    // Dense 0/1 pattern of one row, e.g. "1100110000000000".
    std::string row_pattern(int row) const {
        std::string s(static_cast<std::size_t>(cols()), '0');
        for (int c : columns.at(static_cast<std::size_t>(row))) s[static_cast<std::size_t>(c)] = '1';
        return s;
    }

    std::vector<double> apply(std::span<const double> z) const {
        if (z.size() != static_cast<std::size_t>(cols())) throw ShapeError("decimation matrix: input length");
        std::vector<double> y(static_cast<std::size_t>(rows()));
        for (std::size_t r = 0; r < y.size(); ++r) {
            double s = 0.0;
            for (int c : columns[r]) s += z[static_cast<std::size_t>(c)];
            y[r] = s * weight;
        }
        return y;
    }
};

inline DecimationMatrix decimation_matrix(int lr_side, int q) {
    if (lr_side < 1 || q < 1) throw PreconditionError("decimation_matrix: M and q must be >= 1");
    DecimationMatrix d{q, lr_side, 1.0 / (q * q), {}};
    const int hr_side = q * lr_side;
    d.columns.reserve(static_cast<std::size_t>(d.rows()));
    for (int i = 0; i < lr_side; ++i)
        for (int j = 0; j < lr_side; ++j) {
            std::vector<int> row;
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b) row.push_back((q * i + a) * hr_side + (q * j + b));
            d.columns.push_back(std::move(row));
        }
    return d;
}

// Adds N(0, sigma^2) noise in row-major order and clamps to [0,1].
// Generator: std::mt19937_64 seeded with `seed`; normals come from the
// Box-Muller transform on pairs of 53-bit uniforms, so the stream is identical
// across standard library implementations.
inline Image add_noise(const Image& img, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw PreconditionError("add_noise: sigma must be >= 0");
    if (sigma == 0.0) return img;
    std::mt19937_64 rng(seed);
    auto uniform = [&rng] {
        // (0,1], never zero so the log below is finite
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    };
    Plane out = img.plane();
    auto values = out.values();
    for (std::size_t i = 0; i < values.size(); i += 2) {
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        values[i] += sigma * radius * std::cos(angle);
        if (i + 1 < values.size()) values[i + 1] += sigma * radius * std::sin(angle);
    }
    return Image(std::move(out));
}

}  // namespace dirsr
