#pragma once

// Procedural test images for demos and acceptance runs. Every generator is a
// pure function of its parameters and seed (std::mt19937_64 with explicit
// integer-to-double conversions), so outputs are identical on every platform.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "image.hpp"

namespace dirsr::demo {

namespace detail {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 eng_;
};

// Box-filtered rendering of a continuous scene f(x, y), x, y in pixel units.
inline Image render(int size, const std::function<double(double, double)>& f, int ss = 4) {
    Plane p(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            double s = 0.0;
            for (int i = 0; i < ss; ++i)
                for (int j = 0; j < ss; ++j) s += f(c + (j + 0.5) / ss, r + (i + 0.5) / ss);
            p(r, c) = s / (ss * ss);
        }
    return Image(std::move(p));
}

inline double smoothstep(double e0, double e1, double x) {
    const double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
    return t * t * (3 - 2 * t);
}

}  // namespace detail

inline Image gradient(int size, double angle_deg) {
    const double a = angle_deg * std::numbers::pi / 180.0;
    const double cx = std::cos(a), cy = std::sin(a);
    const double half = size / 2.0;
    const double span = size * (std::abs(cx) + std::abs(cy));
    return detail::render(size, [=](double x, double y) {
        return 0.5 + ((x - half) * cx + (y - half) * cy) / span;
    }, 1);
}

inline Image checkerboard(int size, double cell, double lo = 0.15, double hi = 0.85) {
    return detail::render(size, [=](double x, double y) {
        const long long i = static_cast<long long>(std::floor(x / cell)) + static_cast<long long>(std::floor(y / cell));
        return (i % 2 == 0) ? hi : lo;
    });
}

// Sharp stripes at `angle_deg`; short periods alias badly after 2x2 averaging.
inline Image stripes(int size, double period, double angle_deg, double lo = 0.1, double hi = 0.9) {
    const double a = angle_deg * std::numbers::pi / 180.0;
    const double cx = std::cos(a), cy = std::sin(a);
    return detail::render(size, [=](double x, double y) {
        const double t = (x * cx + y * cy) / period;
        return t - std::floor(t) < 0.5 ? hi : lo;
    });
}

// Siemens star: `spokes` alternating angular sectors on a shaded background.
inline Image star(int size, int spokes, double cx_frac = 0.5, double cy_frac = 0.5) {
    const double cx = size * cx_frac, cy = size * cy_frac;
    return detail::render(size, [=](double x, double y) {
        const double th = std::atan2(y - cy, x - cx);
        const double t = (th + std::numbers::pi) / (2 * std::numbers::pi) * spokes;
        const double r = std::hypot(x - cx, y - cy) / size;
        const double base = 0.55 - 0.25 * r;
        return (static_cast<long long>(std::floor(t)) % 2 == 0) ? base + 0.35 : base - 0.35;
    });
}

// Smooth multi-octave value noise, "terrain".
inline Image terrain(int size, std::uint64_t seed, int octaves = 5) {
    detail::Rng rng(seed);
    const int lattice = 64;
    std::vector<double> table(lattice * lattice);
    for (double& v : table) v = rng.uniform();
    auto lookup = [&](long long i, long long j) {
        return table[static_cast<std::size_t>(((i % lattice + lattice) % lattice) * lattice +
                                              ((j % lattice + lattice) % lattice))];
    };
    auto value_noise = [&](double x, double y) {
        const double fx = std::floor(x), fy = std::floor(y);
        const double tx = detail::smoothstep(0, 1, x - fx), ty = detail::smoothstep(0, 1, y - fy);
        const auto i = static_cast<long long>(fy), j = static_cast<long long>(fx);
        const double a = lookup(i, j), b = lookup(i, j + 1), c = lookup(i + 1, j), d = lookup(i + 1, j + 1);
        return (a * (1 - tx) + b * tx) * (1 - ty) + (c * (1 - tx) + d * tx) * ty;
    };
    return detail::render(size, [=](double x, double y) {
        double v = 0.0, amp = 0.5, freq = 4.0 / size, norm = 0.0;
        for (int o = 0; o < octaves; ++o) {
            v += amp * value_noise(x * freq, y * freq);
            norm += amp;
            amp *= 0.55;
            freq *= 2.0;
        }
        return v / norm;
    }, 1);
}

// Overlapping shaded disks, rectangles and half-planes: piecewise-smooth scene
// with edges at many orientations.
inline Image shapes(int size, std::uint64_t seed, int count = 14) {
    detail::Rng rng(seed);
    struct Shape {
        int kind;
        double x, y, a, b, angle, value, slope_x, slope_y;
    };
    std::vector<Shape> list;
    for (int i = 0; i < count; ++i)
        list.push_back({rng.index(3), rng.uniform(0, size), rng.uniform(0, size), rng.uniform(0.06, 0.3) * size,
                        rng.uniform(0.06, 0.3) * size, rng.uniform(0, std::numbers::pi), rng.uniform(0.1, 0.9),
                        rng.uniform(-0.4, 0.4) / size, rng.uniform(-0.4, 0.4) / size});
    const double bg = rng.uniform(0.3, 0.7);
    return detail::render(size, [=](double x, double y) {
        double v = bg + 0.15 * (x - y) / size;
        for (const auto& s : list) {
            const double dx = x - s.x, dy = y - s.y;
            const double u = dx * std::cos(s.angle) + dy * std::sin(s.angle);
            const double w = -dx * std::sin(s.angle) + dy * std::cos(s.angle);
            bool inside = false;
            if (s.kind == 0) inside = (u * u) / (s.a * s.a) + (w * w) / (s.b * s.b) <= 1.0;
            if (s.kind == 1) inside = std::abs(u) <= s.a && std::abs(w) <= s.b;
            if (s.kind == 2) inside = u <= 0.0 && std::abs(w) <= 2 * s.b && std::abs(u) <= 2 * s.a;
            if (inside) v = s.value + s.slope_x * dx + s.slope_y * dy;
        }
        return v;
    });
}

// Concentric rings with slowly increasing frequency.
inline Image rings(int size, double base_period, double cx_frac = 0.5, double cy_frac = 0.5) {
    const double cx = size * cx_frac, cy = size * cy_frac;
    return detail::render(size, [=](double x, double y) {
        const double r = std::hypot(x - cx, y - cy);
        return 0.5 + 0.4 * std::cos(2 * std::numbers::pi * r / base_period * (1.0 + r / (2.0 * size)));
    });
}

// Shapes blended over terrain: edges plus smooth texture.
inline Image landscape(int size, std::uint64_t seed) {
    const Image t = terrain(size, seed * 7 + 1);
    const Image s = shapes(size, seed * 13 + 5, 10);
    Plane p(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) p(r, c) = 0.35 * t(r, c) + 0.65 * s(r, c);
    return Image(std::move(p));
}

struct NamedImage {
    std::string name;
    Image image;
};

// Training corpus. Each test family below has at least one sibling here drawn
// with different parameters or seeds; no test image appears verbatim.
inline std::vector<NamedImage> training_corpus(int size = 256) {
    return {
        {"train_gradient", gradient(size, 30.0)},
        {"train_checker", checkerboard(size, 12.0)},
        {"train_stripes_a", stripes(size, 4.5, 45.0)},
        {"train_stripes_b", stripes(size, 5.5, 45.0)},
        {"train_stripes_c", stripes(size, 5.0, -45.0)},
        {"train_star_a", star(size, 24, 0.45, 0.55)},
        {"train_star_b", star(size, 40, 0.3, 0.7)},
        {"train_shapes_a", shapes(size, 11)},
        {"train_shapes_b", shapes(size, 12)},
        {"train_landscape", landscape(size, 4)},
        {"train_rings", rings(size, 14.0, 0.4, 0.6)},
        {"train_terrain", terrain(size, 3)},
    };
}

// Test images, disjoint from the training corpus. test_stripes aliases
// heavily under 2x2 averaging (sharp 45deg bars, 5 px period).
inline std::vector<NamedImage> test_corpus(int size = 256) {
    return {
        {"test_shapes", shapes(size, 101)},
        {"test_star", star(size, 32, 0.5, 0.5)},
        {"test_stripes", stripes(size, 5.0, 45.0)},
        {"test_landscape", landscape(size, 102)},
        {"test_rings", rings(size, 11.0, 0.5, 0.5)},
    };
}

}  // namespace dirsr::demo
