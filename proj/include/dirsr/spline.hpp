#pragma once

// Interpolating cubic B-spline zoom by 2.

#include <cmath>
#include <span>
#include <vector>

#include "image.hpp"

namespace dirsr {

namespace detail {

inline const double kSplinePole = std::sqrt(3.0) - 2.0;

// In-place conversion of samples to cubic B-spline coefficients,
// whole-sample mirror boundaries.
inline void bspline_prefilter(std::span<double> c) {
    const std::size_t n = c.size();
    if (n < 2) return;
    const double z = kSplinePole;
    const double gain = (1.0 - z) * (1.0 - 1.0 / z);
    for (double& v : c) v *= gain;

    // exact causal initialization for the mirror-symmetric extension
    double zn = z;
    double z2n = std::pow(z, static_cast<double>(n - 1));
    double sum = c[0] + z2n * c[n - 1];
    z2n *= z2n / z;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        sum += (zn + z2n) * c[k];
        zn *= z;
        z2n /= z;
    }
    c[0] = sum / (1.0 - zn * zn);
    for (std::size_t k = 1; k < n; ++k) c[k] += z * c[k - 1];

    c[n - 1] = (z / (z * z - 1.0)) * (c[n - 1] + z * c[n - 2]);
    for (std::size_t k = n - 1; k-- > 0;) c[k] = z * (c[k + 1] - c[k]);
}

inline double bspline3(double x) {
    x = std::abs(x);
    if (x < 1.0) return 2.0 / 3.0 - x * x + 0.5 * x * x * x;
    if (x < 2.0) {
        const double t = 2.0 - x;
        return t * t * t / 6.0;
    }
    return 0.0;
}

inline std::size_t mirror(long long k, std::size_t n) {
    if (n == 1) return 0;
    const long long period = 2 * static_cast<long long>(n) - 2;
    k %= period;
    if (k < 0) k += period;
    if (k >= static_cast<long long>(n)) k = period - k;
    return static_cast<std::size_t>(k);
}

// Evaluates the spline with coefficients c at u_i = (i - 0.5) / 2, i in [0, 2n).
inline std::vector<double> bspline_zoom2(std::span<const double> c) {
    const std::size_t n = c.size();
    std::vector<double> out(2 * n);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double u = (static_cast<double>(i) - 0.5) / 2.0;
        const long long base = static_cast<long long>(std::floor(u));
        double v = 0.0;
        for (long long k = base - 1; k <= base + 2; ++k) v += c[mirror(k, n)] * bspline3(u - static_cast<double>(k));
        out[i] = v;
    }
    return out;
}

}  // namespace detail

// Unclamped zoom; the public entry point clamps.
inline Plane cubic_spline_zoom2(const Plane& img) {
    const int w = img.width(), h = img.height();
    Plane wide(2 * w, h);
    std::vector<double> line;
    for (int r = 0; r < h; ++r) {
        line.assign(&img(r, 0), &img(r, 0) + w);
        detail::bspline_prefilter(line);
        const auto z = detail::bspline_zoom2(line);
        std::copy(z.begin(), z.end(), &wide(r, 0));
    }
    Plane out(2 * w, 2 * h);
    for (int c = 0; c < 2 * w; ++c) {
        line.resize(static_cast<std::size_t>(h));
        for (int r = 0; r < h; ++r) line[static_cast<std::size_t>(r)] = wide(r, c);
        detail::bspline_prefilter(line);
        const auto z = detail::bspline_zoom2(line);
        for (int r = 0; r < 2 * h; ++r) out(r, c) = z[static_cast<std::size_t>(r)];
    }
    return out;
}

inline Image cubic_spline_upsample(const Image& img, int factor = 2) {
    if (factor != 2) throw PreconditionError("cubic_spline_upsample: only factor 2 is supported");
    return Image(cubic_spline_zoom2(img.plane()));
}

}  // namespace dirsr
