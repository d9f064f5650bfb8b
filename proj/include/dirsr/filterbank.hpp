#pragma once

// One-level orthogonal two-channel filter bank on periodic signals.
//
// Analysis is circular correlation:
//   low[n]  = sum_k lo[k] * x[(n + k) mod N]
//   high[n] = sum_k hi[k] * x[(n + k) mod N]
// Critical mode keeps n = 0, 2, 4, ...; oversampled mode keeps every n.
// With this phase, oversampled low[2m] equals critical low[m].

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace dirsr {

enum class Mode { Critical = 0, Oversampled = 1 };

inline const char* to_string(Mode m) { return m == Mode::Oversampled ? "oversampled" : "critical"; }

struct FilterPair {
    std::array<double, 4> low{};
    std::array<double, 4> high{};
    std::string id;
};

// Daubechies length-4 filters; high[k] = (-1)^k low[3-k].
inline const FilterPair& daub4() {
    static const FilterPair f = [] {
        const double s3 = std::sqrt(3.0);
        const double d = 4.0 * std::sqrt(2.0);
        FilterPair p;
        p.low = {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
        for (int k = 0; k < 4; ++k) p.high[k] = (k % 2 ? -1.0 : 1.0) * p.low[3 - k];
        p.id = "daub4";
        return p;
    }();
    return f;
}

struct BandPair1D {
    std::vector<double> low;
    std::vector<double> high;
    Mode mode = Mode::Oversampled;
    std::size_t n = 0;
};

namespace detail {

inline std::size_t wrap(std::size_t i, std::size_t n) { return i % n; }

// Strided views let the 2-D transforms run along rows or columns in place.
inline void analyze_strided(const double* x, std::size_t n, std::ptrdiff_t stride, const FilterPair& f,
                            Mode mode, double* low, double* high, std::ptrdiff_t out_stride) {
    const std::size_t step = mode == Mode::Critical ? 2 : 1;
    std::size_t o = 0;
    for (std::size_t i = 0; i < n; i += step, ++o) {
        double l = 0.0, h = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const double v = x[static_cast<std::ptrdiff_t>(wrap(i + k, n)) * stride];
            l += f.low[k] * v;
            h += f.high[k] * v;
        }
        low[static_cast<std::ptrdiff_t>(o) * out_stride] = l;
        high[static_cast<std::ptrdiff_t>(o) * out_stride] = h;
    }
}

// Adjoint of analysis. Critical mode is the exact inverse (orthogonal bank);
// oversampled mode is scaled by 1/2, which is the exact inverse because
// |L(w)|^2 + |H(w)|^2 = 2 for the orthogonal pair, i.e. it averages the two
// polyphase reconstructions.
inline void synthesize_strided(const double* low, const double* high, std::ptrdiff_t in_stride, std::size_t n,
                               const FilterPair& f, Mode mode, double* x, std::ptrdiff_t stride) {
    for (std::size_t i = 0; i < n; ++i) x[static_cast<std::ptrdiff_t>(i) * stride] = 0.0;
    const std::size_t step = mode == Mode::Critical ? 2 : 1;
    const double gain = mode == Mode::Critical ? 1.0 : 0.5;
    std::size_t o = 0;
    for (std::size_t i = 0; i < n; i += step, ++o) {
        const double l = low[static_cast<std::ptrdiff_t>(o) * in_stride] * gain;
        const double h = high[static_cast<std::ptrdiff_t>(o) * in_stride] * gain;
        for (std::size_t k = 0; k < 4; ++k)
            x[static_cast<std::ptrdiff_t>(wrap(i + k, n)) * stride] += f.low[k] * l + f.high[k] * h;
    }
}

inline void check_length(std::size_t n, Mode mode) {
    if (n == 0) throw PreconditionError("filter bank: empty signal");
    if (mode == Mode::Critical && n % 2 != 0) throw ShapeError("filter bank: critical mode needs even length");
}

}  // namespace detail

inline std::size_t band_length(std::size_t n, Mode mode) { return mode == Mode::Critical ? n / 2 : n; }

inline BandPair1D analyze_1d(std::span<const double> x, const FilterPair& f, Mode mode) {
    detail::check_length(x.size(), mode);
    BandPair1D b{std::vector<double>(band_length(x.size(), mode)), std::vector<double>(band_length(x.size(), mode)),
                 mode, x.size()};
    detail::analyze_strided(x.data(), x.size(), 1, f, mode, b.low.data(), b.high.data(), 1);
    return b;
}

inline std::vector<double> synthesize_1d(const BandPair1D& b, const FilterPair& f) {
    detail::check_length(b.n, b.mode);
    const std::size_t m = band_length(b.n, b.mode);
    if (b.low.size() != m || b.high.size() != m) throw ShapeError("synthesize_1d: band lengths inconsistent with mode");
    std::vector<double> x(b.n);
    detail::synthesize_strided(b.low.data(), b.high.data(), 1, b.n, f, b.mode, x.data(), 1);
    return x;
}

}  // namespace dirsr
