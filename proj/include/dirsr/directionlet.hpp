#pragma once

// Skewed anisotropic wavelet transform AWT(2,1) on square patches.
//
// A patch is re-indexed in the lattice coordinates of its direction pair
// (u along d1, v along d2), then filtered in three 1-D stages:
//   1. along d1          -> L, H
//   2. along d2 on both  -> A = LL, V = LH, H = HL, D = HH
//   3. along d1 on each  -> AL AH HL HH VL VH DL DH
// Oversampled bands are stored back in patch (cell) coordinates, n x n each.
// Critical bands stay in lattice coordinates: n/4 wide (u) by n/2 tall (v).

#include <array>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "filterbank.hpp"
#include "lattice.hpp"
#include "patches.hpp"

namespace dirsr {

enum class Band { AL = 0, AH, HL, HH, VL, VH, DL, DH };

inline constexpr std::array<std::string_view, 8> kBandNames{"AL", "AH", "HL", "HH", "VL", "VH", "DL", "DH"};
inline constexpr std::array<Band, 6> kDetailBands{Band::HL, Band::HH, Band::VL, Band::VH, Band::DL, Band::DH};

struct SubbandSet {
    std::array<Plane, 8> bands;
    DirectionPair pair;
    Mode mode = Mode::Oversampled;
    int n = 0;

    Plane& operator[](Band b) { return bands[static_cast<std::size_t>(b)]; }
    const Plane& operator[](Band b) const { return bands[static_cast<std::size_t>(b)]; }

    std::array<const Plane*, 6> detail_bands() const {
        std::array<const Plane*, 6> out{};
        for (std::size_t i = 0; i < 6; ++i) out[i] = &(*this)[kDetailBands[i]];
        return out;
    }

    // Detail coefficients concatenated HL, HH, VL, VH, DL, DH, each row-major.
    std::vector<double> flat_details() const {
        std::vector<double> out;
        for (const Plane* p : detail_bands()) out.insert(out.end(), p->begin(), p->end());
        return out;
    }

    void set_details(std::span<const double> flat) {
        std::size_t off = 0;
        for (Band b : kDetailBands) {
            Plane& p = (*this)[b];
            if (off + p.size() > flat.size()) throw ShapeError("set_details: too few coefficients");
            std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(off), p.size(), p.begin());
            off += p.size();
        }
        if (off != flat.size()) throw ShapeError("set_details: too many coefficients");
    }
};

namespace detail {

// Filters every row (along_rows) or every column of g.
inline std::pair<Plane, Plane> split(const Plane& g, bool along_rows, Mode mode) {
    const FilterPair& f = daub4();
    const int len = along_rows ? g.width() : g.height();
    const int lines = along_rows ? g.height() : g.width();
    check_length(static_cast<std::size_t>(len), mode);
    const int out_len = static_cast<int>(band_length(static_cast<std::size_t>(len), mode));
    Plane lo = along_rows ? Plane(out_len, lines) : Plane(lines, out_len);
    Plane hi = lo;
    for (int i = 0; i < lines; ++i) {
        const double* src = along_rows ? &g(i, 0) : &g(0, i);
        const std::ptrdiff_t stride = along_rows ? 1 : g.width();
        double* lp = along_rows ? &lo(i, 0) : &lo(0, i);
        double* hp = along_rows ? &hi(i, 0) : &hi(0, i);
        const std::ptrdiff_t out_stride = along_rows ? 1 : lo.width();
        analyze_strided(src, static_cast<std::size_t>(len), stride, f, mode, lp, hp, out_stride);
    }
    return {std::move(lo), std::move(hi)};
}

inline Plane merge(const Plane& lo, const Plane& hi, bool along_rows, Mode mode, int full_len) {
    if (lo.width() != hi.width() || lo.height() != hi.height()) throw ShapeError("inverse: band shape mismatch");
    const FilterPair& f = daub4();
    check_length(static_cast<std::size_t>(full_len), mode);
    const int band_len = along_rows ? lo.width() : lo.height();
    if (band_len != static_cast<int>(band_length(static_cast<std::size_t>(full_len), mode)))
        throw ShapeError("inverse: band length inconsistent with mode");
    const int lines = along_rows ? lo.height() : lo.width();
    Plane out = along_rows ? Plane(full_len, lines) : Plane(lines, full_len);
    for (int i = 0; i < lines; ++i) {
        const double* lp = along_rows ? &lo(i, 0) : &lo(0, i);
        const double* hp = along_rows ? &hi(i, 0) : &hi(0, i);
        const std::ptrdiff_t in_stride = along_rows ? 1 : lo.width();
        double* dst = along_rows ? &out(i, 0) : &out(0, i);
        const std::ptrdiff_t stride = along_rows ? 1 : out.width();
        synthesize_strided(lp, hp, in_stride, static_cast<std::size_t>(full_len), f, mode, dst, stride);
    }
    return out;
}

inline Plane to_lattice(const Plane& patch, const std::vector<int>& map) {
    const int n = patch.width();
    Plane g(n, n);
    for (std::size_t i = 0; i < map.size(); ++i) g.values()[i] = patch.values()[static_cast<std::size_t>(map[i])];
    return g;
}

inline Plane from_lattice(const Plane& g, const std::vector<int>& map) {
    const int n = g.width();
    Plane patch(n, n);
    for (std::size_t i = 0; i < map.size(); ++i) patch.values()[static_cast<std::size_t>(map[i])] = g.values()[i];
    return patch;
}

inline void check_patch(const Plane& p, Mode mode) {
    if (p.width() != p.height() || p.width() < 1) throw ShapeError("directionlet: patch must be square and non-empty");
    if (mode == Mode::Critical && p.width() % 4 != 0)
        throw ShapeError("directionlet: critical mode needs a side divisible by 4");
}

}  // namespace detail

// One level of AWT(2,1) along `pair`. Rows of the lattice grid are d1 co-lines.
inline SubbandSet forward_awt21(const Plane& patch, const DirectionPair& pair, Mode mode) {
    detail::check_patch(patch, mode);
    const int n = patch.width();
    const auto map = lattice_coordinates(n, pair);
    const Plane g = detail::to_lattice(patch, map);

    auto [l, h] = detail::split(g, true, mode);
    auto [a, v] = detail::split(l, false, mode);
    auto [hh_low, d] = detail::split(h, false, mode);  // H = HL, D = HH after stage 2

    SubbandSet s;
    s.pair = pair;
    s.mode = mode;
    s.n = n;
    const std::array<const Plane*, 4> stage2{&a, &hh_low, &v, &d};  // A, H, V, D
    for (std::size_t i = 0; i < 4; ++i) {
        auto [lo, hi] = detail::split(*stage2[i], true, mode);
        s.bands[2 * i] = std::move(lo);
        s.bands[2 * i + 1] = std::move(hi);
    }
    if (mode == Mode::Oversampled)
        for (auto& b : s.bands) b = detail::from_lattice(b, map);
    return s;
}

inline Plane inverse_awt21(const SubbandSet& s) {
    const int n = s.n;
    if (n < 1) throw ShapeError("inverse_awt21: empty subband set");
    if (s.mode == Mode::Critical && n % 4 != 0) throw ShapeError("inverse_awt21: critical mode needs n % 4 == 0");
    const int band_w = s.mode == Mode::Critical ? n / 4 : n;
    const int band_h = s.mode == Mode::Critical ? n / 2 : n;
    for (const auto& b : s.bands)
        if (b.width() != band_w || b.height() != band_h) throw ShapeError("inverse_awt21: inconsistent band shape");

    const auto map = lattice_coordinates(n, s.pair);
    std::array<Plane, 8> bands = s.bands;
    if (s.mode == Mode::Oversampled)
        for (auto& b : bands) b = detail::to_lattice(b, map);

    const int half_u = s.mode == Mode::Critical ? n / 2 : n;
    std::array<Plane, 4> stage2;  // A, H, V, D
    for (std::size_t i = 0; i < 4; ++i) stage2[i] = detail::merge(bands[2 * i], bands[2 * i + 1], true, s.mode, half_u);
    const Plane l = detail::merge(stage2[0], stage2[2], false, s.mode, n);
    const Plane h = detail::merge(stage2[1], stage2[3], false, s.mode, n);
    const Plane g = detail::merge(l, h, true, s.mode, n);
    return detail::from_lattice(g, map);
}

// Sum of squares over the six detail bands.
inline double detail_energy(const SubbandSet& s) {
    double e = 0.0;
    for (const Plane* p : s.detail_bands())
        for (double v : *p) e += v * v;
    return e;
}

struct DirectionChoice {
    DirectionPair pair;
    std::array<double, 5> energies{};
    int index = 0;
};

// Pair of minimal oversampled detail energy; the earliest canonical pair wins ties.
inline DirectionChoice best_direction(const Plane& patch) {
    DirectionChoice best;
    double min_energy = std::numeric_limits<double>::infinity();
    const auto& pairs = canonical_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double e = detail_energy(forward_awt21(patch, pairs[i], Mode::Oversampled));
        best.energies[i] = e;
        if (e < min_energy) {
            min_energy = e;
            best.pair = pairs[i];
            best.index = static_cast<int>(i);
        }
    }
    return best;
}

// Standard separable one-level 2-D wavelet step, i.e. AWT(1,1) along
// (0deg, 90deg). Bands are A, H, V, D with the same naming rule as above;
// critical bands are n/2 x n/2, oversampled bands n x n.
struct WaveletBands {
    std::array<Plane, 4> bands;  // A, H, V, D
    int n = 0;
    Mode mode = Mode::Oversampled;

    std::vector<double> flat_details() const {
        std::vector<double> out;
        for (std::size_t i = 1; i < 4; ++i) out.insert(out.end(), bands[i].begin(), bands[i].end());
        return out;
    }

    void set_details(std::span<const double> flat) {
        const std::size_t per = bands[1].size();
        if (flat.size() != 3 * per) throw ShapeError("wavelet set_details: coefficient count");
        for (std::size_t i = 0; i < 3; ++i)
            std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(i * per), per, bands[i + 1].begin());
    }
};

inline WaveletBands forward_awt11(const Plane& patch, Mode mode = Mode::Oversampled) {
    if (patch.width() != patch.height() || patch.width() < 1) throw ShapeError("awt11: patch must be square");
    auto [l, h] = detail::split(patch, true, mode);
    auto [a, v] = detail::split(l, false, mode);
    auto [hl, d] = detail::split(h, false, mode);
    return {{std::move(a), std::move(hl), std::move(v), std::move(d)}, patch.width(), mode};
}

inline Plane inverse_awt11(const WaveletBands& w) {
    const int n = w.n;
    const int side = static_cast<int>(band_length(static_cast<std::size_t>(n), w.mode));
    for (const auto& b : w.bands)
        if (b.width() != side || b.height() != side) throw ShapeError("inverse_awt11: inconsistent band shape");
    const Plane l = detail::merge(w.bands[0], w.bands[2], false, w.mode, n);
    const Plane h = detail::merge(w.bands[1], w.bands[3], false, w.mode, n);
    return detail::merge(l, h, true, w.mode, n);
}

}  // namespace dirsr
