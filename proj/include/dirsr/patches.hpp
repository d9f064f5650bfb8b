#pragma once

// Patch tiling and contrast normalization.

#include <cmath>
#include <utility>
#include <vector>

#include "image.hpp"

namespace dirsr {

// Additive constant of the contrast energy; keeps the divisor away from zero.
inline constexpr double kEnergyFloor = 0.01;

struct Patch {
    int size = 0;
    Plane values;
    int row = 0;  // origin of the top-left pixel in the source
    int col = 0;
};

struct PatchGrid {
    int rows = 0;
    int cols = 0;
    int patch_size = 0;
    std::vector<Patch> patches;  // raster order

    const Patch& at(int pr, int pc) const { return patches[static_cast<std::size_t>(pr) * cols + pc]; }
};

// Edge-replicating pad up to the next multiple of n in each dimension.
inline std::pair<Plane, Dims> pad_to_multiple(const Plane& img, int n) {
    if (n < 1) throw PreconditionError("pad_to_multiple: n must be >= 1");
    const Dims original{img.width(), img.height()};
    const int w = (img.width() + n - 1) / n * n;
    const int h = (img.height() + n - 1) / n * n;
    Plane out(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            out(r, c) = img(std::min(r, img.height() - 1), std::min(c, img.width() - 1));
    return {std::move(out), original};
}

inline std::pair<Image, Dims> pad_to_multiple(const Image& img, int n) {
    auto [p, d] = pad_to_multiple(img.plane(), n);
    return {Image(std::move(p)), d};
}

inline Plane crop(const Plane& img, Dims dims) {
    if (dims.width < 0 || dims.height < 0 || dims.width > img.width() || dims.height > img.height())
        throw PreconditionError("crop: target larger than source");
    Plane out(dims.width, dims.height);
    for (int r = 0; r < dims.height; ++r)
        for (int c = 0; c < dims.width; ++c) out(r, c) = img(r, c);
    return out;
}

inline Image crop(const Image& img, Dims dims) { return Image(crop(img.plane(), dims)); }

inline Plane block(const Plane& img, int row, int col, int n) {
    Plane out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = img(row + r, col + c);
    return out;
}

inline PatchGrid extract_patches(const Plane& img, int n) {
    if (n < 1) throw PreconditionError("extract_patches: n must be >= 1");
    if (img.width() % n != 0 || img.height() % n != 0)
        throw PreconditionError("extract_patches: dimensions not divisible by patch size");
    PatchGrid grid{img.height() / n, img.width() / n, n, {}};
    grid.patches.reserve(static_cast<std::size_t>(grid.rows) * grid.cols);
    for (int pr = 0; pr < grid.rows; ++pr)
        for (int pc = 0; pc < grid.cols; ++pc)
            grid.patches.push_back({n, block(img, pr * n, pc * n, n), pr * n, pc * n});
    return grid;
}

inline PatchGrid extract_patches(const Image& img, int n) { return extract_patches(img.plane(), n); }

inline Plane stitch_planes(const PatchGrid& grid) {
    const int n = grid.patch_size;
    if (grid.patches.size() != static_cast<std::size_t>(grid.rows) * grid.cols)
        throw ShapeError("stitch_patches: incomplete grid");
    Plane out(grid.cols * n, grid.rows * n);
    for (const Patch& p : grid.patches) {
        if (p.values.width() != n || p.values.height() != n)
            throw ShapeError("stitch_patches: patch size mismatch");
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out(p.row + r, p.col + c) = p.values(r, c);
    }
    return out;
}

inline Image stitch_patches(const PatchGrid& grid) { return Image(stitch_planes(grid)); }

// Contrast energy: floor + sum |y_i|. Summed, not averaged.
inline double patch_energy(const Plane& values, double floor = kEnergyFloor) {
    double s = 0.0;
    for (double v : values) s += std::abs(v);
    return floor + s;
}

inline double patch_energy(const Patch& p, double floor = kEnergyFloor) { return patch_energy(p.values, floor); }

struct NormalizedPair {
    Plane lr;
    Plane hr;
    double energy = 0.0;
};

// Divides both patches by the energy of the low-resolution one.
inline NormalizedPair normalize_pair(const Plane& lr, const Plane& hr, double floor = kEnergyFloor) {
    const double e = patch_energy(lr, floor);
    return {scaled(lr, 1.0 / e), scaled(hr, 1.0 / e), e};
}

inline std::pair<Plane, Plane> denormalize(const NormalizedPair& n) {
    return {scaled(n.lr, n.energy), scaled(n.hr, n.energy)};
}

}  // namespace dirsr
