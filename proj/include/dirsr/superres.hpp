#pragma once

// Learned-detail super-resolution by 2: cubic-spline approximation bands plus
// detail bands retrieved from a training set, then the inverse transform.
// Also the block-wavelet baseline and the normalized MSE metric.

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spline.hpp"
#include "trainset.hpp"

namespace dirsr {

enum class Fallback { InterpolateOnly, NearestAnyDirection };

inline const char* to_string(Fallback f) {
    return f == Fallback::InterpolateOnly ? "interpolate-only" : "nearest-any-direction";
}

struct SRConfig {
    int q = 2;
    int lr_patch = 4;
    int hr_patch = 8;
    Fallback fallback = Fallback::InterpolateOnly;
    // Additive constant of the contrast energy. Only tests change it.
    double energy_floor = kEnergyFloor;
};

struct PatchDiagnostics {
    int patch_row = 0;
    int patch_col = 0;
    int pair_index = 0;  // best pair of the LR patch, canonical order
    int used_pair_index = -1;  // group the match came from; -1 when nothing matched
    double distance = 0.0;
    bool fallback = false;
    std::uint32_t match_image = 0;
    std::uint32_t match_row = 0;
    std::uint32_t match_col = 0;
};

struct SRReport {
    std::map<std::string, double> mse;  // per method, filled by evaluators
    std::vector<PatchDiagnostics> patches;
    double seconds = 0.0;

    double fallback_fraction() const {
        if (patches.empty()) return 0.0;
        std::size_t n = 0;
        for (const auto& p : patches) n += p.fallback ? 1 : 0;
        return static_cast<double>(n) / static_cast<double>(patches.size());
    }
};

inline void check_compatible(const TrainingSetMeta& meta, const SRConfig& cfg) {
    const TrainingSetMeta want{1, static_cast<std::uint32_t>(cfg.q), static_cast<std::uint32_t>(cfg.lr_patch),
                               static_cast<std::uint32_t>(cfg.hr_patch), "daub4", Mode::Oversampled, 0, 0};
    if (cfg.hr_patch != cfg.q * cfg.lr_patch) throw ConfigError("SRConfig: hr_patch must equal q * lr_patch");
    if (meta.version != want.version || meta.q != want.q || meta.lr_patch != want.lr_patch ||
        meta.hr_patch != want.hr_patch || meta.filter_id != want.filter_id || meta.mode != want.mode)
        throw ConfigError("training set metadata mismatch: file has [" + meta.describe() + "], configuration needs [" +
                          want.describe() + "]");
}

namespace detail {

struct Match {
    const TrainingRecord* record = nullptr;
    int pair_index = -1;
    double distance = 0.0;
};

inline Match find_match(const TrainingSet& ts, const Plane& lr_norm, const DirectionChoice& choice,
                        Fallback fallback) {
    const auto probe = forward_awt21(lr_norm, choice.pair, Mode::Oversampled).flat_details();
    const auto& group = ts.groups[static_cast<std::size_t>(choice.index)];
    if (auto m = query_mad(group, probe)) return {&group[m->index], choice.index, m->distance};
    if (fallback == Fallback::InterpolateOnly) return {};

    Match best;
    const auto& pairs = canonical_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (ts.groups[i].empty()) continue;
        const auto p = forward_awt21(lr_norm, pairs[i], Mode::Oversampled).flat_details();
        const auto m = query_mad(ts.groups[i], p);
        if (m && (!best.record || m->distance < best.distance))
            best = {&ts.groups[i][m->index], static_cast<int>(i), m->distance};
    }
    return best;
}

}  // namespace detail

inline std::pair<Image, SRReport> super_resolve(const Image& lr, const TrainingSet& ts, const SRConfig& cfg = {}) {
    const auto start = std::chrono::steady_clock::now();
    check_compatible(ts.meta, cfg);
    const auto [padded, original] = pad_to_multiple(lr.plane(), cfg.lr_patch);
    const Plane interp = cubic_spline_upsample(Image(padded)).plane();
    Plane out(interp.width(), interp.height());

    SRReport report;
    const int rows = padded.height() / cfg.lr_patch;
    const int cols = padded.width() / cfg.lr_patch;
    for (int pr = 0; pr < rows; ++pr)
        for (int pc = 0; pc < cols; ++pc) {
            const Plane p = block(padded, pr * cfg.lr_patch, pc * cfg.lr_patch, cfg.lr_patch);
            const Plane approx = block(interp, pr * cfg.hr_patch, pc * cfg.hr_patch, cfg.hr_patch);
            const double e = patch_energy(p, cfg.energy_floor);
            const Plane p_norm = scaled(p, 1.0 / e);
            const DirectionChoice choice = best_direction(p_norm);
            const auto m = detail::find_match(ts, p_norm, choice, cfg.fallback);

            PatchDiagnostics diag{pr, pc, choice.index, m.pair_index, m.distance, m.record == nullptr, 0, 0, 0};
            Plane h;
            if (!m.record) {
                h = approx;
            } else {
                diag.match_image = m.record->image_id;
                diag.match_row = m.record->patch_row;
                diag.match_col = m.record->patch_col;
                const DirectionPair& pair = canonical_pairs()[static_cast<std::size_t>(m.pair_index)];
                SubbandSet s = forward_awt21(scaled(approx, 1.0 / e), pair, Mode::Oversampled);
                s.set_details(m.record->hr_details);
                h = map(inverse_awt21(s), [e](double v) { return clamp01(v * e); });
            }
            for (int r = 0; r < cfg.hr_patch; ++r)
                for (int c = 0; c < cfg.hr_patch; ++c) out(pr * cfg.hr_patch + r, pc * cfg.hr_patch + c) = h(r, c);
            report.patches.push_back(diag);
        }

    Image result(crop(out, Dims{original.width * cfg.q, original.height * cfg.q}));
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(result), std::move(report)};
}

// ---- block wavelet baseline (single group, separable AWT(1,1)) ----------

// Where the baseline's approximation band comes from.
//  LowResPatch: critically sampled step; the A band of the 8x8 HR patch is the
//               4x4 LR patch times the low-pass DC gain (2).
//  Interpolated: oversampled step; A comes from the cubic-spline patch.
enum class Wm2Approximation { LowResPatch, Interpolated };

inline const char* to_string(Wm2Approximation a) {
    return a == Wm2Approximation::LowResPatch ? "lr" : "spline";
}

struct WaveletTrainingSet {
    std::vector<TrainingRecord> records;
    std::uint32_t image_count = 0;
    Wm2Approximation approx = Wm2Approximation::Interpolated;
};

namespace detail {

inline Mode wm2_mode(Wm2Approximation a) {
    return a == Wm2Approximation::LowResPatch ? Mode::Critical : Mode::Oversampled;
}

}  // namespace detail

inline WaveletTrainingSet wm2_build(std::span<const Image> corpus,
                                    Wm2Approximation approx = Wm2Approximation::Interpolated,
                                    const TrainConfig& cfg = {}) {
    if (corpus.empty()) throw PreconditionError("wm2_build: empty corpus");
    if (cfg.q != 2 || cfg.lr_patch != 4) throw ConfigError("wm2_build: only q=2 with 4x4 LR patches");
    const int hr_patch = cfg.q * cfg.lr_patch;
    const Mode mode = detail::wm2_mode(approx);
    WaveletTrainingSet wts;
    wts.image_count = static_cast<std::uint32_t>(corpus.size());
    wts.approx = approx;
    for (std::size_t id = 0; id < corpus.size(); ++id) {
        const Plane hr = pad_to_multiple(corpus[id].plane(), hr_patch).first;
        const Plane lr = decimate(hr, cfg.q);
        for (int pr = 0; pr < lr.height() / cfg.lr_patch; ++pr)
            for (int pc = 0; pc < lr.width() / cfg.lr_patch; ++pc) {
                const auto norm = normalize_pair(block(lr, pr * cfg.lr_patch, pc * cfg.lr_patch, cfg.lr_patch),
                                                 block(hr, pr * hr_patch, pc * hr_patch, hr_patch), cfg.energy_floor);
                wts.records.push_back({static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(pr),
                                       static_cast<std::uint32_t>(pc), forward_awt11(norm.lr, mode).flat_details(),
                                       forward_awt11(norm.hr, mode).flat_details()});
            }
    }
    return wts;
}

inline Image wm2_super_resolve(const Image& lr, const WaveletTrainingSet& wts, const SRConfig& cfg = {}) {
    const auto [padded, original] = pad_to_multiple(lr.plane(), cfg.lr_patch);
    const Mode mode = detail::wm2_mode(wts.approx);
    const Plane interp = cubic_spline_upsample(Image(padded)).plane();
    Plane out(interp.width(), interp.height());
    for (int pr = 0; pr < padded.height() / cfg.lr_patch; ++pr)
        for (int pc = 0; pc < padded.width() / cfg.lr_patch; ++pc) {
            const Plane p = block(padded, pr * cfg.lr_patch, pc * cfg.lr_patch, cfg.lr_patch);
            const Plane approx = block(interp, pr * cfg.hr_patch, pc * cfg.hr_patch, cfg.hr_patch);
            const double e = patch_energy(p, cfg.energy_floor);
            const Plane p_norm = scaled(p, 1.0 / e);
            const auto probe = forward_awt11(p_norm, mode).flat_details();
            Plane h = approx;
            if (const auto m = query_mad(wts.records, probe)) {
                WaveletBands w;
                if (mode == Mode::Critical) {
                    w = WaveletBands{{scaled(p_norm, 2.0), Plane(cfg.lr_patch, cfg.lr_patch),
                                      Plane(cfg.lr_patch, cfg.lr_patch), Plane(cfg.lr_patch, cfg.lr_patch)},
                                     cfg.hr_patch, Mode::Critical};
                } else {
                    w = forward_awt11(scaled(approx, 1.0 / e), mode);
                }
                w.set_details(wts.records[m->index].hr_details);
                h = map(inverse_awt11(w), [e](double v) { return clamp01(v * e); });
            }
            for (int r = 0; r < cfg.hr_patch; ++r)
                for (int c = 0; c < cfg.hr_patch; ++c) out(pr * cfg.hr_patch + r, pc * cfg.hr_patch + c) = h(r, c);
        }
    return Image(crop(out, Dims{original.width * cfg.q, original.height * cfg.q}));
}

// Cubic-spline-only baseline with the same padding and crop as super_resolve.
inline Image spline_baseline(const Image& lr, const SRConfig& cfg = {}) {
    const auto [padded, original] = pad_to_multiple(lr.plane(), cfg.lr_patch);
    return crop(cubic_spline_upsample(Image(padded)), Dims{original.width * cfg.q, original.height * cfg.q});
}

// Normalized squared error sum (z - z_hat)^2 / sum z^2.
inline double mse(const Image& z, const Image& z_hat) {
    if (z.width() != z_hat.width() || z.height() != z_hat.height()) throw ShapeError("mse: dimension mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < z.pixels().size(); ++i) {
        const double d = z.pixels()[i] - z_hat.pixels()[i];
        num += d * d;
        den += z.pixels()[i] * z.pixels()[i];
    }
    if (den == 0.0) throw PreconditionError("mse: undefined for an all-zero reference");
    return num / den;
}

}  // namespace dirsr
