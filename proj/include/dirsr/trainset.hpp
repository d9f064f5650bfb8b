#pragma once

// Direction-grouped training set of normalized detail coefficients:
// construction from an HR corpus, binary persistence, and MAD retrieval.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <zlib.h>

#include "degrade.hpp"
#include "directionlet.hpp"
#include "patches.hpp"

namespace dirsr {

struct TrainingRecord {
    std::uint32_t image_id = 0;
    std::uint32_t patch_row = 0;
    std::uint32_t patch_col = 0;
    std::vector<double> lr_details;  // HL HH VL VH DL DH, row-major each
    std::vector<double> hr_details;

    friend bool operator==(const TrainingRecord&, const TrainingRecord&) = default;
};

struct TrainingSetMeta {
    std::uint32_t version = 1;
    std::uint32_t q = 2;
    std::uint32_t lr_patch = 4;
    std::uint32_t hr_patch = 8;
    std::string filter_id = "daub4";
    Mode mode = Mode::Oversampled;
    std::uint32_t image_count = 0;
    std::uint64_t record_count = 0;

    friend bool operator==(const TrainingSetMeta&, const TrainingSetMeta&) = default;

    std::string describe() const {
        return "version=" + std::to_string(version) + " q=" + std::to_string(q) +
               " lr_patch=" + std::to_string(lr_patch) + " hr_patch=" + std::to_string(hr_patch) +
               " filter=" + filter_id + " mode=" + to_string(mode);
    }
};

struct TrainingSet {
    std::array<std::vector<TrainingRecord>, 5> groups;  // canonical pair order
    TrainingSetMeta meta;

    const std::vector<TrainingRecord>& group(const DirectionPair& p) const {
        const int i = canonical_index(p);
        if (i < 0) throw PreconditionError("training set: non-canonical direction pair " + p.name());
        return groups[static_cast<std::size_t>(i)];
    }

    std::uint64_t total_records() const {
        std::uint64_t n = 0;
        for (const auto& g : groups) n += g.size();
        return n;
    }

    friend bool operator==(const TrainingSet&, const TrainingSet&) = default;
};

struct TrainConfig {
    int q = 2;
    int lr_patch = 4;
    double energy_floor = kEnergyFloor;
};

// Normalized LR/HR patch pair at one tile, transformed along the LR patch's best pair.
struct PatchSample {
    DirectionChoice direction;
    SubbandSet lr;
    SubbandSet hr;
    double energy = 0.0;
};

inline PatchSample analyze_patch_pair(const Plane& lr, const Plane& hr, double energy_floor = kEnergyFloor) {
    const auto norm = normalize_pair(lr, hr, energy_floor);
    PatchSample s;
    s.energy = norm.energy;
    s.direction = best_direction(norm.lr);
    s.lr = forward_awt21(norm.lr, s.direction.pair, Mode::Oversampled);
    s.hr = forward_awt21(norm.hr, s.direction.pair, Mode::Oversampled);
    return s;
}

inline TrainingSet build_training_set(std::span<const Image> corpus, const TrainConfig& cfg = {}) {
    if (corpus.empty()) throw PreconditionError("build_training_set: empty corpus");
    if (cfg.q != 2 || cfg.lr_patch != 4) throw ConfigError("build_training_set: only q=2 with 4x4 LR patches");
    const int hr_patch = cfg.q * cfg.lr_patch;

    TrainingSet ts;
    ts.meta.q = static_cast<std::uint32_t>(cfg.q);
    ts.meta.lr_patch = static_cast<std::uint32_t>(cfg.lr_patch);
    ts.meta.hr_patch = static_cast<std::uint32_t>(hr_patch);
    ts.meta.image_count = static_cast<std::uint32_t>(corpus.size());

    for (std::size_t id = 0; id < corpus.size(); ++id) {
        const Plane hr = pad_to_multiple(corpus[id].plane(), hr_patch).first;
        const Plane lr = decimate(hr, cfg.q);
        const int rows = lr.height() / cfg.lr_patch;
        const int cols = lr.width() / cfg.lr_patch;
        for (int pr = 0; pr < rows; ++pr)
            for (int pc = 0; pc < cols; ++pc) {
                const auto s = analyze_patch_pair(block(lr, pr * cfg.lr_patch, pc * cfg.lr_patch, cfg.lr_patch),
                                                  block(hr, pr * hr_patch, pc * hr_patch, hr_patch), cfg.energy_floor);
                ts.groups[static_cast<std::size_t>(s.direction.index)].push_back(
                    {static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(pr), static_cast<std::uint32_t>(pc),
                     s.lr.flat_details(), s.hr.flat_details()});
            }
    }
    ts.meta.record_count = ts.total_records();
    return ts;
}

struct MadMatch {
    std::size_t index = 0;  // position within the searched group
    double distance = 0.0;
};

// Linear L1 scan; the first record of minimal distance wins.
inline std::optional<MadMatch> query_mad(std::span<const TrainingRecord> group, std::span<const double> probe) {
    std::optional<MadMatch> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < group.size(); ++i) {
        const auto& lr = group[i].lr_details;
        if (lr.size() != probe.size()) throw ShapeError("query_mad: probe length differs from stored records");
        double d = 0.0;
        for (std::size_t k = 0; k < probe.size() && d <= best_d; ++k) d += std::abs(probe[k] - lr[k]);
        if (d < best_d) {
            best_d = d;
            best = MadMatch{i, d};
        }
    }
    return best;
}

inline std::optional<MadMatch> query_mad(const TrainingSet& ts, const DirectionPair& pair, std::span<const double> probe) {
    return query_mad(ts.group(pair), probe);
}

// ---- binary format -------------------------------------------------------

namespace detail {

inline constexpr std::array<char, 4> kTrainsetMagic{'D', 'S', 'R', '1'};
inline constexpr std::uint32_t kTrainsetVersion = 1;
inline constexpr std::size_t kLrValues = 6 * 16;
inline constexpr std::size_t kHrValues = 6 * 64;
inline constexpr std::size_t kHeaderBytes = 4 + 4 * 4 + 8 + 1 + 4;
inline constexpr std::size_t kRecordBytes = 3 * 4 + (kLrValues + kHrValues) * 8;

class ByteWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void raw(std::span<const char> s) { out_.insert(out_.end(), s.begin(), s.end()); }
    std::vector<std::uint8_t>& bytes() { return out_; }

private:
    std::vector<std::uint8_t> out_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}
    std::uint8_t u8() { return need(1)[0]; }
    std::uint32_t u32() {
        auto p = need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        auto p = need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::span<const std::uint8_t> bytes(std::size_t n) { return need(n); }
    std::size_t pos() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }

private:
    std::span<const std::uint8_t> need(std::size_t n) {
        if (remaining() < n) throw LoadError(LoadErrorKind::Truncated, "unexpected end of data");
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

inline std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in chunks
    std::size_t off = 0;
    while (off < bytes.size()) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - off, 1u << 30));
        crc = ::crc32(crc, bytes.data() + off, chunk);
        off += chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

// Byte length implied by the group counts, or nullopt when the header or a
// count lies beyond the end of the buffer.
inline std::optional<std::size_t> implied_length(std::span<const std::uint8_t> bytes) {
    try {
        ByteReader r(bytes);
        r.bytes(kHeaderBytes - 4);
        const std::uint32_t groups = r.u32();
        std::size_t len = kHeaderBytes;
        for (std::uint32_t g = 0; g < groups; ++g) {
            const std::uint64_t count = r.u32();
            len += 4 + count * kRecordBytes;
            if (len > bytes.size()) return std::nullopt;
            r.bytes(static_cast<std::size_t>(count * kRecordBytes));
        }
        return len + 8 + 4;
    } catch (const LoadError&) {
        return std::nullopt;
    }
}

}  // namespace detail

inline std::vector<std::uint8_t> save_training_set(const TrainingSet& ts) {
    detail::ByteWriter w;
    w.raw(detail::kTrainsetMagic);
    w.u32(ts.meta.version);
    w.u32(ts.meta.q);
    w.u32(ts.meta.lr_patch);
    w.u32(ts.meta.hr_patch);
    std::array<char, 8> id;
    id.fill(' ');
    if (ts.meta.filter_id.size() > id.size()) throw PreconditionError("training set: filter id longer than 8 bytes");
    std::copy(ts.meta.filter_id.begin(), ts.meta.filter_id.end(), id.begin());
    w.raw(id);
    w.u8(static_cast<std::uint8_t>(ts.meta.mode));
    w.u32(static_cast<std::uint32_t>(ts.groups.size()));
    for (const auto& group : ts.groups) {
        w.u32(static_cast<std::uint32_t>(group.size()));
        for (const auto& rec : group) {
            if (rec.lr_details.size() != detail::kLrValues || rec.hr_details.size() != detail::kHrValues)
                throw ShapeError("training set: record coefficient count does not match the file format");
            w.u32(rec.image_id);
            w.u32(rec.patch_row);
            w.u32(rec.patch_col);
            for (double v : rec.lr_details) w.f64(v);
            for (double v : rec.hr_details) w.f64(v);
        }
    }
    w.u64(ts.total_records());
    w.u32(detail::crc32_of(w.bytes()));
    return std::move(w.bytes());
}

inline TrainingSet load_training_set(std::span<const std::uint8_t> bytes) {
    using detail::ByteReader;
    if (bytes.size() < 4 || !std::equal(detail::kTrainsetMagic.begin(), detail::kTrainsetMagic.end(), bytes.begin(),
                                        [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; }))
        throw LoadError(LoadErrorKind::BadMagic, "expected \"DSR1\"");
    {
        ByteReader r(bytes.subspan(4));
        const std::uint32_t version = r.u32();
        if (version != detail::kTrainsetVersion)
            throw LoadError(LoadErrorKind::VersionMismatch, "file version " + std::to_string(version) +
                                                                ", supported " +
                                                                std::to_string(detail::kTrainsetVersion));
    }
    const bool crc_ok = bytes.size() >= detail::kHeaderBytes + 12 && [&] {
        ByteReader tail(bytes.subspan(bytes.size() - 4));
        return tail.u32() == detail::crc32_of(bytes.first(bytes.size() - 4));
    }();
    if (!crc_ok) {
        const auto expected = detail::implied_length(bytes);
        if (!expected || *expected > bytes.size())
            throw LoadError(LoadErrorKind::Truncated, "file shorter than its record counts imply");
        throw LoadError(LoadErrorKind::ChecksumMismatch, "CRC-32 does not match contents");
    }

    ByteReader r(bytes);
    r.bytes(4);
    TrainingSet ts;
    ts.meta.version = r.u32();
    ts.meta.q = r.u32();
    ts.meta.lr_patch = r.u32();
    ts.meta.hr_patch = r.u32();
    const auto id = r.bytes(8);
    std::string filter(id.begin(), id.end());
    filter.erase(filter.find_last_not_of(' ') + 1);
    ts.meta.filter_id = filter;
    const std::uint8_t mode = r.u8();
    if (mode > 1) throw LoadError(LoadErrorKind::Malformed, "unknown transform mode byte");
    ts.meta.mode = static_cast<Mode>(mode);
    const std::uint32_t group_count = r.u32();
    if (group_count != ts.groups.size())
        throw LoadError(LoadErrorKind::Malformed, "expected 5 direction groups, found " + std::to_string(group_count));

    std::uint32_t max_image = 0;
    bool any = false;
    for (auto& group : ts.groups) {
        const std::uint32_t count = r.u32();
        if (static_cast<std::uint64_t>(count) * detail::kRecordBytes > r.remaining())
            throw LoadError(LoadErrorKind::Truncated, "group record count exceeds file size");
        group.resize(count);
        for (auto& rec : group) {
            rec.image_id = r.u32();
            rec.patch_row = r.u32();
            rec.patch_col = r.u32();
            rec.lr_details.resize(detail::kLrValues);
            rec.hr_details.resize(detail::kHrValues);
            for (double& v : rec.lr_details) v = r.f64();
            for (double& v : rec.hr_details) v = r.f64();
            max_image = std::max(max_image, rec.image_id);
            any = true;
        }
    }
    const std::uint64_t total = r.u64();
    if (total != ts.total_records()) throw LoadError(LoadErrorKind::Malformed, "record total disagrees with groups");
    r.u32();
    if (r.remaining() != 0) throw LoadError(LoadErrorKind::Malformed, "trailing bytes after checksum");
    ts.meta.record_count = total;
    // image ids are dense, so the count is recoverable without storing it
    ts.meta.image_count = any ? max_image + 1 : 0;
    return ts;
}

}  // namespace dirsr
