#pragma once

// Netpbm grayscale (P2 ascii / P5 binary) codec.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "image.hpp"

namespace dirsr {

enum class PgmMode { Ascii, Binary };

namespace detail {

class PgmTokenizer {
public:
    explicit PgmTokenizer(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Reads one unsigned decimal header/body token, skipping whitespace and comments.
    long long next_uint(const char* field) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) throw FormatError(std::string("pgm: truncated before ") + field);
        if (!std::isdigit(bytes_[pos_]))
            throw FormatError(std::string("pgm: expected unsigned integer for ") + field);
        long long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > (1LL << 40)) throw FormatError(std::string("pgm: value too large for ") + field);
            ++pos_;
        }
        return v;
    }

    // After maxval exactly one whitespace byte separates the header from a binary raster.
    void consume_single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            throw FormatError("pgm: missing whitespace after maxval");
        ++pos_;
    }

    std::size_t pos() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Image read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '3' || bytes[1] == '6'))
        throw FormatError("pgm: colour PPM input is not supported; extract luminance to a grayscale PGM first");
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw FormatError("pgm: bad magic (expected P2 or P5)");
    const bool binary = bytes[1] == '5';
    detail::PgmTokenizer tok(bytes.subspan(2));

    const long long width = tok.next_uint("width");
    const long long height = tok.next_uint("height");
    const long long maxval = tok.next_uint("maxval");
    if (width <= 0) throw FormatError("pgm: width must be positive");
    if (height <= 0) throw FormatError("pgm: height must be positive");
    if (maxval <= 0 || maxval > 65535) throw FormatError("pgm: maxval out of range 1..65535");

    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<double> px(count);
    const double scale = 1.0 / static_cast<double>(maxval);

    if (binary) {
        tok.consume_single_whitespace();
        const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
        if (tok.remaining() < count * sample_bytes) throw FormatError("pgm: truncated payload");
        const auto* p = bytes.data() + 2 + tok.pos();
        for (std::size_t i = 0; i < count; ++i) {
            unsigned s = sample_bytes == 2 ? (unsigned(p[2 * i]) << 8) | p[2 * i + 1] : p[i];
            if (s > maxval) throw FormatError("pgm: sample exceeds maxval");
            px[i] = s * scale;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long long s = tok.next_uint("sample");
            if (s > maxval) throw FormatError("pgm: sample exceeds maxval");
            px[i] = static_cast<double>(s) * scale;
        }
    }
    return Image(static_cast<int>(width), static_cast<int>(height), std::move(px));
}

inline std::vector<std::uint8_t> write_pgm(const Image& img, PgmMode mode, int maxval = 255) {
    if (maxval < 1 || maxval > 65535) throw PreconditionError("pgm: maxval must be in 1..65535");
    std::string header = std::string(mode == PgmMode::Binary ? "P5" : "P2") + "\n" +
                         std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" +
                         std::to_string(maxval) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());

    auto quantize = [maxval](double v) {
        const double s = std::round(v * maxval);
        return static_cast<unsigned>(std::clamp(s, 0.0, static_cast<double>(maxval)));
    };

    if (mode == PgmMode::Binary) {
        const bool wide = maxval > 255;
        out.reserve(out.size() + img.pixels().size() * (wide ? 2 : 1));
        for (double v : img.pixels()) {
            const unsigned s = quantize(v);
            if (wide) out.push_back(static_cast<std::uint8_t>(s >> 8));
            out.push_back(static_cast<std::uint8_t>(s & 0xFF));
        }
    } else {
        std::string body;
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) {
                if (c) body += ' ';
                body += std::to_string(quantize(img(r, c)));
            }
            body += '\n';
        }
        out.insert(out.end(), body.begin(), body.end());
    }
    return out;
}

}  // namespace dirsr
