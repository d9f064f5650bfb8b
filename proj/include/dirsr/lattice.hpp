#pragma once

// Integer lattices, cosets and co-lines on square toroidal grids.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace dirsr {

// Primitive integer direction (a, b): a is the horizontal (column) component,
// b the vertical one. 0deg = (1,0), 90deg = (0,1), 45deg = (1,1), -45deg = (1,-1).
struct Direction {
    int a = 1;
    int b = 0;

    friend bool operator==(const Direction&, const Direction&) = default;

    bool is_primitive() const { return (a != 0 || b != 0) && std::gcd(std::abs(a), std::abs(b)) == 1; }

    // Grid step (drow, dcol) used when walking a co-line. The sign is fixed
    // so that the row step is non-negative (column step positive on rows).
    std::pair<int, int> step() const {
        int dr = b, dc = a;
        if (dr < 0 || (dr == 0 && dc < 0)) dr = -dr, dc = -dc;
        return {dr, dc};
    }

    std::string name() const {
        if (*this == Direction{1, 0}) return "0";
        if (*this == Direction{0, 1}) return "90";
        if (*this == Direction{1, 1}) return "45";
        if (*this == Direction{1, -1}) return "-45";
        return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
};

inline constexpr Direction kDeg0{1, 0};
inline constexpr Direction kDeg90{0, 1};
inline constexpr Direction kDeg45{1, 1};
inline constexpr Direction kDegMinus45{1, -1};

inline bool is_supported(Direction d) {
    return d == kDeg0 || d == kDeg90 || d == kDeg45 || d == kDegMinus45;
}

using IntMatrix2 = std::array<std::array<long long, 2>, 2>;

inline long long determinant(const IntMatrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

// Transform direction d1 and alignment direction d2; generator rows are (d1; d2).
struct DirectionPair {
    Direction d1;
    Direction d2;

    friend bool operator==(const DirectionPair&, const DirectionPair&) = default;

    IntMatrix2 generator() const { return {{{d1.a, d1.b}, {d2.a, d2.b}}}; }

    // AWT(2,1): two transforms along d1, one along d2.
    static constexpr int kTransformsAlongD1 = 2;
    static constexpr int kTransformsAlongD2 = 1;

    std::string name() const { return "(" + d1.name() + "," + d2.name() + ")"; }
};

// Tie-break order for best-direction selection.
inline const std::array<DirectionPair, 5>& canonical_pairs() {
    static const std::array<DirectionPair, 5> pairs{{
        {kDeg0, kDeg90},
        {kDeg0, kDeg45},
        {kDeg0, kDegMinus45},
        {kDeg90, kDeg45},
        {kDeg90, kDegMinus45},
    }};
    return pairs;
}

inline int canonical_index(const DirectionPair& p) {
    const auto& pairs = canonical_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i] == p) return static_cast<int>(i);
    return -1;
}

struct CosetDecomposition {
    IntMatrix2 generator{};
    long long count = 0;
    std::vector<std::array<long long, 2>> shifts;
    // Hermite basis {(p, r), (0, s)} of the same lattice, 0 <= r < s.
    long long p = 0, r = 0, s = 0;

    // Coset index of an arbitrary integer point.
    std::size_t coset_of(long long x, long long y) const {
        auto floor_div = [](long long a, long long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
        const long long k = floor_div(x, p);
        x -= k * p;
        y -= k * r;
        y -= floor_div(y, s) * s;
        return static_cast<std::size_t>(x * s + y);
    }
};

namespace detail {

// Returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
inline std::array<long long, 3> ext_gcd(long long a, long long b) {
    long long old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
        const long long q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_x = std::exchange(x, old_x - q * x);
        old_y = std::exchange(y, old_y - q * y);
    }
    if (old_r < 0) old_r = -old_r, old_x = -old_x, old_y = -old_y;
    return {old_r, old_x, old_y};
}

}  // namespace detail

// Residues of Z^2 modulo the lattice spanned by the generator's rows.
inline CosetDecomposition coset_decomposition(const IntMatrix2& g) {
    const long long det = determinant(g);
    if (det == 0) throw PreconditionError("coset_decomposition: singular generator");
    CosetDecomposition cd;
    cd.generator = g;
    cd.count = std::abs(det);

    const long long a1 = g[0][0], b1 = g[0][1], a2 = g[1][0], b2 = g[1][1];
    const auto [p, x, y] = detail::ext_gcd(a1, a2);
    cd.p = p;
    cd.s = cd.count / p;
    const long long r = x * b1 + y * b2;
    cd.r = ((r % cd.s) + cd.s) % cd.s;

    for (long long i = 0; i < cd.p; ++i)
        for (long long j = 0; j < cd.s; ++j) cd.shifts.push_back({i, j});
    return cd;
}

using Cell = std::pair<int, int>;  // (row, col)

// Partition of the n x n torus into n cyclic lines along d.
inline std::vector<std::vector<Cell>> colines(int n, Direction d) {
    if (n < 1) throw PreconditionError("colines: n must be >= 1");
    if (!is_supported(d)) throw PreconditionError("colines: unsupported direction " + d.name());
    const auto [dr, dc] = d.step();
    auto mod = [n](int v) { return ((v % n) + n) % n; };
    std::vector<std::vector<Cell>> lines(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        auto& line = lines[static_cast<std::size_t>(k)];
        line.reserve(static_cast<std::size_t>(n));
        // rows start at (k,0); every other direction starts on row 0 at column k
        Cell start = dr == 0 ? Cell{k, 0} : Cell{0, k};
        for (int i = 0; i < n; ++i) line.push_back({mod(start.first + i * dr), mod(start.second + i * dc)});
    }
    return lines;
}

// Lattice coordinates of a pair on the n x n torus: cell(u, v) = u*step(d1) + v*step(d2).
// Lines of constant v are the d1 co-lines, lines of constant u the d2 co-lines.
// Returns the row-major cell index for each (v, u), stored at v*n + u.
inline std::vector<int> lattice_coordinates(int n, const DirectionPair& pair) {
    const auto [r1, c1] = pair.d1.step();
    const auto [r2, c2] = pair.d2.step();
    auto mod = [n](long long v) { return static_cast<int>(((v % n) + n) % n); };
    std::vector<int> map(static_cast<std::size_t>(n) * n);
    std::vector<char> seen(map.size(), 0);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u) {
            const int cell = mod(1LL * u * r1 + 1LL * v * r2) * n + mod(1LL * u * c1 + 1LL * v * c2);
            if (seen[static_cast<std::size_t>(cell)]++)
                throw PreconditionError("direction pair " + pair.name() + " does not tile a " + std::to_string(n) +
                                        "-torus");
            map[static_cast<std::size_t>(v) * n + u] = cell;
        }
    return map;
}

}  // namespace dirsr
