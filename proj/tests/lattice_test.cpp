#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "dirsr/lattice.hpp"

using namespace dirsr;

namespace {

// Brute-force congruence: (dx, dy) lies in the row lattice of g.
bool in_lattice(const IntMatrix2& g, long long dx, long long dy) {
    const long long det = determinant(g);
    // (dx, dy) = m*row0 + k*row1  =>  Cramer's rule
    const long long m_num = dx * g[1][1] - dy * g[1][0];
    const long long k_num = g[0][0] * dy - g[0][1] * dx;
    return m_num % det == 0 && k_num % det == 0;
}

long long brute_force_count(const IntMatrix2& g) {
    const long long w = std::abs(determinant(g)) + 1;
    std::vector<std::pair<long long, long long>> reps;
    for (long long x = 0; x < w; ++x)
        for (long long y = 0; y < w; ++y) {
            bool found = false;
            for (auto [rx, ry] : reps)
                if (in_lattice(g, x - rx, y - ry)) {
                    found = true;
                    break;
                }
            if (!found) reps.push_back({x, y});
        }
    return static_cast<long long>(reps.size());
}

}  // namespace

TEST(Direction, StepsAndNames) {
    EXPECT_EQ(kDeg0.step(), (std::pair{0, 1}));
    EXPECT_EQ(kDeg90.step(), (std::pair{1, 0}));
    EXPECT_EQ(kDeg45.step(), (std::pair{1, 1}));
    EXPECT_EQ(kDegMinus45.step(), (std::pair{1, -1}));
    EXPECT_EQ(kDegMinus45.name(), "-45");
    EXPECT_TRUE((Direction{2, 1}).is_primitive());
    EXPECT_FALSE((Direction{2, 2}).is_primitive());
    EXPECT_FALSE(is_supported(Direction{2, 1}));
}

TEST(CanonicalPairs, FiveUnimodularPairs) {
    const auto& pairs = canonical_pairs();
    ASSERT_EQ(pairs.size(), 5u);
    EXPECT_EQ(pairs[0].generator(), (IntMatrix2{{{1, 0}, {0, 1}}}));
    for (const auto& p : pairs) {
        EXPECT_EQ(std::abs(determinant(p.generator())), 1) << p.name();
        EXPECT_NE(p.d1, p.d2);
        EXPECT_EQ(canonical_index(p), &p - pairs.data());
    }
    EXPECT_EQ(canonical_index(DirectionPair{kDeg45, kDeg0}), -1);
}

TEST(Cosets, Identity) {
    const auto cd = coset_decomposition({{{1, 0}, {0, 1}}});
    EXPECT_EQ(cd.count, 1);
    ASSERT_EQ(cd.shifts.size(), 1u);
    EXPECT_EQ(cd.shifts[0], (std::array<long long, 2>{0, 0}));
}

TEST(Cosets, Quincunx) {
    const IntMatrix2 g{{{1, 1}, {1, -1}}};
    const auto cd = coset_decomposition(g);
    EXPECT_EQ(cd.count, 2);
    ASSERT_EQ(cd.shifts.size(), 2u);
    EXPECT_EQ(cd.shifts[0], (std::array<long long, 2>{0, 0}));
    EXPECT_EQ(cd.shifts[1], (std::array<long long, 2>{0, 1}));
    EXPECT_EQ(brute_force_count(g), 2);
    // checkerboard split over a 4x4 window
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) EXPECT_EQ(cd.coset_of(x, y), static_cast<std::size_t>((x + y) % 2));
}

TEST(Cosets, SlopeHalfExampleHasThree) {
    const IntMatrix2 g{{{2, 1}, {-1, 1}}};
    const auto cd = coset_decomposition(g);
    EXPECT_EQ(cd.count, 3);
    EXPECT_EQ(cd.shifts.size(), 3u);
    EXPECT_EQ(brute_force_count(g), 3);
}

TEST(Cosets, AgreeWithBruteForceUpToDetFour) {
    int checked = 0;
    for (long long a = -4; a <= 4; ++a)
        for (long long b = -4; b <= 4; ++b)
            for (long long c = -4; c <= 4; ++c)
                for (long long d = -4; d <= 4; ++d) {
                    const IntMatrix2 g{{{a, b}, {c, d}}};
                    const long long det = determinant(g);
                    if (det == 0 || std::abs(det) > 4) continue;
                    const auto cd = coset_decomposition(g);
                    ASSERT_EQ(cd.count, std::abs(det));
                    ASSERT_EQ(static_cast<long long>(cd.shifts.size()), cd.count);
                    ASSERT_EQ(brute_force_count(g), cd.count);
                    for (std::size_t i = 0; i < cd.shifts.size(); ++i) {
                        EXPECT_EQ(cd.coset_of(cd.shifts[i][0], cd.shifts[i][1]), i);
                        for (std::size_t j = i + 1; j < cd.shifts.size(); ++j)
                            EXPECT_FALSE(in_lattice(g, cd.shifts[i][0] - cd.shifts[j][0],
                                                    cd.shifts[i][1] - cd.shifts[j][1]));
                    }
                    // coset_of is constant on congruence classes
                    for (long long x = -3; x <= 3; ++x)
                        for (long long y = -3; y <= 3; ++y)
                            EXPECT_EQ(cd.coset_of(x, y), cd.coset_of(x + a - 2 * c, y + b - 2 * d));
                    ++checked;
                }
    EXPECT_GT(checked, 1000);
    EXPECT_THROW(coset_decomposition({{{1, 2}, {2, 4}}}), PreconditionError);
}

TEST(Colines, RowsInOrder) {
    const auto lines = colines(4, kDeg0);
    ASSERT_EQ(lines.size(), 4u);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i) EXPECT_EQ(lines[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)], (Cell{k, i}));
}

TEST(Colines, DiagonalStartsAtOrigin) {
    const auto lines = colines(4, kDeg45);
    EXPECT_EQ(lines[0], (std::vector<Cell>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
}

TEST(Colines, PartitionAndCycle) {
    for (int n : {1, 2, 3, 4, 5, 8, 16})
        for (Direction d : {kDeg0, kDeg90, kDeg45, kDegMinus45}) {
            const auto lines = colines(n, d);
            std::set<Cell> seen;
            const auto [dr, dc] = d.step();
            for (const auto& line : lines) {
                ASSERT_EQ(static_cast<int>(line.size()), n);
                for (const auto& cell : line) EXPECT_TRUE(seen.insert(cell).second);
                const Cell back{((line.back().first + dr) % n + n) % n, ((line.back().second + dc) % n + n) % n};
                EXPECT_EQ(back, line.front());
            }
            EXPECT_EQ(static_cast<int>(seen.size()), n * n);
        }
    EXPECT_THROW(colines(4, Direction{2, 1}), PreconditionError);
}

TEST(LatticeCoordinates, CanonicalPairsTileTheTorus) {
    for (int n : {4, 8})
        for (const auto& p : canonical_pairs()) {
            const auto map = lattice_coordinates(n, p);
            std::set<int> cells(map.begin(), map.end());
            EXPECT_EQ(static_cast<int>(cells.size()), n * n);
            // rows of the map are d1 co-lines
            const auto [r1, c1] = p.d1.step();
            for (int v = 0; v < n; ++v)
                for (int u = 0; u + 1 < n; ++u) {
                    const int a = map[static_cast<std::size_t>(v * n + u)], b = map[static_cast<std::size_t>(v * n + u + 1)];
                    EXPECT_EQ(b / n, ((a / n + r1) % n + n) % n);
                    EXPECT_EQ(b % n, ((a % n + c1) % n + n) % n);
                }
        }
    EXPECT_THROW(lattice_coordinates(8, DirectionPair{kDeg45, kDegMinus45}), PreconditionError);
}
