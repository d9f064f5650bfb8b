#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dirsr/degrade.hpp"
#include "test_util.hpp"

using namespace dirsr;

namespace {

double mean(const Plane& p) {
    long double s = 0;
    for (double v : p) s += v;
    return static_cast<double>(s / p.size());
}

}  // namespace

TEST(Decimate, ConstantStaysConstant) {
    for (int q : {1, 2, 4})
        for (double v : decimate(Plane(8, 8, 0.37), q)) EXPECT_DOUBLE_EQ(v, 0.37);
}

TEST(Decimate, SixteenPixelExample) {
    Plane z(4, 4);
    for (int i = 0; i < 16; ++i) z.values()[static_cast<std::size_t>(i)] = (i + 1) / 16.0;
    const Plane y = decimate(z, 2);
    EXPECT_DOUBLE_EQ(y(0, 0), 3.5 / 16);
    EXPECT_DOUBLE_EQ(y(0, 1), 5.5 / 16);
    EXPECT_DOUBLE_EQ(y(1, 0), 11.5 / 16);
    EXPECT_DOUBLE_EQ(y(1, 1), 13.5 / 16);
}

TEST(Decimate, RejectsIndivisibleSizes) {
    EXPECT_THROW(decimate(Plane(6, 4), 4), PreconditionError);
    EXPECT_THROW(decimate(Plane(4, 4), 0), PreconditionError);
}

TEST(DecimationMatrix, FirstRowPattern) {
    const auto d = decimation_matrix(2, 2);
    EXPECT_EQ(d.rows(), 4);
    EXPECT_EQ(d.cols(), 16);
    EXPECT_EQ(d.row_pattern(0), "1100110000000000");
    EXPECT_EQ(d.weight, 0.25);
}

TEST(DecimationMatrix, UnitFactorIsIdentity) {
    const auto d = decimation_matrix(5, 1);
    for (int r = 0; r < d.rows(); ++r) {
        ASSERT_EQ(d.columns[static_cast<std::size_t>(r)].size(), 1u);
        EXPECT_EQ(d.columns[static_cast<std::size_t>(r)][0], r);
    }
    EXPECT_EQ(d.weight, 1.0);
}

TEST(DecimationMatrix, RowsSumToOneAndColumnsUsedOnce) {
    for (int m = 1; m <= 6; ++m)
        for (int q = 1; q <= 4; ++q) {
            const auto d = decimation_matrix(m, q);
            std::vector<int> used(static_cast<std::size_t>(d.cols()), 0);
            for (const auto& row : d.columns) {
                EXPECT_EQ(static_cast<int>(row.size()), q * q);
                EXPECT_DOUBLE_EQ(d.weight * static_cast<double>(row.size()), 1.0);
                for (int c : row) ++used[static_cast<std::size_t>(c)];
            }
            for (int u : used) EXPECT_EQ(u, 1);
        }
}

TEST(DecimationMatrix, MatchesDecimateExactly) {
    std::mt19937_64 rng(21);
    for (int q : {1, 2, 4})
        for (int hr = q; hr <= 16; hr += q) {
            const Plane z = testutil::random_plane(rng, hr, hr);
            const auto y = decimation_matrix(hr / q, q).apply(z.values());
            const Plane direct = decimate(z, q);
            ASSERT_EQ(y.size(), direct.size());
            for (std::size_t i = 0; i < y.size(); ++i) EXPECT_EQ(y[i], direct.values()[i]);
        }
}

TEST(Decimate, PreservesMean) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial)
        for (int q : {2, 4}) {
            const Plane z = testutil::random_plane(rng, 16, 8);
            EXPECT_NEAR(mean(decimate(z, q)), mean(z), 1e-12);
        }
}

TEST(Decimate, ComposesExactly) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        Plane z(16, 16);
        // dyadic values keep every partial sum exact
        std::uniform_int_distribution<int> u(0, 255);
        for (double& v : z) v = u(rng) / 256.0;
        EXPECT_EQ(decimate(decimate(z, 2), 2), decimate(z, 4));
    }
}

TEST(Noise, ZeroSigmaIsIdentity) {
    std::mt19937_64 rng(2);
    const Image x = testutil::random_image(rng, 9, 7);
    EXPECT_EQ(add_noise(x, 0.0, 123), x);
    EXPECT_THROW(add_noise(x, -1.0, 1), PreconditionError);
}

TEST(Noise, SameSeedSameOutput) {
    const Image x(33, 17, 0.5);
    EXPECT_EQ(add_noise(x, 0.1, 99), add_noise(x, 0.1, 99));
    EXPECT_NE(add_noise(x, 0.1, 99), add_noise(x, 0.1, 100));
}

TEST(Noise, SampleDeviationMatchesSigma) {
    const Image x(64, 64, 0.5);
    const Image y = add_noise(x, 0.05, 2024);
    double s = 0, s2 = 0;
    for (double v : y.pixels()) {
        s += v - 0.5;
        s2 += (v - 0.5) * (v - 0.5);
    }
    const double n = static_cast<double>(y.pixels().size());
    const double sd = std::sqrt(s2 / n - (s / n) * (s / n));
    EXPECT_GE(sd, 0.04);
    EXPECT_LE(sd, 0.06);
}
