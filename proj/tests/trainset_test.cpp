#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "dirsr/demo_corpus.hpp"
#include "dirsr/trainset.hpp"
#include "test_util.hpp"

using namespace dirsr;

namespace {

std::vector<Image> small_corpus() {
    return {demo::shapes(32, 5), demo::stripes(24, 5.0, 45.0), demo::terrain(16, 2)};
}

TrainingRecord random_record(std::mt19937_64& rng, std::uint32_t id) {
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    TrainingRecord r{id, id / 7, id % 7, std::vector<double>(96), std::vector<double>(384)};
    for (double& v : r.lr_details) v = u(rng);
    for (double& v : r.hr_details) v = u(rng);
    return r;
}

std::vector<double> random_probe(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    std::vector<double> p(96);
    for (double& v : p) v = u(rng);
    return p;
}

long double l1(const std::vector<double>& a, const std::vector<double>& b) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(static_cast<long double>(a[i]) - b[i]);
    return s;
}

}  // namespace

TEST(BuildTrainingSet, ConstantImageGivesOneZeroRecord) {
    const std::vector<Image> corpus{Image(8, 8, 0.6)};
    const auto ts = build_training_set(corpus);
    ASSERT_EQ(ts.total_records(), 1u);
    ASSERT_EQ(ts.groups[0].size(), 1u);
    EXPECT_EQ(ts.meta.record_count, 1u);
    EXPECT_EQ(ts.meta.image_count, 1u);
    for (double v : ts.groups[0][0].lr_details) EXPECT_NEAR(v, 0.0, 1e-14);
    for (double v : ts.groups[0][0].hr_details) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(BuildTrainingSet, TilesInRasterOrder) {
    std::mt19937_64 rng(1);
    const std::vector<Image> corpus{testutil::random_image(rng, 16, 16)};
    const auto ts = build_training_set(corpus);
    ASSERT_EQ(ts.total_records(), 4u);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& g : ts.groups)
        for (std::size_t i = 0; i < g.size(); ++i) {
            seen.insert({g[i].patch_row, g[i].patch_col});
            if (i > 0) {
                EXPECT_LT(g[i - 1].patch_row * 2 + g[i - 1].patch_col, g[i].patch_row * 2 + g[i].patch_col);
            }
        }
    EXPECT_EQ(seen.size(), 4u);
}

TEST(BuildTrainingSet, PadsOddSizes) {
    const std::vector<Image> corpus{Image(13, 9, 0.2)};
    EXPECT_EQ(build_training_set(corpus).total_records(), 4u);
    EXPECT_THROW(build_training_set(std::vector<Image>{}), PreconditionError);
    EXPECT_THROW(build_training_set(corpus, TrainConfig{4, 4}), ConfigError);
}

TEST(BuildTrainingSet, RecordsRebuildFromSource) {
    const auto corpus = small_corpus();
    const auto ts = build_training_set(corpus);
    for (std::size_t gi = 0; gi < 5; ++gi) {
        const auto& pair = canonical_pairs()[gi];
        for (const auto& rec : ts.groups[gi]) {
            const Plane hr = pad_to_multiple(corpus[rec.image_id].plane(), 8).first;
            const Plane lr = decimate(hr, 2);
            const Plane lp = block(lr, static_cast<int>(rec.patch_row) * 4, static_cast<int>(rec.patch_col) * 4, 4);
            const Plane hp = block(hr, static_cast<int>(rec.patch_row) * 8, static_cast<int>(rec.patch_col) * 8, 8);
            double e = 0.01;
            for (double v : lp) e += std::abs(v);
            ASSERT_EQ(best_direction(scaled(lp, 1 / e)).index, static_cast<int>(gi));
            const auto lr_d = forward_awt21(scaled(lp, 1 / e), pair, Mode::Oversampled).flat_details();
            const auto hr_full = forward_awt21(scaled(hp, 1 / e), pair, Mode::Oversampled);
            const auto hr_d = hr_full.flat_details();
            for (std::size_t k = 0; k < lr_d.size(); ++k) EXPECT_NEAR(lr_d[k], rec.lr_details[k], 1e-12);
            for (std::size_t k = 0; k < hr_d.size(); ++k) EXPECT_NEAR(hr_d[k], rec.hr_details[k], 1e-12);

            // stored HR details plus the true approximation rebuild the normalized HR patch
            auto s = hr_full;
            s.set_details(rec.hr_details);
            EXPECT_LT(max_abs_diff(inverse_awt21(s), scaled(hp, 1 / e)), 1e-9);
        }
    }
}

TEST(BuildTrainingSet, Deterministic) {
    const auto corpus = small_corpus();
    EXPECT_EQ(save_training_set(build_training_set(corpus)), save_training_set(build_training_set(corpus)));
}

TEST(TrainingSetFormat, RoundTrip) {
    const auto ts = build_training_set(small_corpus());
    const auto bytes = save_training_set(ts);
    const auto back = load_training_set(bytes);
    EXPECT_EQ(back, ts);
    EXPECT_EQ(save_training_set(back), bytes);
    EXPECT_EQ(bytes.size(), 33u + 5 * 4 + ts.total_records() * (12 + 480 * 8) + 12);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "DSR1");
    EXPECT_EQ(std::string(bytes.begin() + 20, bytes.begin() + 28), "daub4   ");
    EXPECT_EQ(bytes[28], 1);
}

TEST(TrainingSetFormat, EmptySetRoundTrips) {
    TrainingSet ts;
    const auto bytes = save_training_set(ts);
    EXPECT_EQ(load_training_set(bytes), ts);
}

TEST(TrainingSetFormat, DetectsCorruption) {
    const auto bytes = save_training_set(build_training_set(small_corpus()));
    auto kind_of = [](const std::vector<std::uint8_t>& b) {
        try {
            load_training_set(b);
        } catch (const LoadError& e) {
            return e.kind();
        }
        ADD_FAILURE() << "load succeeded";
        return LoadErrorKind::Malformed;
    };

    auto flipped = bytes;
    flipped[bytes.size() / 2] ^= 0x10;
    EXPECT_EQ(kind_of(flipped), LoadErrorKind::ChecksumMismatch);

    auto magic = bytes;
    magic[0] = 'X';
    EXPECT_EQ(kind_of(magic), LoadErrorKind::BadMagic);

    auto version = bytes;
    version[4] = 2;
    EXPECT_EQ(kind_of(version), LoadErrorKind::VersionMismatch);

    const std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 100);
    EXPECT_EQ(kind_of(cut), LoadErrorKind::Truncated);
    const std::vector<std::uint8_t> header_only(bytes.begin(), bytes.begin() + 20);
    EXPECT_EQ(kind_of(header_only), LoadErrorKind::Truncated);
}

TEST(QueryMad, ExactProbeAndEmptyGroup) {
    std::mt19937_64 rng(3);
    std::vector<TrainingRecord> group;
    for (std::uint32_t i = 0; i < 20; ++i) group.push_back(random_record(rng, i));
    const auto m = query_mad(group, group[13].lr_details);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->index, 13u);
    EXPECT_EQ(m->distance, 0.0);
    EXPECT_FALSE(query_mad(std::vector<TrainingRecord>{}, group[0].lr_details));

    TrainingSet ts;
    ts.groups[2] = group;
    EXPECT_FALSE(query_mad(ts, canonical_pairs()[0], group[0].lr_details));
    EXPECT_EQ(query_mad(ts, canonical_pairs()[2], group[5].lr_details)->index, 5u);
}

TEST(QueryMad, FirstOfEqualRecordsWins) {
    std::mt19937_64 rng(4);
    std::vector<TrainingRecord> group;
    for (std::uint32_t i = 0; i < 10; ++i) group.push_back(random_record(rng, i));
    group.push_back(group[3]);
    group.insert(group.begin() + 1, group[3]);
    EXPECT_EQ(query_mad(group, group[4].lr_details)->index, 1u);
}

TEST(QueryMad, MatchesExtendedPrecisionScan) {
    std::mt19937_64 rng(5);
    std::vector<TrainingRecord> group;
    for (std::uint32_t i = 0; i < 50; ++i) group.push_back(random_record(rng, i));
    for (int trial = 0; trial < 200; ++trial) {
        const auto probe = random_probe(rng);
        std::size_t arg = 0;
        long double best = l1(probe, group[0].lr_details);
        for (std::size_t i = 1; i < group.size(); ++i) {
            const long double d = l1(probe, group[i].lr_details);
            if (d < best) best = d, arg = i;
        }
        const auto m = query_mad(group, probe);
        ASSERT_TRUE(m);
        EXPECT_EQ(m->index, arg);
        EXPECT_NEAR(m->distance, static_cast<double>(best), 1e-12);
    }
}

TEST(QueryMad, DistanceIsSymmetricL1) {
    std::mt19937_64 rng(6);
    const auto a = random_record(rng, 0), b = random_record(rng, 1);
    const std::vector<TrainingRecord> ga{a}, gb{b};
    EXPECT_EQ(query_mad(ga, b.lr_details)->distance, query_mad(gb, a.lr_details)->distance);
    EXPECT_GT(query_mad(ga, b.lr_details)->distance, 0.0);
    EXPECT_THROW(query_mad(ga, std::vector<double>(95)), ShapeError);
}
