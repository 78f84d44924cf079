#include <gtest/gtest.h>

#include <random>

#include "dphh/errors.hpp"
#include "dphh/space_saving.hpp"
#include "exact_counter.hpp"

namespace dphh {
namespace {

constexpr Label a = 1, b = 2, c = 3;

TEST(SpaceSaving, EmptyStream) {
    const auto s = ss_process({}, 4);
    EXPECT_TRUE(s.empty());
    EXPECT_EQ(s.capacity, 4u);
    EXPECT_EQ(ss_estimate(s, a), 0u);
}

TEST(SpaceSaving, RepeatedLabelIncrements) {
    const Stream x{a, a, b};
    const auto s = ss_process(x, 2);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.count_of(a), 2u);
    EXPECT_EQ(s.count_of(b), 1u);
}

TEST(SpaceSaving, EvictsMostRecentMinimum) {
    const Stream x{a, b, c};
    const auto s = ss_process(x, 2);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.count_of(a), 1u);
    EXPECT_EQ(s.count_of(c), 2u);
    EXPECT_FALSE(s.contains(b));
    EXPECT_EQ(ss_estimate(s, c), 2u);
    EXPECT_EQ(ss_estimate(s, b), 0u);
    EXPECT_EQ(s.find(c)->last_seen, 3u);
}

TEST(SpaceSaving, CapacityZeroRejected) {
    EXPECT_THROW(ss_process({}, 0), InvalidParameter);
    EXPECT_THROW(SpaceSaving(0), InvalidParameter);
}

TEST(SpaceSaving, EvictionRegister) {
    SpaceSaving ss(2);
    ss.update(a);
    EXPECT_FALSE(ss.eviction_register());
    ss.update(b);
    EXPECT_EQ(ss.eviction_register(), b);
    ss.update(a);
    EXPECT_EQ(ss.eviction_register(), b);
    ss.update(c);  // replaces b, count 2
    EXPECT_EQ(ss.eviction_register(), c);
}

TEST(SpaceSaving, SkipAdvancesPositionOnly) {
    SpaceSaving ss(2);
    ss.update(a);
    ss.skip();
    ss.update(b);
    EXPECT_EQ(ss.processed(), 2u);
    EXPECT_EQ(ss.position(), 3u);
    EXPECT_EQ(ss.summary().find(b)->last_seen, 3u);
}

TEST(SpaceSaving, SingleCounter) {
    const Stream x{a, b, b, c};
    const auto s = ss_process(x, 1);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.count_of(c), 4u);
}

// Reference implementation: linear scans, literal eviction rule.
StreamSummary naive_ss(StreamView x, std::size_t k) {
    std::vector<Counter> t;
    std::uint64_t pos = 0;
    for (Label y : x) {
        ++pos;
        auto it = std::find_if(t.begin(), t.end(), [&](const Counter& c) { return c.label == y; });
        if (it != t.end()) {
            ++it->count;
            it->last_seen = pos;
        } else if (t.size() < k) {
            t.push_back({y, 1, pos});
        } else {
            std::uint64_t m = ~0ull;
            for (auto& c : t) m = std::min(m, c.count);
            Counter* victim = nullptr;
            for (auto& c : t) {
                if (c.count == m && (!victim || c.last_seen > victim->last_seen)) victim = &c;
            }
            *victim = {y, m + 1, pos};
        }
    }
    StreamSummary s{t, k, x.size()};
    s.normalize();
    return s;
}

TEST(SpaceSaving, MatchesNaiveReference) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t k = 1 + trial % 40;
        const auto x = testing::skewed_stream(rng, 1 + rng() % 800, 1 + rng() % 64);
        ASSERT_EQ(ss_process(x, k), naive_ss(x, k)) << "trial " << trial;
    }
}

TEST(SpaceSaving, AdditiveErrorAndMassConservation) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + rng() % 32;
        const std::size_t universe = 1 + rng() % 64;
        const auto x = trial % 2 ? testing::uniform_stream(rng, 1 + rng() % 10000, universe)
                                 : testing::skewed_stream(rng, 1 + rng() % 10000, universe);
        const auto f = testing::count_exact(x);
        SpaceSaving ss(k);
        for (std::size_t t = 0; t < x.size(); ++t) {
            ss.update(x[t]);
            if (t % 97 == 0) { ASSERT_EQ(ss.summary().total_count(), t + 1); }
        }
        const auto s = ss.summary();
        ASSERT_EQ(s.total_count(), x.size());
        const double bound = static_cast<double>(x.size()) / static_cast<double>(k);
        const std::uint64_t floor = s.size() < k ? 0 : *s.min_count();
        for (const auto& [y, fy] : f) {
            if (const Counter* cy = s.find(y)) {
                ASSERT_GE(cy->count, fy);
                ASSERT_LE(static_cast<double>(cy->count), static_cast<double>(fy) + bound);
                ASSERT_LE(cy->last_seen, x.size());
                ASSERT_EQ(x[cy->last_seen - 1], y);
            } else {
                ASSERT_LE(fy, floor);
            }
        }
    }
}

TEST(SpaceSaving, RecencyIsLastArrival) {
    std::mt19937_64 rng(3);
    const auto x = testing::uniform_stream(rng, 3000, 20);
    const auto s = ss_process(x, 8);
    for (const Counter& c : s.counters) {
        const auto last = std::find(x.rbegin(), x.rend(), c.label);
        ASSERT_EQ(c.last_seen, static_cast<std::uint64_t>(x.rend() - last));
    }
}

TEST(SpaceSaving, Deterministic) {
    std::mt19937_64 rng(5);
    const auto x = testing::skewed_stream(rng, 5000, 200);
    EXPECT_EQ(ss_process(x, 17), ss_process(x, 17));
}

TEST(SpaceSaving, HashIndexPathMatchesNaive) {
    // Capacities above the linear-scan limit use the hash index.
    std::mt19937_64 rng(21);
    for (std::size_t k : {17u, 64u, 300u}) {
        const auto x = testing::uniform_stream(rng, 20000, 1000);
        ASSERT_EQ(ss_process(x, k), naive_ss(x, k));
    }
}

TEST(SpaceSaving, BytesGrowWithCapacity) {
    SpaceSaving small(64);
    SpaceSaving large(4096);
    EXPECT_GT(large.bytes(), 32 * small.bytes());
}

}  // namespace
}  // namespace dphh
