#include <gtest/gtest.h>

#include "dphh/errors.hpp"
#include "dphh/metrics.hpp"

namespace dphh {
namespace {

constexpr Label a = 1, b = 2, c = 3;

Stream from_counts(std::initializer_list<std::pair<Label, int>> counts) {
    Stream x;
    for (auto [y, n] : counts) x.insert(x.end(), n, y);
    return x;
}

ReleaseReport report(std::vector<ReleasedLabel> r) {
    ReleaseReport out;
    out.released = std::move(r);
    return out;
}

TEST(Metrics, ExactHeavyHitters) {
    const auto empty = exact_heavy_hitters({}, 4);
    EXPECT_TRUE(empty.labels.empty());
    EXPECT_TRUE(empty.frequencies.empty());
    const auto h = exact_heavy_hitters(from_counts({{a, 60}, {b, 30}, {c, 10}}), 4);
    EXPECT_EQ(h.labels, (std::vector<Label>{a, b}));
    EXPECT_DOUBLE_EQ(h.threshold, 25.0);
    EXPECT_EQ(h.frequencies.at(c), 10u);
    EXPECT_THROW(exact_heavy_hitters({}, 0), InvalidParameter);
}

TEST(Metrics, BoundaryExcluded) {
    const auto h = exact_heavy_hitters(from_counts({{a, 25}, {b, 75}}), 4);
    EXPECT_EQ(h.labels, (std::vector<Label>{b}));
}

TEST(Metrics, PerfectRelease) {
    const auto h = exact_heavy_hitters(from_counts({{a, 60}, {b, 30}, {c, 10}}), 4);
    const auto m = compute_metrics(report({{a, 60}, {b, 30}}), h);
    EXPECT_EQ(m.recall, 1.0);
    EXPECT_EQ(m.precision, 1.0);
    EXPECT_EQ(m.are, 0.0);
    EXPECT_EQ(m.released_count, 2u);
}

TEST(Metrics, PartialRecall) {
    const auto h = exact_heavy_hitters(from_counts({{a, 60}, {b, 30}, {c, 10}}), 4);
    const auto m = compute_metrics(report({{a, 60}}), h);
    EXPECT_EQ(m.recall, 0.5);
    EXPECT_EQ(m.precision, 1.0);
    EXPECT_EQ(m.are, 0.0);
}

TEST(Metrics, RelativeError) {
    const auto h = exact_heavy_hitters(from_counts({{a, 50}, {b, 10}}), 2);
    const auto m = compute_metrics(report({{a, 55}}), h);
    EXPECT_DOUBLE_EQ(m.are, 0.1);
}

TEST(Metrics, FalsePositivesOnlyAffectPrecision) {
    const auto h = exact_heavy_hitters(from_counts({{a, 50}, {b, 10}}), 2);
    const auto m = compute_metrics(report({{a, 45}, {b, 1000}}), h);
    EXPECT_EQ(m.precision, 0.5);
    EXPECT_EQ(m.true_positives, 1u);
    EXPECT_DOUBLE_EQ(m.are, 0.1);
}

TEST(Metrics, EmptySets) {
    const auto h = exact_heavy_hitters(from_counts({{a, 1}, {b, 1}}), 1);
    const auto m = compute_metrics(report({}), h);
    EXPECT_EQ(m.recall, 1.0);
    EXPECT_EQ(m.precision, 1.0);
    const auto none = compute_metrics(report({{c, 3}}), h);
    EXPECT_EQ(none.precision, 0.0);
    EXPECT_EQ(none.recall, 1.0);
}

}  // namespace
}  // namespace dphh
