#include <gtest/gtest.h>

#include <cmath>

#include "dphh/errors.hpp"
#include "dphh/laplace.hpp"

namespace dphh {
namespace {

TEST(Laplace, InverseCdfPoints) {
    EXPECT_EQ(laplace_inverse_cdf(0.5, 3.0), 0.0);
    EXPECT_NEAR(laplace_inverse_cdf(0.75, 1.0), std::log(2.0), 1e-15);
    EXPECT_NEAR(laplace_inverse_cdf(0.25, 1.0), -std::log(2.0), 1e-15);
    // Pr[Z <= x] = 1 - e^{-x/b}/2 for x >= 0.
    const double x = laplace_inverse_cdf(0.99, 2.0);
    EXPECT_NEAR(1.0 - 0.5 * std::exp(-x / 2.0), 0.99, 1e-12);
}

TEST(Laplace, UniformStaysInsideOpenInterval) {
    NoiseSource n(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = n.uniform_open();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    // Extremes of the grid still give finite draws.
    EXPECT_TRUE(std::isfinite(laplace_inverse_cdf(0x1.0p-53, 1.0)));
    EXPECT_TRUE(std::isfinite(laplace_inverse_cdf(1.0 - 0x1.0p-53, 1.0)));
}

TEST(Laplace, RejectsNonPositiveScale) {
    NoiseSource n(1);
    EXPECT_THROW(sample_laplace(0.0, n), InvalidParameter);
    EXPECT_THROW(sample_laplace(-1.0, n), InvalidParameter);
    EXPECT_THROW(sample_laplace(std::nan(""), n), InvalidParameter);
}

TEST(Laplace, SameSeedSameSequence) {
    NoiseSource x(42), y(42), z(43);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double u = sample_laplace(1.5, x);
        ASSERT_EQ(u, sample_laplace(1.5, y));
        differs |= u != sample_laplace(1.5, z);
    }
    EXPECT_TRUE(differs);
}

TEST(Laplace, ForcedHook) {
    auto n = NoiseSource::forced_for_testing(0.0);
    EXPECT_EQ(sample_laplace(5.0, n), 0.0);
    auto m = NoiseSource::forced_for_testing(2.0);
    EXPECT_EQ(sample_laplace(5.0, m), 2.0);
}

TEST(Laplace, MomentsMatch) {
    NoiseSource n(2024);
    const double scale = 10.0;
    const int draws = 1'000'000;
    double sum = 0, sq = 0;
    for (int i = 0; i < draws; ++i) {
        const double z = sample_laplace(scale, n);
        sum += z;
        sq += z * z;
    }
    const double mean = sum / draws;
    const double var = sq / draws - mean * mean;
    EXPECT_LT(std::abs(mean), 0.01 * scale);
    EXPECT_NEAR(var / (2 * scale * scale), 1.0, 0.01);
}

TEST(Laplace, TailMatchesFormula) {
    NoiseSource n(99);
    const double scale = 10.0;
    const double gamma = 76.009;
    const int draws = 1'000'000;
    int hits = 0;
    for (int i = 0; i < draws; ++i) hits += sample_laplace(scale, n) >= gamma;
    const double p = 0.5 * std::exp(-gamma / scale);
    const double sigma = std::sqrt(p * (1 - p) / draws);
    EXPECT_NEAR(static_cast<double>(hits) / draws, p, 3 * sigma);
}

TEST(Laplace, DerivedSeedsDiffer) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

}  // namespace
}  // namespace dphh
