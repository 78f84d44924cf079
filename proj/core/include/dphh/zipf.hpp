#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "dphh/types.hpp"

namespace dphh {

/// I.i.d. ranks r in [1, universe] with Pr[r] proportional to r^-skew, drawn
/// by binary search in a precomputed CDF table. The label emitted is the rank.
class ZipfGenerator {
public:
    /// Throws InvalidParameter if universe == 0 or skew is not positive and finite.
    ZipfGenerator(std::size_t universe, double skew, std::uint64_t seed);

    Label next();

    std::size_t universe() const noexcept { return cdf_.size(); }
    double skew() const noexcept { return skew_; }
    /// Pr[rank = r], 1-based.
    double probability(std::size_t rank) const;

private:
    std::vector<double> cdf_;
    double skew_;
    std::mt19937_64 engine_;
};

/// `length` draws from ZipfGenerator(universe, skew, seed).
Stream generate_zipf(std::size_t length, std::size_t universe, double skew, std::uint64_t seed);

/// Generalized harmonic number sum_{r=1}^{n} r^-s.
double generalized_harmonic(std::size_t n, double s);

}  // namespace dphh
