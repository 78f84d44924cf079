#include "dphh/zipf.hpp"

#include <algorithm>
#include <cmath>

#include "dphh/errors.hpp"

namespace dphh {

ZipfGenerator::ZipfGenerator(std::size_t universe, double skew, std::uint64_t seed)
    : skew_(skew), engine_(seed) {
    if (universe == 0) throw InvalidParameter("Zipf universe must be at least 1");
    if (!(skew > 0.0) || !std::isfinite(skew)) {
        throw InvalidParameter("Zipf skew must be positive and finite");
    }
    cdf_.resize(universe);
    double acc = 0.0;
    for (std::size_t r = 0; r < universe; ++r) {
        acc += std::pow(static_cast<double>(r + 1), -skew);
        cdf_[r] = acc;
    }
    for (double& c : cdf_) c /= acc;
    cdf_.back() = 1.0;
}

Label ZipfGenerator::next() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<Label>(it - cdf_.begin()) + 1;
}

double ZipfGenerator::probability(std::size_t rank) const {
    if (rank < 1 || rank > cdf_.size()) throw InvalidParameter("rank outside the universe");
    return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

Stream generate_zipf(std::size_t length, std::size_t universe, double skew, std::uint64_t seed) {
    ZipfGenerator gen(universe, skew, seed);
    Stream out(length);
    for (Label& x : out) x = gen.next();
    return out;
}

double generalized_harmonic(std::size_t n, double s) {
    double acc = 0.0;
    // Smallest terms first for accuracy.
    for (std::size_t r = n; r >= 1; --r) acc += std::pow(static_cast<double>(r), -s);
    return acc;
}

}  // namespace dphh
