#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace dphh {

/// SplitMix64 step; used to derive independent child seeds from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Child seed number `index` of `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

/// Seeded source of uniform and Laplace draws. The same seed always yields the
/// same sequence of draws. One source per release; not shared across threads.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform on the open interval (0, 1): midpoints of a 2^-52 grid, so
    /// neither endpoint is reachable.
    double uniform_open() noexcept {
        return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
    }

    /// One Laplace(scale) draw. `scale` must be positive (unchecked here; see
    /// sample_laplace).
    double laplace(double scale) noexcept;

#if defined(DPHH_TEST_HOOKS)
    /// Test hook: every Laplace draw returns `value` (0 gives the zero-noise
    /// hook). Only present in builds configured with DPHH_TEST_HOOKS.
    static NoiseSource forced_for_testing(double value) {
        NoiseSource n(0);
        n.forced_ = value;
        return n;
    }
#endif

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::optional<double> forced_;
};

/// Inverse CDF of Laplace(scale) at u in (0, 1):
/// -scale * sign(u - 1/2) * ln(1 - 2|u - 1/2|).
double laplace_inverse_cdf(double u, double scale) noexcept;

/// One Laplace(scale) draw from `noise`. Throws InvalidParameter if scale <= 0.
double sample_laplace(double scale, NoiseSource& noise);

}  // namespace dphh
