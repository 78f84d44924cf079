#pragma once

#include <cstddef>
#include <cstdint>

namespace dphh {

/// Privacy budget and capacities for a counter-based release.
/// Invariants: epsilon > 0, 0 < delta < 1, k_tilde > k >= 1.
class PrivacyParams {
public:
    PrivacyParams(double epsilon, double delta, std::size_t k, std::size_t k_tilde);

    /// k_tilde = 2k.
    static PrivacyParams with_default_expansion(double epsilon, double delta, std::size_t k);

    double epsilon() const noexcept { return epsilon_; }
    double delta() const noexcept { return delta_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t k_tilde() const noexcept { return k_tilde_; }

    /// Noise margin (1/epsilon) ln(2/delta), recomputed on every call.
    double gamma() const noexcept;

private:
    double epsilon_;
    double delta_;
    std::size_t k_;
    std::size_t k_tilde_;
};

/// (1/epsilon) ln(2/delta).
double compute_gamma(double epsilon, double delta) noexcept;
inline double compute_gamma(const PrivacyParams& p) noexcept { return p.gamma(); }

/// DP SpaceSaving release threshold max(T/k, T/k_tilde + 1 + gamma).
double dpss_threshold(std::uint64_t stream_length, const PrivacyParams& params) noexcept;

/// DP MisraGries release threshold max(T/k, 1 + 2 gamma). Isolated MG labels
/// have count at most 1; the margin covers the shared and per-counter draws.
double dpmg_threshold(std::uint64_t stream_length, const PrivacyParams& params) noexcept;

/// Smallest k_tilde > k with T/k_tilde + 1 + gamma <= T/k.
///
/// Accepts delta in (0, 2] so the gamma = 0 limit can be evaluated. Throws
/// InfeasibleCapacity when T/k <= 1 + gamma and InvalidParameter for
/// non-positive arguments.
std::size_t capacity_for_recall(std::uint64_t stream_length, std::size_t k, double epsilon,
                                double delta);

}  // namespace dphh
