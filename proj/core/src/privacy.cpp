#include "dphh/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dphh/errors.hpp"

namespace dphh {

PrivacyParams::PrivacyParams(double epsilon, double delta, std::size_t k, std::size_t k_tilde)
    : epsilon_(epsilon), delta_(delta), k_(k), k_tilde_(k_tilde) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidParameter("epsilon must be positive, got " + std::to_string(epsilon));
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InvalidParameter("delta must lie in (0, 1), got " + std::to_string(delta));
    }
    if (k < 1) throw InvalidParameter("k must be at least 1");
    if (k_tilde <= k) {
        throw InvalidParameter("k_tilde must exceed k (k=" + std::to_string(k) +
                               ", k_tilde=" + std::to_string(k_tilde) + ")");
    }
}

PrivacyParams PrivacyParams::with_default_expansion(double epsilon, double delta,
                                                    std::size_t k) {
    return PrivacyParams(epsilon, delta, k, 2 * k);
}

double PrivacyParams::gamma() const noexcept { return compute_gamma(epsilon_, delta_); }

double compute_gamma(double epsilon, double delta) noexcept {
    return std::log(2.0 / delta) / epsilon;
}

double dpss_threshold(std::uint64_t stream_length, const PrivacyParams& params) noexcept {
    const double T = static_cast<double>(stream_length);
    return std::max(T / static_cast<double>(params.k()),
                    T / static_cast<double>(params.k_tilde()) + 1.0 + params.gamma());
}

double dpmg_threshold(std::uint64_t stream_length, const PrivacyParams& params) noexcept {
    const double T = static_cast<double>(stream_length);
    return std::max(T / static_cast<double>(params.k()), 1.0 + 2.0 * params.gamma());
}

std::size_t capacity_for_recall(std::uint64_t stream_length, std::size_t k, double epsilon,
                                double delta) {
    if (k < 1) throw InvalidParameter("k must be at least 1");
    if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
    if (!(delta > 0.0 && delta <= 2.0)) throw InvalidParameter("delta must lie in (0, 2]");

    const double T = static_cast<double>(stream_length);
    const double kd = static_cast<double>(k);
    const double gamma = compute_gamma(epsilon, delta);
    const double margin = T / kd - (1.0 + gamma);
    if (!(margin > 0.0)) {
        throw InfeasibleCapacity("no k_tilde satisfies T/k_tilde + 1 + gamma <= T/k (T/k = " +
                                 std::to_string(T / kd) +
                                 ", 1 + gamma = " + std::to_string(1.0 + gamma) + ")");
    }

    const auto fits = [&](std::size_t kt) {
        return T / static_cast<double>(kt) + 1.0 + gamma <= T / kd;
    };
    auto kt = static_cast<std::size_t>(std::ceil(T / margin));
    // Settle rounding in the division against the defining inequality.
    while (kt > 1 && fits(kt - 1)) --kt;
    while (!fits(kt)) ++kt;
    return std::max(kt, k + 1);
}

}  // namespace dphh
