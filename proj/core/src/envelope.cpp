#include "dphh/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dphh/errors.hpp"

namespace dphh {

namespace {

void check_common(std::size_t k, std::uint64_t stream_length, double epsilon, double delta) {
    if (k < 1) throw InvalidParameter("k must be at least 1");
    if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
    (void)stream_length;
}

double per_query_failure(std::uint64_t stream_length, double delta) {
    return delta / (2.0 * static_cast<double>(std::max<std::uint64_t>(stream_length, 1)));
}

}  // namespace

ErrorEnvelope zero_envelope() { return constant_envelope(0.0, 0.0); }

ErrorEnvelope constant_envelope(double upper, double lower, double failure_prob) {
    if (!(upper >= lower)) throw InvalidEnvelope("envelope upper bound below lower bound");
    return {[upper](double) { return upper; }, [lower](double) { return lower; }, failure_prob};
}

void require_monotone(const ErrorEnvelope& envelope, double horizon) {
    if (!envelope.gamma1 || !envelope.gamma2) throw InvalidEnvelope("envelope function missing");
    constexpr int kPoints = 100;
    double prev1 = 0.0;
    double prev2 = 0.0;
    for (int j = 0; j < kPoints; ++j) {
        const double t = horizon * j / (kPoints - 1);
        const double g1 = envelope.gamma1(t);
        const double g2 = envelope.gamma2(t);
        if (!std::isfinite(g1) || !std::isfinite(g2)) {
            throw InvalidEnvelope("envelope not finite at t=" + std::to_string(t));
        }
        if (g1 < g2) throw InvalidEnvelope("gamma1 < gamma2 at t=" + std::to_string(t));
        if (j > 0 && (g1 < prev1 || g2 < prev2)) {
            throw InvalidEnvelope("envelope decreases at t=" + std::to_string(t));
        }
        prev1 = g1;
        prev2 = g2;
    }
}

std::size_t envelope_depth(std::uint64_t stream_length, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
    const double T = static_cast<double>(std::max<std::uint64_t>(stream_length, 1));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(2.0 * T / delta))));
}

double sketch_noise_margin(std::size_t depth, std::size_t k, double epsilon, double delta) {
    const double d = static_cast<double>(depth);
    return (2.0 * d / epsilon) * std::log(4.0 * static_cast<double>(k) * d / delta);
}

ErrorEnvelope cms_envelope(std::size_t k, std::uint64_t stream_length, double epsilon,
                           double delta) {
    check_common(k, stream_length, epsilon, delta);
    const std::size_t d = envelope_depth(stream_length, delta);
    const double psi = sketch_noise_margin(d, k, epsilon, delta);
    const double kd = static_cast<double>(k);
    return {[kd, psi](double t) { return t / kd + psi; }, [psi](double) { return -psi; },
            per_query_failure(stream_length, delta)};
}

ErrorEnvelope cs_envelope(std::size_t k, std::uint64_t stream_length, double epsilon,
                          double delta, double f2_upper) {
    check_common(k, stream_length, epsilon, delta);
    if (!(f2_upper >= 0.0)) throw InvalidParameter("F2 bound must be non-negative");
    const std::size_t d = envelope_depth(stream_length, delta);
    const double psi = sketch_noise_margin(d, k, epsilon, delta);
    const double eta = std::sqrt(3.0 / (2.0 * static_cast<double>(k)));
    const double lower = -(eta * std::sqrt(f2_upper) + psi);
    return {[eta, psi, f2_upper](double t) {
                return eta * std::sqrt(std::min(t * t, f2_upper)) + psi;
            },
            [lower](double) { return lower; }, per_query_failure(stream_length, delta)};
}

}  // namespace dphh
