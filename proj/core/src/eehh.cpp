#include "dphh/eehh.hpp"

#include <algorithm>

#include "dphh/errors.hpp"

namespace dphh {

double eehh_threshold(std::uint64_t stream_length, std::size_t k, std::size_t k_tilde,
                      const ErrorEnvelope& envelope, ThresholdRule rule) {
    const double T = static_cast<double>(stream_length);
    const double base = T / static_cast<double>(k_tilde);
    const double margin = rule == ThresholdRule::guarded
                              ? 2.0 * envelope.gamma1(T) - envelope.gamma2(0.0) + 1.0
                              : envelope.gamma1(T) + envelope.gamma2(T);
    return std::max(T / static_cast<double>(k), base + margin);
}

namespace {

void check_params(std::size_t k, std::size_t k_tilde, double delta) {
    if (k < 1) throw InvalidParameter("k must be at least 1");
    if (k_tilde <= k) throw InvalidParameter("k_tilde must exceed k");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
}

}  // namespace

ReleaseReport eehh_release(const TrackedCandidates& candidates, const FrequencyOracle& oracle,
                           std::uint64_t stream_length, std::size_t k, std::size_t k_tilde,
                           const ErrorEnvelope& envelope, double delta,
                           const EehhOptions& options) {
    check_params(k, k_tilde, delta);
    require_monotone(envelope, static_cast<double>(stream_length));
    ReleaseReport report;
    report.mechanism = options.mechanism;
    report.stream_length = stream_length;
    report.threshold = eehh_threshold(stream_length, k, k_tilde, envelope, options.rule);
    for (const Candidate& c : candidates.tracked) {
        if (!(c.estimate > report.threshold)) continue;
        const double fresh = oracle.query(c.label);
        if (fresh > report.threshold) report.released.push_back({c.label, fresh});
    }
    return report;
}

ReleaseReport eehh_release(FrequencyOracle& oracle, StreamView stream, std::size_t k,
                           std::size_t k_tilde, const ErrorEnvelope& envelope, double delta,
                           const EehhOptions& options) {
    check_params(k, k_tilde, delta);
    require_monotone(envelope, static_cast<double>(stream.size()));
    const TrackedCandidates candidates = topk_track(oracle, stream, k_tilde);
    return eehh_release(candidates, oracle, stream.size(), k, k_tilde, envelope, delta, options);
}

}  // namespace dphh
