#pragma once

#include <cstddef>
#include <cstdint>

#include "dphh/envelope.hpp"
#include "dphh/oracle.hpp"
#include "dphh/release.hpp"
#include "dphh/top_k.hpp"

namespace dphh {

/// How the release threshold combines the envelope.
///
/// `guarded` (default): max(T/k, T/k_tilde + 2 gamma1(T) - gamma2(0) + 1).
/// While the envelope holds, a label tracked in only one of two neighboring
/// runs has frequency at most T/k_tilde + gamma1(T) - gamma2(0) + 1, so its
/// estimates stay at or below this threshold.
///
/// `literal`: max(T/k, T/k_tilde + gamma1(T) + gamma2(T)). Kept for
/// comparison; such a label can exceed it.
enum class ThresholdRule { guarded, literal };

struct EehhOptions {
    ThresholdRule rule = ThresholdRule::guarded;
    Mechanism mechanism = Mechanism::eehh_cms;
};

double eehh_threshold(std::uint64_t stream_length, std::size_t k, std::size_t k_tilde,
                      const ErrorEnvelope& envelope, ThresholdRule rule);

/// Release step over finished candidates: label x is released iff its tracked
/// estimate and a fresh oracle.query(x) both exceed the threshold. The fresh
/// query is the reported count. Throws InvalidEnvelope for a non-monotone
/// envelope and InvalidParameter unless k_tilde > k >= 1 and 0 < delta < 1.
ReleaseReport eehh_release(const TrackedCandidates& candidates, const FrequencyOracle& oracle,
                           std::uint64_t stream_length, std::size_t k, std::size_t k_tilde,
                           const ErrorEnvelope& envelope, double delta,
                           const EehhOptions& options = {});

/// Tracks `stream` through `oracle` with k_tilde candidates, then releases.
ReleaseReport eehh_release(FrequencyOracle& oracle, StreamView stream, std::size_t k,
                           std::size_t k_tilde, const ErrorEnvelope& envelope, double delta,
                           const EehhOptions& options = {});

}  // namespace dphh
