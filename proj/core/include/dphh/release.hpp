#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "dphh/laplace.hpp"
#include "dphh/privacy.hpp"
#include "dphh/summary.hpp"
#include "dphh/types.hpp"

namespace dphh {

enum class Mechanism { dpss, dpmg, eehh_cms, eehh_cs };

std::string_view to_string(Mechanism m) noexcept;

struct ReleasedLabel {
    Label label = 0;
    double count = 0.0;

    friend bool operator==(const ReleasedLabel&, const ReleasedLabel&) = default;
};

/// Final DP output: released labels (sorted by label) with their noisy counts,
/// plus the threshold they cleared. Counts are left unrounded.
struct ReleaseReport {
    std::vector<ReleasedLabel> released;
    double threshold = 0.0;
    std::uint64_t stream_length = 0;
    Mechanism mechanism = Mechanism::dpss;

    bool contains(Label label) const noexcept;
    const ReleasedLabel* find(Label label) const noexcept;
    std::size_t size() const noexcept { return released.size(); }

    friend bool operator==(const ReleaseReport&, const ReleaseReport&) = default;
};

/// DP SpaceSaving: SpaceSaving with k_tilde counters, independent
/// Laplace(1/epsilon) noise on every tracked count, release of the labels
/// whose noisy count exceeds dpss_threshold.
ReleaseReport dpss_release(StreamView stream, const PrivacyParams& params, NoiseSource& noise);

/// Release step alone, applied to a finished SpaceSaving summary. The summary
/// must have been built with params.k_tilde() counters.
ReleaseReport dpss_release(const StreamSummary& summary, const PrivacyParams& params,
                           NoiseSource& noise);

/// DP MisraGries baseline: MisraGries with k_tilde counters, one shared
/// Laplace(1/epsilon) draw added to every counter plus an independent
/// Laplace(1/epsilon) per counter, thresholded at dpmg_threshold.
ReleaseReport dpmg_release(StreamView stream, const PrivacyParams& params, NoiseSource& noise);
ReleaseReport dpmg_release(const StreamSummary& summary, const PrivacyParams& params,
                           NoiseSource& noise);

}  // namespace dphh
