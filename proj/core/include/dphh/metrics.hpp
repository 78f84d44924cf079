#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "dphh/release.hpp"
#include "dphh/types.hpp"

namespace dphh {

using FrequencyMap = absl::flat_hash_map<Label, std::uint64_t>;

FrequencyMap exact_frequencies(StreamView stream);

/// Exact baseline: labels with f > T/k (strict), sorted, plus all frequencies.
struct HeavyHitters {
    std::vector<Label> labels;
    FrequencyMap frequencies;
    double threshold = 0.0;
    std::uint64_t stream_length = 0;

    bool contains(Label label) const noexcept;
};

/// Throws InvalidParameter if k == 0.
HeavyHitters exact_heavy_hitters(StreamView stream, std::size_t k);

struct Metrics {
    double recall = 1.0;     // |released n true| / |true|, 1 when true is empty
    double precision = 1.0;  // |released n true| / |released|, 1 when released is empty
    double are = 0.0;        // mean |count - f| / f over released true positives
    std::size_t released_count = 0;
    std::size_t true_positives = 0;
};

Metrics compute_metrics(const ReleaseReport& released, const HeavyHitters& exact);

}  // namespace dphh
