#include "dphh/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dphh/errors.hpp"

namespace dphh {

FrequencyMap exact_frequencies(StreamView stream) {
    FrequencyMap f;
    for (Label x : stream) ++f[x];
    return f;
}

bool HeavyHitters::contains(Label label) const noexcept {
    return std::binary_search(labels.begin(), labels.end(), label);
}

HeavyHitters exact_heavy_hitters(StreamView stream, std::size_t k) {
    if (k == 0) throw InvalidParameter("k must be at least 1");
    HeavyHitters hh;
    hh.frequencies = exact_frequencies(stream);
    hh.stream_length = stream.size();
    hh.threshold = static_cast<double>(stream.size()) / static_cast<double>(k);
    for (const auto& [label, f] : hh.frequencies) {
        if (static_cast<double>(f) > hh.threshold) hh.labels.push_back(label);
    }
    std::sort(hh.labels.begin(), hh.labels.end());
    return hh;
}

Metrics compute_metrics(const ReleaseReport& released, const HeavyHitters& exact) {
    Metrics m;
    m.released_count = released.size();
    double error_sum = 0.0;
    for (const ReleasedLabel& r : released.released) {
        if (!exact.contains(r.label)) continue;
        ++m.true_positives;
        const double f = static_cast<double>(exact.frequencies.at(r.label));
        error_sum += std::abs(r.count - f) / f;
    }
    if (!exact.labels.empty()) {
        m.recall = static_cast<double>(m.true_positives) / static_cast<double>(exact.labels.size());
    }
    if (m.released_count > 0) {
        m.precision = static_cast<double>(m.true_positives) / static_cast<double>(m.released_count);
    }
    if (m.true_positives > 0) m.are = error_sum / static_cast<double>(m.true_positives);
    return m;
}

}  // namespace dphh
