#include "dphh/release.hpp"

#include <algorithm>
#include <string>

#include "dphh/errors.hpp"
#include "dphh/misra_gries.hpp"
#include "dphh/space_saving.hpp"

namespace dphh {

std::string_view to_string(Mechanism m) noexcept {
    switch (m) {
        case Mechanism::dpss: return "dpss";
        case Mechanism::dpmg: return "dpmg";
        case Mechanism::eehh_cms: return "eehh-cms";
        case Mechanism::eehh_cs: return "eehh-cs";
    }
    return "unknown";
}

const ReleasedLabel* ReleaseReport::find(Label label) const noexcept {
    auto it = std::lower_bound(released.begin(), released.end(), label,
                               [](const ReleasedLabel& r, Label l) { return r.label < l; });
    if (it == released.end() || it->label != label) return nullptr;
    return &*it;
}

bool ReleaseReport::contains(Label label) const noexcept { return find(label) != nullptr; }

namespace {

void require_capacity(const StreamSummary& summary, const PrivacyParams& params) {
    if (summary.capacity != params.k_tilde()) {
        throw InvalidParameter("summary capacity " + std::to_string(summary.capacity) +
                               " does not match k_tilde " + std::to_string(params.k_tilde()));
    }
}

}  // namespace

ReleaseReport dpss_release(const StreamSummary& summary, const PrivacyParams& params,
                           NoiseSource& noise) {
    require_capacity(summary, params);
    ReleaseReport report;
    report.mechanism = Mechanism::dpss;
    report.stream_length = summary.processed;
    report.threshold = dpss_threshold(summary.processed, params);
    const double scale = 1.0 / params.epsilon();
    // Counters are in label order, so the draw order is fixed for a given seed.
    for (const Counter& c : summary.counters) {
        const double noisy = static_cast<double>(c.count) + sample_laplace(scale, noise);
        if (noisy > report.threshold) report.released.push_back({c.label, noisy});
    }
    return report;
}

ReleaseReport dpss_release(StreamView stream, const PrivacyParams& params, NoiseSource& noise) {
    return dpss_release(ss_process(stream, params.k_tilde()), params, noise);
}

ReleaseReport dpmg_release(const StreamSummary& summary, const PrivacyParams& params,
                           NoiseSource& noise) {
    require_capacity(summary, params);
    ReleaseReport report;
    report.mechanism = Mechanism::dpmg;
    report.stream_length = summary.processed;
    report.threshold = dpmg_threshold(summary.processed, params);
    const double scale = 1.0 / params.epsilon();
    const double shared = sample_laplace(scale, noise);
    for (const Counter& c : summary.counters) {
        const double noisy =
            static_cast<double>(c.count) + shared + sample_laplace(scale, noise);
        if (noisy > report.threshold) report.released.push_back({c.label, noisy});
    }
    return report;
}

ReleaseReport dpmg_release(StreamView stream, const PrivacyParams& params, NoiseSource& noise) {
    return dpmg_release(mg_process(stream, params.k_tilde()), params, noise);
}

}  // namespace dphh
