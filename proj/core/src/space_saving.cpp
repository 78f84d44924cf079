#include "dphh/space_saving.hpp"

#include "dphh/errors.hpp"

namespace dphh {

namespace {

std::size_t checked_capacity(std::size_t k) {
    if (k == 0) throw InvalidParameter("SpaceSaving capacity must be at least 1");
    return k;
}

}  // namespace

SpaceSaving::SpaceSaving(std::size_t capacity) : counters_(checked_capacity(capacity)) {}

void SpaceSaving::update(Label label) {
    const std::uint64_t t = ++position_;
    ++processed_;
    using detail::CountGroups;
    if (const CountGroups::Index e = counters_.find(label); e != CountGroups::npos) {
        counters_.increment(e, t);
        return;
    }
    if (!counters_.full()) {
        counters_.insert_min(label, 1, t);
        return;
    }
    // Tail of the minimum group: most recent arrival among the minimum counts.
    const CountGroups::Index victim = counters_.group(counters_.min_group()).tail;
    counters_.relabel(victim, label);
    counters_.increment(victim, t);
}

std::uint64_t SpaceSaving::estimate(Label label) const noexcept {
    const auto e = counters_.find(label);
    return e == detail::CountGroups::npos ? 0 : counters_.entry(e).value;
}

std::optional<Label> SpaceSaving::eviction_register() const noexcept {
    if (!counters_.full()) return std::nullopt;
    return counters_.entry(counters_.group(counters_.min_group()).tail).label;
}

void SpaceSaving::snapshot_into(StreamSummary& out) const {
    out.counters.clear();
    out.capacity = counters_.capacity();
    out.processed = processed_;
    counters_.for_each([&](const detail::CountGroups::Entry& e) {
        out.counters.push_back(Counter{e.label, e.value, e.last_seen});
    });
    out.normalize();
}

StreamSummary SpaceSaving::summary() const {
    StreamSummary s;
    snapshot_into(s);
    return s;
}

StreamSummary ss_process(StreamView stream, std::size_t k) {
    SpaceSaving ss(k);
    for (Label x : stream) ss.update(x);
    return ss.summary();
}

std::uint64_t ss_estimate(const StreamSummary& summary, Label label) noexcept {
    return summary.count_of(label);
}

}  // namespace dphh
