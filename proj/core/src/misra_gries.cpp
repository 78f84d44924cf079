#include "dphh/misra_gries.hpp"

#include "dphh/errors.hpp"

namespace dphh {

namespace {

std::size_t checked_capacity(std::size_t k) {
    if (k == 0) throw InvalidParameter("MisraGries capacity must be at least 1");
    return k;
}

}  // namespace

MisraGries::MisraGries(std::size_t capacity) : counters_(checked_capacity(capacity)) {}

void MisraGries::update(Label label) {
    const std::uint64_t t = ++processed_;
    using detail::CountGroups;
    if (const CountGroups::Index e = counters_.find(label); e != CountGroups::npos) {
        counters_.increment(e, t);
        return;
    }
    if (!counters_.full()) {
        counters_.insert_min(label, floor_ + 1, t);
        return;
    }
    // Decrement all: raise the floor and evict the group that reaches it.
    ++floor_;
    const CountGroups::Index g = counters_.min_group();
    if (counters_.group(g).value == floor_) {
        while (counters_.min_group() == g && counters_.group(g).head != CountGroups::npos) {
            counters_.erase(counters_.group(g).head);
        }
    }
}

std::uint64_t MisraGries::estimate(Label label) const noexcept {
    const auto e = counters_.find(label);
    return e == detail::CountGroups::npos ? 0 : counters_.entry(e).value - floor_;
}

StreamSummary MisraGries::summary() const {
    StreamSummary s;
    s.capacity = counters_.capacity();
    s.processed = processed_;
    counters_.for_each([&](const detail::CountGroups::Entry& e) {
        s.counters.push_back(Counter{e.label, e.value - floor_, e.last_seen});
    });
    s.normalize();
    return s;
}

StreamSummary mg_process(StreamView stream, std::size_t k) {
    MisraGries mg(k);
    for (Label x : stream) mg.update(x);
    return mg.summary();
}

}  // namespace dphh
