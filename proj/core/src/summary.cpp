#include "dphh/summary.hpp"

#include <algorithm>

namespace dphh {

const Counter* StreamSummary::find(Label label) const noexcept {
    auto it = std::lower_bound(counters.begin(), counters.end(), label,
                               [](const Counter& c, Label l) { return c.label < l; });
    if (it == counters.end() || it->label != label) return nullptr;
    return &*it;
}

std::uint64_t StreamSummary::count_of(Label label) const noexcept {
    const Counter* c = find(label);
    return c ? c->count : 0;
}

std::optional<std::uint64_t> StreamSummary::min_count() const noexcept {
    if (counters.empty()) return std::nullopt;
    std::uint64_t m = counters.front().count;
    for (const Counter& c : counters) m = std::min(m, c.count);
    return m;
}

std::uint64_t StreamSummary::total_count() const noexcept {
    std::uint64_t total = 0;
    for (const Counter& c : counters) total += c.count;
    return total;
}

void StreamSummary::normalize() {
    std::sort(counters.begin(), counters.end(),
              [](const Counter& a, const Counter& b) { return a.label < b.label; });
}

}  // namespace dphh
