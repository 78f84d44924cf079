#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dphh/types.hpp"

namespace dphh {

/// One tracked (label, count) pair. `last_seen` is the position of the most
/// recent arrival of the label (SpaceSaving); MisraGries leaves it at the
/// position the label was last incremented.
struct Counter {
    Label label = 0;
    std::uint64_t count = 0;
    std::uint64_t last_seen = 0;

    friend bool operator==(const Counter&, const Counter&) = default;
};

/// Immutable snapshot of a counter-based summary: tracked set, counts and
/// recency. Counters are kept sorted by label so snapshots compare by value.
struct StreamSummary {
    std::vector<Counter> counters;
    std::size_t capacity = 0;
    std::uint64_t processed = 0;

    std::size_t size() const noexcept { return counters.size(); }
    bool empty() const noexcept { return counters.empty(); }
    bool contains(Label label) const noexcept { return find(label) != nullptr; }
    const Counter* find(Label label) const noexcept;

    /// Count of `label`, or 0 when it is not tracked.
    std::uint64_t count_of(Label label) const noexcept;

    /// Smallest tracked count; nullopt for an empty summary.
    std::optional<std::uint64_t> min_count() const noexcept;

    std::uint64_t total_count() const noexcept;

    /// Sorts counters by label. Producers call this before handing a snapshot out.
    void normalize();

    friend bool operator==(const StreamSummary&, const StreamSummary&) = default;
};

}  // namespace dphh
