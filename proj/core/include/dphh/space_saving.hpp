#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "dphh/detail/count_groups.hpp"
#include "dphh/summary.hpp"
#include "dphh/types.hpp"

namespace dphh {

/// SpaceSaving with deterministic eviction: on overflow the label evicted is
/// the most recently arrived among the minimum-count labels. O(1) update.
///
/// Single writer. Copyable, so a run can be forked (the neighbor-state
/// verifier relies on this).
class SpaceSaving {
public:
    explicit SpaceSaving(std::size_t capacity);

    void update(Label label);

    /// Consumes one stream position without an update (a removed item).
    /// Keeps positions aligned with a neighboring run.
    void skip() noexcept { ++position_; }

    std::uint64_t estimate(Label label) const noexcept;
    bool contains(Label label) const noexcept {
        return counters_.find(label) != detail::CountGroups::npos;
    }

    /// Label the next overflow would evict; nullopt while the table has room.
    std::optional<Label> eviction_register() const noexcept;

    std::size_t capacity() const noexcept { return counters_.capacity(); }
    std::size_t size() const noexcept { return counters_.size(); }
    std::uint64_t processed() const noexcept { return processed_; }
    std::uint64_t position() const noexcept { return position_; }

    /// Calls fn(label, count, last_seen) for every tracked counter, in
    /// ascending count order. No allocation.
    template <typename F>
    void for_each_counter(F&& fn) const {
        counters_.for_each([&](const detail::CountGroups::Entry& e) {
            fn(e.label, e.value, e.last_seen);
        });
    }

    StreamSummary summary() const;
    /// Writes the snapshot into `out`, reusing its storage.
    void snapshot_into(StreamSummary& out) const;

    /// Owned bytes, computed from the structure's allocations.
    std::size_t bytes() const noexcept { return counters_.bytes(); }

private:
    detail::CountGroups counters_;
    std::uint64_t processed_ = 0;
    std::uint64_t position_ = 0;
};

/// One pass of SpaceSaving with `k` counters. Throws InvalidParameter if k == 0.
StreamSummary ss_process(StreamView stream, std::size_t k);

/// C[label] if tracked, else 0.
std::uint64_t ss_estimate(const StreamSummary& summary, Label label) noexcept;

}  // namespace dphh
