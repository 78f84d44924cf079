#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "dphh/oracle.hpp"
#include "dphh/types.hpp"

namespace dphh {

struct Candidate {
    Label label = 0;
    double estimate = 0.0;       // oracle estimate at the last refresh
    std::uint64_t refreshed = 0;  // position of the last refresh

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Snapshot of the tracked candidate set, sorted by label.
struct TrackedCandidates {
    std::vector<Candidate> tracked;
    std::size_t capacity = 0;

    std::size_t size() const noexcept { return tracked.size(); }
    const Candidate* find(Label label) const noexcept;
    bool contains(Label label) const noexcept { return find(label) != nullptr; }
};

/// Top-k_tilde candidate tracking over oracle estimates. A tracked arrival
/// refreshes its estimate; a new label is inserted while there is room, and
/// otherwise replaces the minimum-estimate candidate only if its estimate is
/// strictly larger. Among equal minimum estimates the candidate refreshed
/// longest ago is replaced. O(log k_tilde) per arrival.
class TopKTracker {
public:
    explicit TopKTracker(std::size_t capacity);

    void observe(Label label, double estimate);

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return by_label_.size(); }
    std::uint64_t position() const noexcept { return position_; }

    TrackedCandidates candidates() const;

    /// Analytic footprint: tree nodes plus hash slots.
    std::size_t bytes() const noexcept;

private:
    using Key = std::tuple<double, std::uint64_t, Label>;  // (estimate, refreshed, label)

    std::size_t capacity_;
    std::uint64_t position_ = 0;
    std::set<Key> order_;
    absl::flat_hash_map<Label, Key> by_label_;
    std::size_t reserved_buckets_ = 0;  // bucket count after the up-front reserve
};

/// Feeds every arrival to `oracle` and tracks the top k_tilde candidates by
/// the returned estimates. Throws InvalidParameter if k_tilde == 0.
TrackedCandidates topk_track(FrequencyOracle& oracle, StreamView stream, std::size_t k_tilde);

}  // namespace dphh
