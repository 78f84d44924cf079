#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "dphh/types.hpp"

namespace dphh::detail {

// Fixed-capacity pool of (label, value) counters organised as an ascending
// doubly linked list of groups, one group per distinct value. Members of a
// group are kept in the order they joined it, so a group's tail is the member
// that joined most recently.
//
// For SpaceSaving a label only ever joins a group on its own arrival, which
// makes the tail of the minimum group the most recently arrived minimum-count
// label (the eviction register) in O(1).
class CountGroups {
public:
    using Index = std::uint32_t;
    static constexpr Index npos = ~Index{0};

    struct Entry {
        Label label = 0;
        std::uint64_t value = 0;
        std::uint64_t last_seen = 0;
        Index prev = npos;
        Index next = npos;
        Index group = npos;
    };

    struct Group {
        std::uint64_t value = 0;
        Index head = npos;
        Index tail = npos;
        Index prev = npos;
        Index next = npos;
    };

    // Below this capacity labels are located by scanning the live entries;
    // above it a hash index is maintained.
    static constexpr std::size_t kLinearScanLimit = 16;

    explicit CountGroups(std::size_t capacity) : capacity_(capacity) {
        entries_.reserve(capacity);
        // An increment can create the target group before its old group is freed.
        groups_.reserve(capacity + 1);
        free_groups_.reserve(capacity + 1);
        if (uses_index()) {
            index_.reserve(capacity);
            index_buckets_ = index_.bucket_count();
        }
    }

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return size_; }
    bool full() const noexcept { return size_ == capacity_; }

    const Entry& entry(Index e) const noexcept { return entries_[e]; }
    const Group& group(Index g) const noexcept { return groups_[g]; }
    Index min_group() const noexcept { return head_; }

    Index find(Label label) const noexcept {
        if (uses_index()) {
            auto it = index_.find(label);
            return it == index_.end() ? npos : it->second;
        }
        for (Index e = 0; e < entries_.size(); ++e) {
            if (entries_[e].group != npos && entries_[e].label == label) return e;
        }
        return npos;
    }

    // Adds a counter whose value does not exceed the current minimum.
    Index insert_min(Label label, std::uint64_t value, std::uint64_t position) {
        assert(size_ < capacity_);
        assert(head_ == npos || value <= groups_[head_].value);
        Index e;
        if (!free_entries_.empty()) {
            e = free_entries_.back();
            free_entries_.pop_back();
        } else {
            e = static_cast<Index>(entries_.size());
            entries_.emplace_back();
        }
        Entry& en = entries_[e];
        en.label = label;
        en.value = value;
        en.last_seen = position;
        Index g = head_;
        if (g == npos || groups_[g].value != value) g = new_group_before(head_, value);
        append(e, g);
        if (uses_index()) index_.emplace(label, e);
        ++size_;
        return e;
    }

    // value += 1; the entry becomes the tail of its new group.
    void increment(Index e, std::uint64_t position) {
        Entry& en = entries_[e];
        const Index g = en.group;
        const std::uint64_t target_value = en.value + 1;
        Index target = groups_[g].next;
        if (target == npos || groups_[target].value != target_value) {
            target = new_group_after(g, target_value);
        }
        detach(e);
        en.value = target_value;
        en.last_seen = position;
        append(e, target);
    }

    // Replaces the label held by entry `e` in place (value and group kept).
    void relabel(Index e, Label label) {
        Entry& en = entries_[e];
        if (uses_index()) {
            index_.erase(en.label);
            index_.emplace(label, e);
        }
        en.label = label;
    }

    void erase(Index e) {
        Entry& en = entries_[e];
        if (uses_index()) index_.erase(en.label);
        detach(e);
        en.group = npos;
        free_entries_.push_back(e);
        --size_;
    }

    template <typename F>
    void for_each(F&& fn) const {
        for (Index g = head_; g != npos; g = groups_[g].next) {
            for (Index e = groups_[g].head; e != npos; e = entries_[e].next) fn(entries_[e]);
        }
    }

    std::size_t bytes() const noexcept {
        std::size_t b = sizeof(*this);
        b += entries_.capacity() * sizeof(Entry);
        b += groups_.capacity() * sizeof(Group);
        b += (free_entries_.capacity() + free_groups_.capacity()) * sizeof(Index);
        // flat_hash_map: one slot plus one control byte per bucket. Erasures
        // leave tombstones, and whether a later insert rehashes depends on the
        // table's address, so the size reserved up front is reported.
        b += index_buckets_ * (sizeof(std::pair<Label, Index>) + 1);
        return b;
    }

private:
    bool uses_index() const noexcept { return capacity_ > kLinearScanLimit; }

    Index allocate_group(std::uint64_t value) {
        Index g;
        if (!free_groups_.empty()) {
            g = free_groups_.back();
            free_groups_.pop_back();
            groups_[g] = Group{};
        } else {
            g = static_cast<Index>(groups_.size());
            groups_.emplace_back();
        }
        groups_[g].value = value;
        return g;
    }

    Index new_group_after(Index after, std::uint64_t value) {
        const Index g = allocate_group(value);
        Group& ng = groups_[g];
        ng.prev = after;
        ng.next = groups_[after].next;
        if (ng.next != npos) groups_[ng.next].prev = g;
        groups_[after].next = g;
        return g;
    }

    Index new_group_before(Index before, std::uint64_t value) {
        const Index g = allocate_group(value);
        Group& ng = groups_[g];
        ng.next = before;
        ng.prev = before == npos ? npos : groups_[before].prev;
        if (before != npos) groups_[before].prev = g;
        if (ng.prev != npos) {
            groups_[ng.prev].next = g;
        } else {
            head_ = g;
        }
        return g;
    }

    void append(Index e, Index g) {
        Entry& en = entries_[e];
        Group& gr = groups_[g];
        en.group = g;
        en.next = npos;
        en.prev = gr.tail;
        if (gr.tail != npos) {
            entries_[gr.tail].next = e;
        } else {
            gr.head = e;
        }
        gr.tail = e;
    }

    // Unlinks `e` from its group and drops the group if it empties.
    void detach(Index e) {
        Entry& en = entries_[e];
        Group& gr = groups_[en.group];
        if (en.prev != npos) {
            entries_[en.prev].next = en.next;
        } else {
            gr.head = en.next;
        }
        if (en.next != npos) {
            entries_[en.next].prev = en.prev;
        } else {
            gr.tail = en.prev;
        }
        en.prev = en.next = npos;
        if (gr.head == npos) {
            const Index g = en.group;
            if (gr.prev != npos) {
                groups_[gr.prev].next = gr.next;
            } else {
                head_ = gr.next;
            }
            if (gr.next != npos) groups_[gr.next].prev = gr.prev;
            free_groups_.push_back(g);
        }
    }

    std::size_t capacity_;
    std::size_t size_ = 0;
    Index head_ = npos;
    std::vector<Entry> entries_;
    std::vector<Index> free_entries_;
    std::vector<Group> groups_;
    std::vector<Index> free_groups_;
    absl::flat_hash_map<Label, Index> index_;
    std::size_t index_buckets_ = 0;
};

}  // namespace dphh::detail
