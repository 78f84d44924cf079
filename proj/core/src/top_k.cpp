#include "dphh/top_k.hpp"

#include <algorithm>

#include "dphh/errors.hpp"

namespace dphh {

const Candidate* TrackedCandidates::find(Label label) const noexcept {
    auto it = std::lower_bound(tracked.begin(), tracked.end(), label,
                               [](const Candidate& c, Label l) { return c.label < l; });
    if (it == tracked.end() || it->label != label) return nullptr;
    return &*it;
}

TopKTracker::TopKTracker(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw InvalidParameter("tracker capacity must be at least 1");
    by_label_.reserve(capacity);
    reserved_buckets_ = by_label_.bucket_count();
}

void TopKTracker::observe(Label label, double estimate) {
    const std::uint64_t t = ++position_;
    const Key fresh{estimate, t, label};
    if (auto it = by_label_.find(label); it != by_label_.end()) {
        order_.erase(it->second);
        it->second = fresh;
        order_.insert(fresh);
        return;
    }
    if (by_label_.size() < capacity_) {
        by_label_.emplace(label, fresh);
        order_.insert(fresh);
        return;
    }
    const auto weakest = order_.begin();
    if (!(estimate > std::get<0>(*weakest))) return;
    by_label_.erase(std::get<2>(*weakest));
    order_.erase(weakest);
    by_label_.emplace(label, fresh);
    order_.insert(fresh);
}

TrackedCandidates TopKTracker::candidates() const {
    TrackedCandidates out;
    out.capacity = capacity_;
    out.tracked.reserve(by_label_.size());
    for (const auto& [label, key] : by_label_) {
        out.tracked.push_back({label, std::get<0>(key), std::get<1>(key)});
    }
    std::sort(out.tracked.begin(), out.tracked.end(),
              [](const Candidate& a, const Candidate& b) { return a.label < b.label; });
    return out;
}

std::size_t TopKTracker::bytes() const noexcept {
    // Red-black tree node: three pointers and a colour word plus the key.
    constexpr std::size_t kNode = 4 * sizeof(void*) + sizeof(Key);
    return sizeof(*this) + order_.size() * kNode +
           reserved_buckets_ * (sizeof(std::pair<Label, Key>) + 1);
}

TrackedCandidates topk_track(FrequencyOracle& oracle, StreamView stream, std::size_t k_tilde) {
    TopKTracker tracker(k_tilde);
    for (Label x : stream) tracker.observe(x, oracle.update(x));
    return tracker.candidates();
}

}  // namespace dphh
