#pragma once

#include <cstddef>
#include <cstdint>

#include "dphh/detail/count_groups.hpp"
#include "dphh/summary.hpp"
#include "dphh/types.hpp"

namespace dphh {

/// MisraGries with up to `capacity` tracked labels: increment if tracked,
/// insert while there is room, otherwise decrement every counter and drop the
/// ones that reach zero (the arriving label is not inserted).
///
/// Counters are stored as raw values above a shared floor, so the
/// decrement-all step is a floor bump plus removal of the bottom group:
/// amortised O(1) per update.
class MisraGries {
public:
    explicit MisraGries(std::size_t capacity);

    void update(Label label);

    std::uint64_t estimate(Label label) const noexcept;

    std::size_t capacity() const noexcept { return counters_.capacity(); }
    std::size_t size() const noexcept { return counters_.size(); }
    std::uint64_t processed() const noexcept { return processed_; }

    StreamSummary summary() const;
    std::size_t bytes() const noexcept { return counters_.bytes(); }

private:
    detail::CountGroups counters_;
    std::uint64_t floor_ = 0;
    std::uint64_t processed_ = 0;
};

/// One pass of MisraGries with `k` counters. Throws InvalidParameter if k == 0.
StreamSummary mg_process(StreamView stream, std::size_t k);

}  // namespace dphh
