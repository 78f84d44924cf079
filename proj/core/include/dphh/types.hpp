#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dphh {

/// Opaque stream label. String inputs are mapped to tokens at ingestion.
using Label = std::uint64_t;

/// A stream is a sequence of labels; the position of an item is its 1-based
/// index in the sequence.
using Stream = std::vector<Label>;
using StreamView = std::span<const Label>;

}  // namespace dphh
