#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dphh/space_saving.hpp"
#include "dphh/summary.hpp"
#include "dphh/types.hpp"

namespace dphh {

/// SpaceSaving outputs on X (left) and on X' = X with position
/// `removal_index` replaced by a no-op (right), both after `time` positions.
struct StatePair {
    StreamSummary left;
    StreamSummary right;
    std::size_t removal_index = 0;
    std::uint64_t time = 0;
};

/// Builds the pair for `stream` truncated to `time` positions.
/// Requires 1 <= removal_index <= time <= stream.size().
StatePair make_state_pair(StreamView stream, std::size_t k, std::size_t removal_index,
                          std::uint64_t time);

enum class StateTag : std::uint8_t { s1, s2, s3, s4, violation };

std::string_view to_string(StateTag tag) noexcept;

/// A table slot as seen by the classifier. A table with r free slots is
/// padded with placeholders 1..r of count 0; placeholder j has recency
/// j - (k + 1), so the highest-numbered placeholder is the one the next new
/// label fills. Placeholders of the fuller table are then a subset of the
/// other table's, and non-full tables classify like full ones.
struct SlotRef {
    Label id = 0;
    bool placeholder = false;

    friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

std::string to_string(SlotRef slot);

/// Values substantiating a classification. Up to two members of each set
/// difference are recorded; the sizes are exact.
struct StateWitness {
    bool has_incremented = false;
    SlotRef incremented{};            // the shared label with C = C' + 1
    std::array<SlotRef, 2> only_left{};   // W = T \ T'
    std::array<SlotRef, 2> only_right{};  // W' = T' \ T
    std::uint32_t only_left_size = 0;
    std::uint32_t only_right_size = 0;
    std::uint64_t min_left = 0;
    std::uint64_t min_right = 0;
    SlotRef right_eviction_register{};  // argmax recency over the min set of T'
    std::uint8_t matched_states = 0;    // bit s set when state s+1 matched
};

struct StateLabel {
    StateTag tag = StateTag::violation;
    StateWitness witness;
};

/// Legal successor sets.
///
/// `stated`: S1 -> {S1, S2}; S2 -> {S1, S2, S3}; S3 -> {S1, S3, S4};
/// S4 -> {S2, S3, S4}.
///
/// `extended`: `stated` plus S1 -> S3 and S3 -> S2, both of which SpaceSaving
/// produces (for k = 2: stream 0 0 1 1 2 minus position 2 gives S1 -> S3 at
/// t = 5; stream 0 1 2 0 minus position 1 gives S3 -> S2 at t = 4).
enum class TransitionRelation { stated, extended };

bool transition_allowed(StateTag from, StateTag to, TransitionRelation relation) noexcept;
/// The state right after the removed position must be S1 or S2.
bool initial_state_allowed(StateTag tag) noexcept;

/// Reusable classifier; keeps scratch buffers between calls so sweeps do
/// not allocate per classification. Not thread-safe.
class StateClassifier {
public:
    struct Slot {
        SlotRef ref;
        std::uint64_t count = 0;
        std::int64_t recency = 0;
    };

    struct Result {
        StateLabel label;
        bool corollary = false;
    };

    /// Throws InvalidPair if the capacities differ.
    Result evaluate(const StreamSummary& left, const StreamSummary& right);
    Result evaluate(const SpaceSaving& left, const SpaceSaving& right);

private:
    template <typename Fill>
    void load(std::vector<Slot>& out, std::size_t capacity, std::size_t size, Fill&& fill);
    Result analyze(std::size_t capacity);

    std::vector<Slot> left_;
    std::vector<Slot> right_;
};

/// Table state of the pair, or Violation unless exactly one state's clauses
/// all hold. Throws InvalidPair if the capacities differ.
StateLabel classify(const StatePair& pair);

/// |T n T'| >= k - 2; every counter outside the intersection is at most
/// min C' + 1; at most one shared label has C = C' + 1 and the rest are equal.
bool verify_corollary(const StatePair& pair);

/// Human-readable dump of both tables, W, W', the minimum sets and the
/// eviction registers.
std::string dump_pair(const StatePair& pair, const StateLabel& label);

struct TrajectoryStep {
    std::uint64_t time = 0;
    StateLabel label;
};

/// Runs both SpaceSaving passes in lockstep and classifies every time
/// t = removal_index .. |stream|. Throws StateMachineViolation (with a dump)
/// on a Violation, an illegal first state or an illegal transition, and
/// InvalidParameter unless 1 <= removal_index <= |stream|.
std::vector<TrajectoryStep> verify_trajectory(
    StreamView stream, std::size_t k, std::size_t removal_index,
    TransitionRelation relation = TransitionRelation::stated);

}  // namespace dphh
