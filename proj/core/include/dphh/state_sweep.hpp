#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dphh/neighbor_states.hpp"

namespace dphh {

/// Tallies from classifying many neighbor pairs. Index 0..3 is S1..S4.
struct SweepStats {
    std::uint64_t trajectories = 0;     // (stream, removal position) pairs started
    std::uint64_t classifications = 0;  // classified (stream, removal, time) triples
    std::uint64_t violations = 0;       // Violation tags
    std::uint64_t bad_initial = 0;      // first state not S1/S2
    std::uint64_t illegal_transitions = 0;
    std::uint64_t corollary_failures = 0;
    std::array<std::uint64_t, 4> states{};
    std::array<std::uint64_t, 4> initial{};
    std::array<std::array<std::uint64_t, 4>, 4> transitions{};
    std::vector<std::string> examples;  // first failure dumps, capped

    std::uint64_t failures() const noexcept {
        return violations + bad_initial + illegal_transitions + corollary_failures;
    }
    /// Transitions of `relation` never observed.
    std::vector<std::pair<StateTag, StateTag>> unwitnessed(TransitionRelation relation) const;
    /// Observed transitions outside `relation`.
    std::vector<std::pair<StateTag, StateTag>> outside(TransitionRelation relation) const;

    void merge(const SweepStats& other, std::size_t max_examples);
};

struct ExhaustiveConfig {
    std::size_t universe = 5;
    std::size_t max_length = 10;
    std::vector<std::size_t> ks{2, 3};
    /// Enumerate only streams in first-occurrence order (0 first, each new
    /// label one more than the largest so far). SpaceSaving is equivariant
    /// under relabeling, so this covers every stream up to a permutation.
    bool canonical_only = false;
    TransitionRelation relation = TransitionRelation::stated;
    std::size_t max_examples = 5;
};

/// Every stream over [0, universe) of length 1..max_length, every removal
/// position and every time from the removal to the end, for each k.
SweepStats exhaustive_sweep(const ExhaustiveConfig& config);

struct RandomSweepConfig {
    std::size_t universe = 16;
    std::size_t length = 200;
    std::size_t k_min = 2;
    std::size_t k_max = 8;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    TransitionRelation relation = TransitionRelation::stated;
    std::size_t max_examples = 5;
};

/// `trials` independent (uniform stream, uniform k, uniform removal position)
/// trajectories, each classified at every time from the removal to the end.
SweepStats random_sweep(const RandomSweepConfig& config);

}  // namespace dphh
