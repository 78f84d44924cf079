#include <gtest/gtest.h>

#include <random>

#include "dphh/errors.hpp"
#include "dphh/neighbor_states.hpp"

namespace dphh {
namespace {

using Tag = StateTag;

std::vector<Tag> tags(const std::vector<TrajectoryStep>& steps) {
    std::vector<Tag> out;
    for (const auto& s : steps) out.push_back(s.label.tag);
    return out;
}

bool has_step(const std::vector<TrajectoryStep>& steps, Tag from, Tag to) {
    for (std::size_t j = 1; j < steps.size(); ++j) {
        if (steps[j - 1].label.tag == from && steps[j].label.tag == to) return true;
    }
    return false;
}

TEST(NeighborStates, PairConstruction) {
    const Stream x{0, 1, 2};
    const auto p = make_state_pair(x, 2, 3, 3);
    EXPECT_EQ(p.left.count_of(0), 1u);
    EXPECT_EQ(p.left.count_of(2), 2u);
    EXPECT_FALSE(p.left.contains(1));
    EXPECT_EQ(p.right.count_of(0), 1u);
    EXPECT_EQ(p.right.count_of(1), 1u);
    EXPECT_EQ(p.left.total_count() - p.right.total_count(), 1u);
    EXPECT_THROW(make_state_pair(x, 2, 0, 3), InvalidParameter);
    EXPECT_THROW(make_state_pair(x, 2, 3, 2), InvalidParameter);
    EXPECT_THROW(make_state_pair(x, 2, 1, 4), InvalidParameter);
}

TEST(NeighborStates, ExampleS2) {
    const auto p = make_state_pair(Stream{0, 1, 2}, 2, 3, 3);
    const auto l = classify(p);
    EXPECT_EQ(l.tag, Tag::s2);
    EXPECT_EQ(l.witness.only_left_size, 1u);
    EXPECT_EQ(l.witness.only_left[0], (SlotRef{2, false}));
    EXPECT_EQ(l.witness.only_right[0], (SlotRef{1, false}));
    EXPECT_TRUE(verify_corollary(p));
}

TEST(NeighborStates, ExampleS1) {
    const auto p = make_state_pair(Stream{0, 1, 0}, 2, 1, 3);
    const auto l = classify(p);
    EXPECT_EQ(l.tag, Tag::s1);
    ASSERT_TRUE(l.witness.has_incremented);
    EXPECT_EQ(l.witness.incremented, (SlotRef{0, false}));
    EXPECT_EQ(l.witness.only_left_size, 0u);
}

TEST(NeighborStates, PlaceholderSlots) {
    // Right run has a free slot; the left one filled it.
    const auto p = make_state_pair(Stream{0, 1}, 3, 2, 2);
    EXPECT_EQ(p.right.size(), 1u);
    EXPECT_EQ(classify(p).tag, Tag::s2);
    EXPECT_TRUE(verify_corollary(p));
}

TEST(NeighborStates, IdenticalPairIsViolation) {
    const auto p = make_state_pair(Stream{0, 1, 0}, 2, 1, 3);
    StatePair same{p.left, p.left, 1, 3};
    EXPECT_EQ(classify(same).tag, Tag::violation);
}

TEST(NeighborStates, CapacityMismatch) {
    auto p = make_state_pair(Stream{0, 1, 0}, 2, 1, 3);
    p.right.capacity = 3;
    EXPECT_THROW(classify(p), InvalidPair);
    StateClassifier c;
    SpaceSaving two(2), three(3);
    EXPECT_THROW(c.evaluate(two, three), InvalidPair);
}

TEST(NeighborStates, CorruptedPairFailsCorollary) {
    StatePair p;
    p.left.capacity = p.right.capacity = 3;
    p.left.counters = {{0, 2, 3}, {1, 2, 4}, {2, 1, 1}};
    p.right.counters = {{0, 1, 3}, {1, 1, 4}, {2, 1, 1}};
    p.removal_index = 1;
    p.time = 4;
    EXPECT_FALSE(verify_corollary(p));
    EXPECT_EQ(classify(p).tag, Tag::violation);
}

TEST(NeighborStates, CorollaryOnGenuinePairs) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100000; ++trial) {
        const std::size_t n = 1 + rng() % 40;
        Stream x(n);
        const std::size_t u = 2 + rng() % 8;
        for (auto& y : x) y = rng() % u;
        const std::size_t k = 2 + rng() % 4;
        const std::size_t i = 1 + rng() % n;
        const std::size_t t = i + rng() % (n - i + 1);
        const auto p = make_state_pair(x, k, i, t);
        ASSERT_TRUE(verify_corollary(p)) << dump_pair(p, classify(p));
        ASSERT_EQ(p.left.total_count(), p.right.total_count() + 1);
    }
}

TEST(NeighborStates, RemovalAtEndIsSingleStep) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 500; ++trial) {
        Stream x(1 + rng() % 30);
        for (auto& y : x) y = rng() % 6;
        const auto steps = verify_trajectory(x, 2 + rng() % 3, x.size());
        ASSERT_EQ(steps.size(), 1u);
        ASSERT_TRUE(steps[0].label.tag == Tag::s1 || steps[0].label.tag == Tag::s2);
    }
}

TEST(NeighborStates, RandomTrajectoriesHaveNoViolations) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        Stream x(50);
        for (auto& y : x) y = rng() % 8;
        for (std::size_t i = 1; i <= x.size(); ++i) {
            const auto steps = verify_trajectory(x, 3, i, TransitionRelation::extended);
            ASSERT_EQ(steps.size(), x.size() - i + 1);
            ASSERT_EQ(steps.front().time, i);
        }
    }
}

TEST(NeighborStates, ThreeToTwoOutsideStatedRelation) {
    const Stream x{0, 1, 2, 0};
    EXPECT_THROW(verify_trajectory(x, 2, 1, TransitionRelation::stated), StateMachineViolation);
    const auto steps = verify_trajectory(x, 2, 1, TransitionRelation::extended);
    EXPECT_EQ(tags(steps), (std::vector<Tag>{Tag::s2, Tag::s2, Tag::s3, Tag::s2}));
    EXPECT_EQ(steps.back().time, 4u);
}

TEST(NeighborStates, OneToThreeOutsideStatedRelation) {
    const Stream x{0, 0, 1, 1, 2};
    EXPECT_THROW(verify_trajectory(x, 2, 2, TransitionRelation::stated), StateMachineViolation);
    const auto steps = verify_trajectory(x, 2, 2, TransitionRelation::extended);
    EXPECT_TRUE(has_step(steps, Tag::s1, Tag::s3));
    EXPECT_EQ(steps.back().time, 5u);
    EXPECT_EQ(steps.back().label.tag, Tag::s3);
}

TEST(NeighborStates, ThreeToFourTrigger) {
    const auto steps = verify_trajectory(Stream{0, 1, 2, 3, 4}, 3, 1);
    EXPECT_TRUE(has_step(steps, Tag::s3, Tag::s4));
    EXPECT_EQ(steps.back().label.tag, Tag::s4);
}

TEST(NeighborStates, FourSuccessors) {
    const std::pair<Label, Tag> cases[] = {{0, Tag::s2}, {3, Tag::s3}, {4, Tag::s4}};
    for (const auto& [last, expect] : cases) {
        const auto steps = verify_trajectory(Stream{0, 1, 2, 3, 4, last}, 3, 1);
        EXPECT_TRUE(has_step(steps, Tag::s4, expect)) << "last label " << last;
    }
}

TEST(NeighborStates, ViolationDumpNamesTheTables) {
    try {
        verify_trajectory(Stream{0, 1, 2, 0}, 2, 1);
        FAIL() << "expected a violation";
    } catch (const StateMachineViolation& e) {
        const std::string what = e.what();
        for (const char* needle : {"stream prefix: 0 1 2 0", "T  (", "T' (", "W  =", "W' =",
                                   "S  =", "S' =", "eviction register", "S3", "S2"}) {
            EXPECT_NE(what.find(needle), std::string::npos) << needle << "\n" << what;
        }
    }
}

TEST(NeighborStates, RelationTables) {
    using R = TransitionRelation;
    EXPECT_TRUE(transition_allowed(Tag::s2, Tag::s3, R::stated));
    EXPECT_FALSE(transition_allowed(Tag::s1, Tag::s3, R::stated));
    EXPECT_FALSE(transition_allowed(Tag::s3, Tag::s2, R::stated));
    EXPECT_TRUE(transition_allowed(Tag::s1, Tag::s3, R::extended));
    EXPECT_TRUE(transition_allowed(Tag::s3, Tag::s2, R::extended));
    EXPECT_FALSE(transition_allowed(Tag::s1, Tag::s4, R::extended));
    EXPECT_FALSE(transition_allowed(Tag::s4, Tag::s1, R::extended));
    EXPECT_FALSE(transition_allowed(Tag::violation, Tag::s1, R::extended));
    EXPECT_TRUE(initial_state_allowed(Tag::s1));
    EXPECT_FALSE(initial_state_allowed(Tag::s3));
}

TEST(NeighborStates, SummaryAndLiveEvaluateAgree) {
    std::mt19937_64 rng(19);
    StateClassifier c;
    for (int trial = 0; trial < 2000; ++trial) {
        Stream x(2 + rng() % 30);
        for (auto& y : x) y = rng() % 7;
        const std::size_t k = 2 + rng() % 3;
        const std::size_t i = 1 + rng() % x.size();
        SpaceSaving l(k), r(k);
        for (std::size_t j = 0; j < x.size(); ++j) {
            l.update(x[j]);
            if (j + 1 != i) {
                r.update(x[j]);
            } else {
                r.skip();
            }
        }
        const auto a = c.evaluate(l, r);
        const auto b = c.evaluate(l.summary(), r.summary());
        ASSERT_EQ(a.label.tag, b.label.tag);
        ASSERT_EQ(a.corollary, b.corollary);
    }
}

}  // namespace
}  // namespace dphh
