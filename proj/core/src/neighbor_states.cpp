#include "dphh/neighbor_states.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "dphh/errors.hpp"

namespace dphh {

std::string_view to_string(StateTag tag) noexcept {
    switch (tag) {
        case StateTag::s1: return "S1";
        case StateTag::s2: return "S2";
        case StateTag::s3: return "S3";
        case StateTag::s4: return "S4";
        case StateTag::violation: return "Violation";
    }
    return "?";
}

std::string to_string(SlotRef slot) {
    if (slot.placeholder) return "<empty " + std::to_string(slot.id) + ">";
    return std::to_string(slot.id);
}

StatePair make_state_pair(StreamView stream, std::size_t k, std::size_t removal_index,
                          std::uint64_t time) {
    if (removal_index < 1 || removal_index > time || time > stream.size()) {
        throw InvalidParameter("need 1 <= removal_index <= time <= stream length");
    }
    SpaceSaving left(k);
    SpaceSaving right(k);
    for (std::uint64_t t = 1; t <= time; ++t) {
        const Label x = stream[t - 1];
        left.update(x);
        if (t == removal_index) {
            right.skip();
        } else {
            right.update(x);
        }
    }
    return {left.summary(), right.summary(), removal_index, time};
}

namespace {

constexpr std::uint8_t bit(StateTag t) { return std::uint8_t(1u << static_cast<unsigned>(t)); }

constexpr std::uint8_t kStated[4] = {
    bit(StateTag::s1) | bit(StateTag::s2),
    bit(StateTag::s1) | bit(StateTag::s2) | bit(StateTag::s3),
    bit(StateTag::s1) | bit(StateTag::s3) | bit(StateTag::s4),
    bit(StateTag::s2) | bit(StateTag::s3) | bit(StateTag::s4),
};

constexpr std::uint8_t kExtended[4] = {
    kStated[0] | bit(StateTag::s3),
    kStated[1],
    kStated[2] | bit(StateTag::s2),
    kStated[3],
};

}  // namespace

bool transition_allowed(StateTag from, StateTag to, TransitionRelation relation) noexcept {
    if (from == StateTag::violation || to == StateTag::violation) return false;
    const auto& table = relation == TransitionRelation::stated ? kStated : kExtended;
    return (table[static_cast<unsigned>(from)] & bit(to)) != 0;
}

bool initial_state_allowed(StateTag tag) noexcept {
    return tag == StateTag::s1 || tag == StateTag::s2;
}

template <typename Fill>
void StateClassifier::load(std::vector<Slot>& out, std::size_t capacity, std::size_t size,
                           Fill&& fill) {
    out.clear();
    fill(out);
    const auto k1 = static_cast<std::int64_t>(capacity) + 1;
    for (std::size_t j = 1; j + size <= capacity; ++j) {
        out.push_back(Slot{SlotRef{j, true}, 0, static_cast<std::int64_t>(j) - k1});
    }
    std::sort(out.begin(), out.end(), [](const Slot& a, const Slot& b) { return a.ref < b.ref; });
}

StateClassifier::Result StateClassifier::evaluate(const StreamSummary& left,
                                                  const StreamSummary& right) {
    if (left.capacity != right.capacity) {
        throw InvalidPair("summaries have different capacities (" +
                          std::to_string(left.capacity) + " vs " +
                          std::to_string(right.capacity) + ")");
    }
    if (left.size() > left.capacity || right.size() > right.capacity) {
        throw InvalidPair("summary holds more counters than its capacity");
    }
    const auto from = [](const StreamSummary& s) {
        return [&s](std::vector<Slot>& out) {
            for (const Counter& c : s.counters) {
                out.push_back(
                    Slot{SlotRef{c.label, false}, c.count, static_cast<std::int64_t>(c.last_seen)});
            }
        };
    };
    load(left_, left.capacity, left.size(), from(left));
    load(right_, right.capacity, right.size(), from(right));
    return analyze(left.capacity);
}

StateClassifier::Result StateClassifier::evaluate(const SpaceSaving& left,
                                                  const SpaceSaving& right) {
    if (left.capacity() != right.capacity()) {
        throw InvalidPair("runs have different capacities");
    }
    const auto from = [](const SpaceSaving& s) {
        return [&s](std::vector<Slot>& out) {
            s.for_each_counter([&](Label label, std::uint64_t count, std::uint64_t seen) {
                out.push_back(Slot{SlotRef{label, false}, count, static_cast<std::int64_t>(seen)});
            });
        };
    };
    load(left_, left.capacity(), left.size(), from(left));
    load(right_, right.capacity(), right.size(), from(right));
    return analyze(left.capacity());
}

StateClassifier::Result StateClassifier::analyze(std::size_t capacity) {
    StateWitness w;
    std::uint64_t only_left_count[2] = {0, 0};
    std::uint64_t only_right_count[2] = {0, 0};
    std::size_t shared = 0;
    std::size_t plus_one = 0;
    std::size_t other_diff = 0;
    std::uint64_t outside_max = 0;

    w.min_left = std::numeric_limits<std::uint64_t>::max();
    w.min_right = std::numeric_limits<std::uint64_t>::max();
    for (const Slot& s : left_) w.min_left = std::min(w.min_left, s.count);
    std::int64_t best_recency = std::numeric_limits<std::int64_t>::min();
    for (const Slot& s : right_) w.min_right = std::min(w.min_right, s.count);
    for (const Slot& s : right_) {
        if (s.count == w.min_right && s.recency > best_recency) {
            best_recency = s.recency;
            w.right_eviction_register = s.ref;
        }
    }

    const auto note_left = [&](const Slot& s) {
        if (w.only_left_size < 2) {
            w.only_left[w.only_left_size] = s.ref;
            only_left_count[w.only_left_size] = s.count;
        }
        ++w.only_left_size;
        outside_max = std::max(outside_max, s.count);
    };
    const auto note_right = [&](const Slot& s) {
        if (w.only_right_size < 2) {
            w.only_right[w.only_right_size] = s.ref;
            only_right_count[w.only_right_size] = s.count;
        }
        ++w.only_right_size;
        outside_max = std::max(outside_max, s.count);
    };

    std::size_t a = 0;
    std::size_t b = 0;
    while (a < left_.size() || b < right_.size()) {
        if (b == right_.size() || (a < left_.size() && left_[a].ref < right_[b].ref)) {
            note_left(left_[a++]);
        } else if (a == left_.size() || right_[b].ref < left_[a].ref) {
            note_right(right_[b++]);
        } else {
            const Slot& l = left_[a++];
            const Slot& r = right_[b++];
            ++shared;
            if (l.count == r.count) continue;
            if (l.count == r.count + 1) {
                if (!w.has_incremented) {
                    w.has_incremented = true;
                    w.incremented = l.ref;
                }
                ++plus_one;
            } else {
                ++other_diff;
            }
        }
    }

    const bool shared_equal = plus_one == 0 && other_diff == 0;
    const bool one_increment = plus_one == 1 && other_diff == 0;
    const bool single_swap = w.only_left_size == 1 && w.only_right_size == 1;
    const std::uint64_t lo = w.min_left;
    const std::uint64_t ro = w.min_right;

    const bool s1 = w.only_left_size == 0 && w.only_right_size == 0 && one_increment;
    const bool s2 = single_swap && shared_equal &&
                    only_left_count[0] == only_right_count[0] + 1 &&
                    only_right_count[0] == ro && only_left_count[0] <= lo + 1;
    const bool s3 = single_swap && one_increment && only_left_count[0] == only_right_count[0] &&
                    only_left_count[0] == lo && lo == ro;
    bool s4 = false;
    if (w.only_left_size == 2 && w.only_right_size == 2 && shared_equal && lo == ro) {
        const std::uint64_t m = lo;
        const bool left_split = (only_left_count[0] == m + 1 && only_left_count[1] == m) ||
                                (only_left_count[1] == m + 1 && only_left_count[0] == m);
        const bool right_min = only_right_count[0] == m && only_right_count[1] == m;
        const bool register_isolated = w.right_eviction_register == w.only_right[0] ||
                                       w.right_eviction_register == w.only_right[1];
        s4 = left_split && right_min && register_isolated;
    }

    w.matched_states = static_cast<std::uint8_t>((s1 ? 1 : 0) | (s2 ? 2 : 0) | (s3 ? 4 : 0) |
                                                 (s4 ? 8 : 0));
    Result result;
    result.label.witness = w;
    switch (w.matched_states) {
        case 1: result.label.tag = StateTag::s1; break;
        case 2: result.label.tag = StateTag::s2; break;
        case 4: result.label.tag = StateTag::s3; break;
        case 8: result.label.tag = StateTag::s4; break;
        default: result.label.tag = StateTag::violation; break;
    }

    const auto k = static_cast<std::int64_t>(capacity);
    result.corollary = static_cast<std::int64_t>(shared) >= k - 2 && outside_max <= ro + 1 &&
                       other_diff == 0 && plus_one <= 1;
    return result;
}

StateLabel classify(const StatePair& pair) {
    StateClassifier c;
    return c.evaluate(pair.left, pair.right).label;
}

bool verify_corollary(const StatePair& pair) {
    StateClassifier c;
    return c.evaluate(pair.left, pair.right).corollary;
}

namespace {

void dump_table(std::ostringstream& os, const StreamSummary& s) {
    std::vector<const Counter*> order;
    for (const Counter& c : s.counters) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Counter* a, const Counter* b) {
        return a->count != b->count ? a->count < b->count : a->last_seen < b->last_seen;
    });
    for (const Counter* c : order) {
        os << ' ' << c->label << ':' << c->count << '@' << c->last_seen;
    }
    for (std::size_t j = s.capacity - s.size(); j >= 1; --j) os << " <empty " << j << ">:0";
    os << '\n';
}

void dump_min_set(std::ostringstream& os, const StreamSummary& s) {
    const auto m = s.size() < s.capacity ? std::uint64_t{0} : s.min_count().value_or(0);
    os << '{';
    bool first = true;
    for (const Counter& c : s.counters) {
        if (c.count != m) continue;
        os << (first ? "" : ", ") << c.label;
        first = false;
    }
    for (std::size_t j = 1; j + s.size() <= s.capacity; ++j) {
        os << (first ? "" : ", ") << "<empty " << j << '>';
        first = false;
    }
    os << "} at count " << m;
}

std::string left_register(const StreamSummary& s) {
    if (s.size() < s.capacity) return "<empty " + std::to_string(s.capacity - s.size()) + ">";
    const auto m = s.min_count().value_or(0);
    const Counter* best = nullptr;
    for (const Counter& c : s.counters) {
        if (c.count == m && (!best || c.last_seen > best->last_seen)) best = &c;
    }
    return best ? std::to_string(best->label) : "-";
}

}  // namespace

std::string dump_pair(const StatePair& pair, const StateLabel& label) {
    std::ostringstream os;
    const StateWitness& w = label.witness;
    os << "pair at t=" << pair.time << ", removed position " << pair.removal_index
       << ", k=" << pair.left.capacity << '\n';
    os << "  T  (label:count@recency):";
    dump_table(os, pair.left);
    os << "  T' (label:count@recency):";
    dump_table(os, pair.right);
    const auto dump_set = [&](const std::array<SlotRef, 2>& v, std::uint32_t n) {
        os << '{';
        for (std::uint32_t j = 0; j < std::min<std::uint32_t>(n, 2); ++j) {
            os << (j ? ", " : "") << to_string(v[j]);
        }
        if (n > 2) os << ", ... (" << n << " total)";
        os << '}';
    };
    os << "  W  = ";
    dump_set(w.only_left, w.only_left_size);
    os << "\n  W' = ";
    dump_set(w.only_right, w.only_right_size);
    os << "\n  S  = ";
    dump_min_set(os, pair.left);
    os << "\n  S' = ";
    dump_min_set(os, pair.right);
    os << "\n  eviction register: T " << left_register(pair.left) << ", T' "
       << to_string(w.right_eviction_register) << '\n';
    os << "  incremented shared label: "
       << (w.has_incremented ? to_string(w.incremented) : std::string("none")) << '\n';
    os << "  classified " << to_string(label.tag) << " (clauses matched:";
    bool any = false;
    for (unsigned s = 0; s < 4; ++s) {
        if (w.matched_states & (1u << s)) {
            os << " S" << (s + 1);
            any = true;
        }
    }
    os << (any ? "" : " none") << ")\n";
    return os.str();
}

namespace {

[[noreturn]] void fail_trajectory(StreamView stream, std::size_t k, std::size_t removal_index,
                                  std::uint64_t t, const std::string& what,
                                  const StateLabel& label) {
    const StatePair pair = make_state_pair(stream, k, removal_index, t);
    std::ostringstream os;
    os << what << "\n  stream prefix:";
    for (std::uint64_t j = 0; j < t; ++j) os << ' ' << stream[j];
    os << '\n' << dump_pair(pair, label);
    throw StateMachineViolation(os.str());
}

}  // namespace

std::vector<TrajectoryStep> verify_trajectory(StreamView stream, std::size_t k,
                                              std::size_t removal_index,
                                              TransitionRelation relation) {
    if (removal_index < 1 || removal_index > stream.size()) {
        throw InvalidParameter("removal index must lie in [1, stream length]");
    }
    SpaceSaving left(k);
    for (std::size_t t = 1; t < removal_index; ++t) left.update(stream[t - 1]);
    SpaceSaving right = left;

    StateClassifier classifier;
    std::vector<TrajectoryStep> steps;
    steps.reserve(stream.size() - removal_index + 1);
    for (std::size_t t = removal_index; t <= stream.size(); ++t) {
        left.update(stream[t - 1]);
        if (t == removal_index) {
            right.skip();
        } else {
            right.update(stream[t - 1]);
        }
        const StateLabel label = classifier.evaluate(left, right).label;
        if (label.tag == StateTag::violation) {
            fail_trajectory(stream, k, removal_index, t,
                            "unclassifiable pair at t=" + std::to_string(t), label);
        }
        if (steps.empty()) {
            if (!initial_state_allowed(label.tag)) {
                fail_trajectory(stream, k, removal_index, t,
                                "first state " + std::string(to_string(label.tag)) +
                                    " is neither S1 nor S2",
                                label);
            }
        } else if (!transition_allowed(steps.back().label.tag, label.tag, relation)) {
            fail_trajectory(stream, k, removal_index, t,
                            "illegal transition " +
                                std::string(to_string(steps.back().label.tag)) + " -> " +
                                std::string(to_string(label.tag)) + " at t=" +
                                std::to_string(t),
                            label);
        }
        steps.push_back({t, label});
    }
    return steps;
}

}  // namespace dphh
