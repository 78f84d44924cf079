#include "dphh/state_sweep.hpp"

#include <random>
#include <sstream>

#include "dphh/errors.hpp"

namespace dphh {

namespace {

constexpr StateTag kTags[4] = {StateTag::s1, StateTag::s2, StateTag::s3, StateTag::s4};

unsigned idx(StateTag t) { return static_cast<unsigned>(t); }

// Shared bookkeeping for one classified pair; returns the tag.
class Recorder {
public:
    Recorder(SweepStats& stats, const std::size_t max_examples, TransitionRelation relation)
        : stats_(stats), max_examples_(max_examples), relation_(relation) {}

    // `prev` is violation for the first state of a trajectory.
    template <typename Describe>
    StateTag record(const StateClassifier::Result& r, StateTag prev, bool first,
                    Describe&& describe) {
        ++stats_.classifications;
        const StateTag tag = r.label.tag;
        std::string problem;
        if (tag == StateTag::violation) {
            ++stats_.violations;
            problem = "unclassifiable pair";
        } else {
            ++stats_.states[idx(tag)];
            if (first) {
                ++stats_.initial[idx(tag)];
                if (!initial_state_allowed(tag)) {
                    ++stats_.bad_initial;
                    problem = "first state " + std::string(to_string(tag));
                }
            } else if (prev != StateTag::violation) {
                ++stats_.transitions[idx(prev)][idx(tag)];
                if (!transition_allowed(prev, tag, relation_)) {
                    ++stats_.illegal_transitions;
                    problem = "illegal transition " + std::string(to_string(prev)) + " -> " +
                              std::string(to_string(tag));
                }
            }
        }
        if (!r.corollary) {
            ++stats_.corollary_failures;
            if (problem.empty()) problem = "corollary fails";
        }
        if (!problem.empty() && stats_.examples.size() < max_examples_) {
            stats_.examples.push_back(problem + "\n" + describe(r.label));
        }
        return tag;
    }

private:
    SweepStats& stats_;
    std::size_t max_examples_;
    TransitionRelation relation_;
};

std::string describe_prefix(const std::vector<Label>& prefix, std::size_t k,
                            std::size_t removal, const StateLabel& label) {
    const StatePair pair = make_state_pair(prefix, k, removal, prefix.size());
    std::ostringstream os;
    os << "  stream:";
    for (Label x : prefix) os << ' ' << x;
    os << '\n' << dump_pair(pair, label);
    return os.str();
}

// Depth-first walk of the stream prefix tree. At depth n the walker holds the
// run on the prefix and, for every removal position i <= n, the run with
// position i skipped, together with the state last seen on that trajectory.
class PrefixWalker {
public:
    PrefixWalker(const ExhaustiveConfig& cfg, std::size_t k, SweepStats& stats)
        : cfg_(cfg), k_(k), stats_(stats), recorder_(stats, cfg.max_examples, cfg.relation) {
        const std::size_t n = cfg.max_length;
        left_.assign(n + 1, SpaceSaving(k));
        rights_.resize(n + 1);
        tags_.resize(n + 1);
        for (std::size_t d = 0; d <= n; ++d) {
            rights_[d].assign(d, SpaceSaving(k));
            tags_[d].assign(d, StateTag::violation);
        }
        prefix_.reserve(n);
    }

    void run() { descend(0, 0); }

private:
    void descend(std::size_t depth, std::size_t labels_used) {
        if (depth == cfg_.max_length) return;
        const std::size_t limit =
            cfg_.canonical_only ? std::min(cfg_.universe, labels_used + 1) : cfg_.universe;
        for (Label x = 0; x < limit; ++x) {
            step(depth, x);
            descend(depth + 1, std::max<std::size_t>(labels_used, x + 1));
            prefix_.pop_back();
        }
    }

    void step(std::size_t depth, Label x) {
        prefix_.push_back(x);
        const std::size_t d = depth + 1;
        SpaceSaving& left = left_[d];
        left = left_[depth];
        left.update(x);
        for (std::size_t i = 1; i <= d; ++i) {
            SpaceSaving& right = rights_[d][i - 1];
            const bool first = i == d;
            if (first) {
                right = left_[depth];
                right.skip();
                ++stats_.trajectories;
            } else {
                right = rights_[depth][i - 1];
                right.update(x);
            }
            const auto result = classifier_.evaluate(left, right);
            const StateTag prev = first ? StateTag::violation : tags_[depth][i - 1];
            tags_[d][i - 1] = recorder_.record(result, prev, first, [&](const StateLabel& l) {
                return describe_prefix(prefix_, k_, i, l);
            });
        }
    }

    const ExhaustiveConfig& cfg_;
    std::size_t k_;
    SweepStats& stats_;
    Recorder recorder_;
    StateClassifier classifier_;
    std::vector<SpaceSaving> left_;
    std::vector<std::vector<SpaceSaving>> rights_;
    std::vector<std::vector<StateTag>> tags_;
    std::vector<Label> prefix_;
};

}  // namespace

std::vector<std::pair<StateTag, StateTag>> SweepStats::unwitnessed(
    TransitionRelation relation) const {
    std::vector<std::pair<StateTag, StateTag>> out;
    for (StateTag a : kTags) {
        for (StateTag b : kTags) {
            if (transition_allowed(a, b, relation) && transitions[idx(a)][idx(b)] == 0) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

std::vector<std::pair<StateTag, StateTag>> SweepStats::outside(
    TransitionRelation relation) const {
    std::vector<std::pair<StateTag, StateTag>> out;
    for (StateTag a : kTags) {
        for (StateTag b : kTags) {
            if (!transition_allowed(a, b, relation) && transitions[idx(a)][idx(b)] > 0) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

void SweepStats::merge(const SweepStats& o, std::size_t max_examples) {
    trajectories += o.trajectories;
    classifications += o.classifications;
    violations += o.violations;
    bad_initial += o.bad_initial;
    illegal_transitions += o.illegal_transitions;
    corollary_failures += o.corollary_failures;
    for (unsigned a = 0; a < 4; ++a) {
        states[a] += o.states[a];
        initial[a] += o.initial[a];
        for (unsigned b = 0; b < 4; ++b) transitions[a][b] += o.transitions[a][b];
    }
    for (const auto& e : o.examples) {
        if (examples.size() >= max_examples) break;
        examples.push_back(e);
    }
}

SweepStats exhaustive_sweep(const ExhaustiveConfig& config) {
    if (config.universe == 0 || config.max_length == 0 || config.ks.empty()) {
        throw InvalidParameter("exhaustive sweep needs universe, length and k values");
    }
    SweepStats total;
    for (std::size_t k : config.ks) {
        if (k == 0) throw InvalidParameter("k must be at least 1");
        SweepStats s;
        PrefixWalker(config, k, s).run();
        total.merge(s, config.max_examples);
    }
    return total;
}

SweepStats random_sweep(const RandomSweepConfig& config) {
    if (config.universe == 0 || config.length == 0 || config.k_min == 0 ||
        config.k_max < config.k_min) {
        throw InvalidParameter("random sweep needs universe, length and 1 <= k_min <= k_max");
    }
    SweepStats stats;
    Recorder recorder(stats, config.max_examples, config.relation);
    StateClassifier classifier;
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<Label> label_dist(0, config.universe - 1);
    std::uniform_int_distribution<std::size_t> k_dist(config.k_min, config.k_max);
    std::uniform_int_distribution<std::size_t> pos_dist(1, config.length);
    std::vector<Label> stream(config.length);

    for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        for (Label& x : stream) x = label_dist(rng);
        const std::size_t k = k_dist(rng);
        const std::size_t removal = pos_dist(rng);
        ++stats.trajectories;

        SpaceSaving left(k);
        for (std::size_t t = 1; t < removal; ++t) left.update(stream[t - 1]);
        SpaceSaving right = left;
        StateTag prev = StateTag::violation;
        for (std::size_t t = removal; t <= config.length; ++t) {
            left.update(stream[t - 1]);
            if (t == removal) {
                right.skip();
            } else {
                right.update(stream[t - 1]);
            }
            const auto result = classifier.evaluate(left, right);
            prev = recorder.record(result, prev, t == removal, [&](const StateLabel& l) {
                const std::vector<Label> prefix(stream.begin(), stream.begin() + t);
                return describe_prefix(prefix, k, removal, l);
            });
        }
    }
    return stats;
}

}  // namespace dphh
