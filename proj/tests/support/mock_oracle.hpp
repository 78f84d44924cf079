#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "dphh/eehh.hpp"
#include "dphh/laplace.hpp"
#include "dphh/oracle.hpp"

namespace dphh::testing {

// Exact counts plus a perturbation inside [lower, upper] chosen from a seeded
// hash of (label, time). Half the draws sit on an edge of the band.
class BandOracle final : public FrequencyOracle {
public:
    BandOracle(double upper, double lower, std::uint64_t seed)
        : upper_(upper), lower_(lower), seed_(seed) {}

    double update(Label label) override {
        ++t_;
        return static_cast<double>(++counts_[label]) + perturb(label, t_);
    }
    double query(Label label) const override {
        auto it = counts_.find(label);
        const double f = it == counts_.end() ? 0.0 : static_cast<double>(it->second);
        return f + perturb(label, t_ + 1);
    }
    std::uint64_t processed() const noexcept override { return t_; }
    std::size_t bytes() const noexcept override { return 0; }

private:
    double perturb(Label label, std::uint64_t t) const {
        const std::uint64_t h = derive_seed(seed_ ^ (label * 0x9e3779b97f4a7c15ull), t);
        switch (h & 3) {
            case 0: return upper_;
            case 1: return lower_;
            default: {
                const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
                return lower_ + (upper_ - lower_) * u;
            }
        }
    }

    double upper_;
    double lower_;
    std::uint64_t seed_;
    std::uint64_t t_ = 0;
    std::map<Label, std::uint64_t> counts_;
};

// Exact counts plus a fixed per-label offset (0 for unlisted labels).
class OffsetOracle final : public FrequencyOracle {
public:
    explicit OffsetOracle(std::map<Label, double> offsets) : offsets_(std::move(offsets)) {}

    double update(Label label) override {
        ++t_;
        return static_cast<double>(++counts_[label]) + offset(label);
    }
    double query(Label label) const override {
        auto it = counts_.find(label);
        return (it == counts_.end() ? 0.0 : static_cast<double>(it->second)) + offset(label);
    }
    std::uint64_t processed() const noexcept override { return t_; }
    std::size_t bytes() const noexcept override { return 0; }

private:
    double offset(Label label) const {
        auto it = offsets_.find(label);
        return it == offsets_.end() ? 0.0 : it->second;
    }

    std::map<Label, double> offsets_;
    std::map<Label, std::uint64_t> counts_;
    std::uint64_t t_ = 0;
};

struct NeighborOutcome {
    std::set<Label> isolated;       // tracked in exactly one run
    std::uint64_t max_isolated_f = 0;  // largest frequency (in X) of an isolated label
    std::size_t leaked_guarded = 0;  // isolated labels released under each rule
    std::size_t leaked_literal = 0;
};

// Runs tracking + release on X and on X minus position `removal` (0-based)
// with independent band oracles.
inline NeighborOutcome run_neighbors(const std::vector<Label>& x, std::size_t removal,
                                     std::size_t k, std::size_t k_tilde, double upper,
                                     double lower, std::uint64_t seed) {
    std::vector<Label> xp = x;
    xp.erase(xp.begin() + static_cast<long>(removal));
    BandOracle o(upper, lower, derive_seed(seed, 0));
    BandOracle op(upper, lower, derive_seed(seed, 1));
    const auto c = topk_track(o, x, k_tilde);
    const auto cp = topk_track(op, xp, k_tilde);

    NeighborOutcome out;
    std::map<Label, std::uint64_t> f;
    for (Label y : x) ++f[y];
    for (const auto& cand : c.tracked) {
        if (!cp.contains(cand.label)) out.isolated.insert(cand.label);
    }
    for (const auto& cand : cp.tracked) {
        if (!c.contains(cand.label)) out.isolated.insert(cand.label);
    }
    for (Label y : out.isolated) out.max_isolated_f = std::max(out.max_isolated_f, f[y]);

    const ErrorEnvelope env = constant_envelope(upper, lower);
    const std::uint64_t T = x.size();
    for (ThresholdRule rule : {ThresholdRule::guarded, ThresholdRule::literal}) {
        EehhOptions opts;
        opts.rule = rule;
        const auto r = eehh_release(c, o, T, k, k_tilde, env, 0.5, opts);
        const auto rp = eehh_release(cp, op, T - 1, k, k_tilde, env, 0.5, opts);
        std::size_t leaked = 0;
        for (Label y : out.isolated) leaked += r.contains(y) || rp.contains(y);
        (rule == ThresholdRule::guarded ? out.leaked_guarded : out.leaked_literal) += leaked;
    }
    return out;
}

}  // namespace dphh::testing
