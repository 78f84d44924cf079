#pragma once

#include <cstddef>
#include <cstdint>

#include <absl/container/flat_hash_map.h>

#include "dphh/sketch.hpp"
#include "dphh/types.hpp"

namespace dphh {

/// Frequency oracle consumed by top-k tracking and the envelope release.
/// update() ingests one arrival and returns the label's estimate right after
/// it; query() answers at any later time without changing state.
class FrequencyOracle {
public:
    virtual ~FrequencyOracle();

    virtual double update(Label label) = 0;
    virtual double query(Label label) const = 0;
    virtual std::uint64_t processed() const noexcept = 0;
    virtual std::size_t bytes() const noexcept = 0;
};

/// Oracle backed by a Count-Min or Count Sketch. A noised sketch has all its
/// noise in the cells from the start, so every answer is post-processing.
class SketchOracle final : public FrequencyOracle {
public:
    explicit SketchOracle(SketchMatrix sketch) : sketch_(std::move(sketch)) {}

    double update(Label label) override {
        sketch_.update(label);
        ++processed_;
        return sketch_.query(label);
    }
    double query(Label label) const override { return sketch_.query(label); }
    std::uint64_t processed() const noexcept override { return processed_; }
    std::size_t bytes() const noexcept override { return sketch_.bytes(); }

    const SketchMatrix& sketch() const noexcept { return sketch_; }

private:
    SketchMatrix sketch_;
    std::uint64_t processed_ = 0;
};

/// Exact counts; the zero-error reference oracle. Not private.
class ExactOracle final : public FrequencyOracle {
public:
    double update(Label label) override {
        ++processed_;
        return static_cast<double>(++counts_[label]);
    }
    double query(Label label) const override {
        auto it = counts_.find(label);
        return it == counts_.end() ? 0.0 : static_cast<double>(it->second);
    }
    std::uint64_t processed() const noexcept override { return processed_; }
    std::size_t bytes() const noexcept override {
        return counts_.bucket_count() * (sizeof(std::pair<Label, std::uint64_t>) + 1);
    }

private:
    absl::flat_hash_map<Label, std::uint64_t> counts_;
    std::uint64_t processed_ = 0;
};

}  // namespace dphh
