#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dphh/laplace.hpp"
#include "dphh/types.hpp"

namespace dphh {

enum class SketchKind : std::uint8_t { count_min = 0, count_sketch = 1 };

std::string_view to_string(SketchKind kind) noexcept;

struct SketchDimensions {
    std::size_t depth = 0;
    std::size_t width = 0;
};

/// d = ceil(log2(1/beta)), w = ceil(2/eta): Pr[f_hat - f > eta F1] <= beta.
SketchDimensions cms_dimensions(double beta, double eta);
/// d = ceil(ln(1/beta)), w = ceil(3/eta^2).
SketchDimensions cs_dimensions(double beta, double eta);

/// d x w grid of real-valued counters with seeded row hashes. Count-Min rows
/// add 1 at h_i(x); Count Sketch rows add g_i(x) in {-1, +1}.
///
/// Row hashes are 128-bit multiply-add with the high word mapped to [w];
/// signs come from an independent hash of the same form. All row seeds are
/// derived from one master seed, so (kind, d, w, seed) fixes the hash family.
class SketchMatrix {
public:
    SketchMatrix(SketchKind kind, std::size_t depth, std::size_t width, std::uint64_t seed);

    SketchKind kind() const noexcept { return kind_; }
    std::size_t depth() const noexcept { return depth_; }
    std::size_t width() const noexcept { return width_; }
    std::uint64_t seed() const noexcept { return seed_; }
    bool noised() const noexcept { return noise_scale_ > 0.0; }
    /// Scale of the Laplace noise added to every cell; 0 when un-noised.
    double noise_scale() const noexcept { return noise_scale_; }

    std::size_t bucket(std::size_t row, Label label) const noexcept;
    /// +1 or -1. Count-Min rows always report +1.
    int sign(std::size_t row, Label label) const noexcept;

    void update(Label label) noexcept;
    /// Count-Min: min over rows. Count Sketch: median over rows of the signed cell.
    double query(Label label) const noexcept;

    double cell(std::size_t row, std::size_t col) const noexcept {
        return cells_[row * width_ + col];
    }
    std::span<const double> row(std::size_t r) const noexcept {
        return {cells_.data() + r * width_, width_};
    }
    std::span<const double> cells() const noexcept { return cells_; }

    /// Adds Laplace(2d/epsilon) to every cell, row-major. Throws InvalidState
    /// if the sketch is already noised.
    void privatize(double epsilon, NoiseSource& noise);

    /// Cells x 8 bytes plus the per-row hash seeds.
    std::size_t bytes() const noexcept;

    friend bool operator==(const SketchMatrix&, const SketchMatrix&) = default;

private:
    friend SketchMatrix deserialize_sketch(std::span<const std::uint8_t> blob);

    struct RowHash {
        std::uint64_t a_hi, a_lo, b_hi, b_lo;  // bucket hash
        std::uint64_t c_hi, c_lo, d_hi, d_lo;  // sign hash

        friend bool operator==(const RowHash&, const RowHash&) = default;
    };

    SketchKind kind_;
    std::size_t depth_;
    std::size_t width_;
    std::uint64_t seed_;
    double noise_scale_ = 0.0;
    std::vector<RowHash> hashes_;
    std::vector<double> cells_;
};

SketchMatrix cms_build(std::size_t depth, std::size_t width, std::uint64_t seed);
void cms_update(SketchMatrix& sketch, Label label);
double cms_query(const SketchMatrix& sketch, Label label);

SketchMatrix cs_build(std::size_t depth, std::size_t width, std::uint64_t seed);
void cs_update(SketchMatrix& sketch, Label label);
double cs_query(const SketchMatrix& sketch, Label label);

/// Median over rows of sum_j C[i,j]^2. For a noised sketch the expected noise
/// contribution w * 2 * scale^2 is subtracted from each row first.
/// Throws InvalidKind for a Count-Min sketch.
double f2_estimate(const SketchMatrix& sketch);

/// Conservative F2 bound for envelopes: the largest (noise-corrected) row
/// estimate inflated by 3 standard deviations of a single row, sqrt(2/w).
double f2_upper_bound(const SketchMatrix& sketch);

/// Returns a noised copy; see SketchMatrix::privatize.
SketchMatrix privatize_sketch(SketchMatrix sketch, double epsilon, NoiseSource& noise);

/// Little-endian blob: "DPSK", u32 version, u8 kind, u32 depth, u32 width,
/// u64 seed, u8 noised, f64 noise scale, then depth*width f64 cells row-major.
std::vector<std::uint8_t> serialize_sketch(const SketchMatrix& sketch);

/// Inverse of serialize_sketch. Throws ParseError with the offending offset.
SketchMatrix deserialize_sketch(std::span<const std::uint8_t> blob);

inline constexpr std::uint32_t kSketchFormatVersion = 1;

}  // namespace dphh
