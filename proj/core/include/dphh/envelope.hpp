#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace dphh {

/// Bounds on an oracle's error at stream time t:
/// gamma1(t) >= estimate - truth >= gamma2(t), each query failing with
/// probability at most failure_prob_per_query. Both functions must be
/// non-decreasing; gamma2 may be negative.
struct ErrorEnvelope {
    std::function<double(double)> gamma1;
    std::function<double(double)> gamma2;
    double failure_prob_per_query = 0.0;
};

/// gamma1 = gamma2 = 0: an exact oracle.
ErrorEnvelope zero_envelope();

/// Constant envelope [lower, upper] (lower <= upper).
ErrorEnvelope constant_envelope(double upper, double lower, double failure_prob = 0.0);

/// Checks gamma1 and gamma2 at 100 evenly spaced points of [0, horizon]:
/// both non-decreasing and gamma1 >= gamma2. Throws InvalidEnvelope.
void require_monotone(const ErrorEnvelope& envelope, double horizon);

/// Depth making the per-query failure probability delta / (2T):
/// ceil(ln(2T / delta)).
std::size_t envelope_depth(std::uint64_t stream_length, double delta);

/// Laplace noise margin (2d/epsilon) ln(4kd/delta) for a depth-d sketch whose
/// neighboring-stream sensitivity is 2d.
double sketch_noise_margin(std::size_t depth, std::size_t k, double epsilon, double delta);

/// Count-Min envelope for width 2k and depth envelope_depth(T, delta):
/// gamma1(t) = t/k + psi, gamma2(t) = -psi.
ErrorEnvelope cms_envelope(std::size_t k, std::uint64_t stream_length, double epsilon,
                           double delta);

/// Count Sketch envelope for width 2k and depth envelope_depth(T, delta).
/// With eta = sqrt(3/w) and F2 bounded by `f2_upper`:
/// gamma1(t) = eta sqrt(min(t^2, f2_upper)) + psi and
/// gamma2(t) = -(eta sqrt(f2_upper) + psi), constant so it stays non-decreasing.
/// The F2 at time t never exceeds t^2, which keeps gamma1 tight early on.
ErrorEnvelope cs_envelope(std::size_t k, std::uint64_t stream_length, double epsilon,
                          double delta, double f2_upper);

}  // namespace dphh
