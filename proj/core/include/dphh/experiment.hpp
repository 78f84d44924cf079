#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dphh/eehh.hpp"
#include "dphh/ingest.hpp"

namespace dphh {

enum class Algo { mg, ss, dpss, dpmg, eehh_cms, eehh_cs, exact };

std::string_view to_string(Algo a) noexcept;
/// Throws InvalidParameter for an unknown tag.
Algo parse_algo(std::string_view tag);
bool is_private(Algo a) noexcept;

struct ZipfSource {
    double skew = 1.1;
    std::uint64_t length = 1'000'000;
    std::uint64_t universe = 500'000;
};

struct FileSource {
    std::string path;
    InputFormat format = InputFormat::tokens;
};

struct ExperimentConfig {
    Algo algo = Algo::dpss;
    std::size_t k = 128;
    std::size_t k_tilde_factor = 2;
    /// Overrides k * k_tilde_factor when set.
    std::optional<std::size_t> k_tilde;
    double epsilon = 1.0;
    double delta = 0.001;
    std::variant<ZipfSource, FileSource> source = ZipfSource{};
    std::uint64_t seed = 1;
    std::size_t repeats = 20;
    /// Updates fed to a throwaway structure before each timed pass.
    std::size_t warmup = 10'000;
    /// Worker threads for repeats; 1 runs them in order on the calling thread.
    std::size_t jobs = 1;
    ThresholdRule eehh_rule = ThresholdRule::guarded;

    std::size_t effective_k_tilde() const noexcept {
        return k_tilde ? *k_tilde : k * k_tilde_factor;
    }
};

/// Throws InvalidParameter for an unusable configuration.
void validate(const ExperimentConfig& config);

/// One CSV row. `run` is the repeat index, or "mean" / "p5" / "p95" for the
/// summary rows.
struct BenchmarkRecord {
    Algo algo = Algo::dpss;
    std::size_t k = 0;
    std::size_t k_tilde = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::optional<double> skew;  // empty for file inputs
    std::uint64_t length = 0;
    std::string run;
    double recall = 0.0;
    double precision = 0.0;
    double are = 0.0;
    double update_ns = 0.0;
    double bytes = 0.0;
    double released_count = 0.0;
};

/// One record per repeat followed by the mean, 5th and 95th percentile rows.
/// Repeat r uses seed + r for both the generated stream and the noise.
std::vector<BenchmarkRecord> run_experiment(const ExperimentConfig& config);

/// One repeat; exposed for tests.
BenchmarkRecord run_repeat(const ExperimentConfig& config, std::size_t run_index,
                           StreamView stream, std::optional<double> skew);

/// Mean, p5 and p95 rows over `runs` (linear interpolation between order
/// statistics).
std::vector<BenchmarkRecord> summarize(std::span<const BenchmarkRecord> runs);

/// Linear-interpolated percentile, q in [0, 100].
double percentile(std::vector<double> values, double q);

inline constexpr std::string_view kCsvHeader =
    "algo,k,ktilde,eps,delta,skew,length,run,recall,precision,are,update_ns,bytes,"
    "released_count";

void write_csv(std::ostream& out, std::span<const BenchmarkRecord> records,
               bool header = true);

enum class SweepParam { k, skew, eps, ktilde };

/// Throws InvalidParameter for an unknown name.
SweepParam parse_sweep_param(std::string_view name);

/// run_experiment for each value of `param`, concatenated.
std::vector<BenchmarkRecord> run_sweep(const ExperimentConfig& base, SweepParam param,
                                       std::span<const double> values);

}  // namespace dphh
