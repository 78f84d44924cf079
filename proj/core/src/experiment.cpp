#include "dphh/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "dphh/errors.hpp"
#include "dphh/laplace.hpp"
#include "dphh/metrics.hpp"
#include "dphh/misra_gries.hpp"
#include "dphh/oracle.hpp"
#include "dphh/privacy.hpp"
#include "dphh/release.hpp"
#include "dphh/sketch.hpp"
#include "dphh/space_saving.hpp"
#include "dphh/top_k.hpp"
#include "dphh/zipf.hpp"

namespace dphh {

std::string_view to_string(Algo a) noexcept {
    switch (a) {
        case Algo::mg: return "mg";
        case Algo::ss: return "ss";
        case Algo::dpss: return "dpss";
        case Algo::dpmg: return "dpmg";
        case Algo::eehh_cms: return "eehh-cms";
        case Algo::eehh_cs: return "eehh-cs";
        case Algo::exact: return "exact";
    }
    return "?";
}

Algo parse_algo(std::string_view tag) {
    for (Algo a : {Algo::mg, Algo::ss, Algo::dpss, Algo::dpmg, Algo::eehh_cms, Algo::eehh_cs,
                   Algo::exact}) {
        if (tag == to_string(a)) return a;
    }
    throw InvalidParameter("unknown algorithm '" + std::string(tag) + "'");
}

bool is_private(Algo a) noexcept {
    return a == Algo::dpss || a == Algo::dpmg || a == Algo::eehh_cms || a == Algo::eehh_cs;
}

void validate(const ExperimentConfig& c) {
    if (c.k < 1) throw InvalidParameter("k must be at least 1");
    if (c.repeats < 1) throw InvalidParameter("repeats must be at least 1");
    if (!c.k_tilde && c.k_tilde_factor < 2) {
        throw InvalidParameter("ktilde factor must be at least 2");
    }
    if (c.effective_k_tilde() <= c.k) throw InvalidParameter("k_tilde must exceed k");
    if (c.jobs < 1) throw InvalidParameter("jobs must be at least 1");
    if (is_private(c.algo)) {
        if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
            throw InvalidParameter("epsilon must be positive");
        }
        if (!(c.delta > 0.0 && c.delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
    }
    if (const auto* z = std::get_if<ZipfSource>(&c.source)) {
        if (!(z->skew >= 1.0 && z->skew <= 4.0)) {
            throw InvalidParameter("skew must lie in [1.0, 4.0]");
        }
        if (z->universe < 1) throw InvalidParameter("universe must be at least 1");
    } else {
        if (std::get<FileSource>(c.source).path.empty()) {
            throw InvalidParameter("input path is empty");
        }
    }
}

namespace {

using Clock = std::chrono::steady_clock;

// Replays the head of the stream (cyclically) into a structure the caller
// then discards.
template <typename F>
void warm_up(std::size_t n, StreamView stream, F&& feed) {
    if (stream.empty()) return;
    for (std::size_t j = 0; j < n; ++j) feed(stream[j % stream.size()]);
}

struct PassResult {
    ReleaseReport report;
    double update_ns = 0.0;
    std::size_t bytes = 0;
};

template <typename F>
double timed_ns_per_update(StreamView stream, F&& feed) {
    const auto start = Clock::now();
    for (Label x : stream) feed(x);
    const auto stop = Clock::now();
    if (stream.empty()) return 0.0;
    return std::chrono::duration<double, std::nano>(stop - start).count() /
           static_cast<double>(stream.size());
}

ReleaseReport threshold_counts(const StreamSummary& s, double tau, Mechanism tag) {
    ReleaseReport r;
    r.mechanism = tag;
    r.threshold = tau;
    r.stream_length = s.processed;
    for (const Counter& c : s.counters) {
        if (static_cast<double>(c.count) > tau) {
            r.released.push_back({c.label, static_cast<double>(c.count)});
        }
    }
    return r;
}

PassResult run_counter(const ExperimentConfig& c, StreamView stream, NoiseSource& noise) {
    const std::size_t kt = c.effective_k_tilde();
    const double T = static_cast<double>(stream.size());
    PassResult out;
    const bool mg_family = c.algo == Algo::mg || c.algo == Algo::dpmg;
    StreamSummary summary;
    if (mg_family) {
        {
            MisraGries warm(kt);
            warm_up(c.warmup, stream, [&](Label x) { warm.update(x); });
        }
        MisraGries mg(kt);
        out.update_ns = timed_ns_per_update(stream, [&](Label x) { mg.update(x); });
        out.bytes = mg.bytes();
        summary = mg.summary();
    } else {
        {
            SpaceSaving warm(kt);
            warm_up(c.warmup, stream, [&](Label x) { warm.update(x); });
        }
        SpaceSaving ss(kt);
        out.update_ns = timed_ns_per_update(stream, [&](Label x) { ss.update(x); });
        out.bytes = ss.bytes();
        summary = ss.summary();
    }
    switch (c.algo) {
        case Algo::dpss:
            out.report = dpss_release(summary, PrivacyParams(c.epsilon, c.delta, c.k, kt), noise);
            break;
        case Algo::dpmg:
            out.report = dpmg_release(summary, PrivacyParams(c.epsilon, c.delta, c.k, kt), noise);
            break;
        default:
            // Non-private counters report every tracked count above T/k. The
            // mechanism tag is meaningless here; the CSV carries the algo.
            out.report = threshold_counts(summary, T / static_cast<double>(c.k), Mechanism::dpss);
            break;
    }
    return out;
}

PassResult run_exact(const ExperimentConfig& c, StreamView stream) {
    PassResult out;
    {
        ExactOracle warm;
        warm_up(c.warmup, stream, [&](Label x) { warm.update(x); });
    }
    ExactOracle oracle;
    out.update_ns = timed_ns_per_update(stream, [&](Label x) { oracle.update(x); });
    out.bytes = oracle.bytes();
    const HeavyHitters hh = exact_heavy_hitters(stream, c.k);
    out.report.threshold = hh.threshold;
    out.report.stream_length = stream.size();
    for (Label y : hh.labels) {
        out.report.released.push_back({y, static_cast<double>(hh.frequencies.at(y))});
    }
    return out;
}

PassResult run_sketch(const ExperimentConfig& c, StreamView stream, std::uint64_t run_seed,
                      NoiseSource& noise) {
    const std::size_t kt = c.effective_k_tilde();
    const std::uint64_t T = stream.size();
    const SketchKind kind =
        c.algo == Algo::eehh_cms ? SketchKind::count_min : SketchKind::count_sketch;
    const std::size_t depth = envelope_depth(T, c.delta);
    const std::size_t width = 2 * kt;
    const std::uint64_t hash_seed = derive_seed(run_seed, 2);

    PassResult out;
    {
        SketchOracle warm(SketchMatrix(kind, depth, width, hash_seed));
        TopKTracker warm_tracker(kt);
        warm_up(c.warmup, stream, [&](Label x) { warm_tracker.observe(x, warm.update(x)); });
    }
    SketchMatrix sketch(kind, depth, width, hash_seed);
    sketch.privatize(c.epsilon, noise);
    SketchOracle oracle(std::move(sketch));
    TopKTracker tracker(kt);
    out.update_ns =
        timed_ns_per_update(stream, [&](Label x) { tracker.observe(x, oracle.update(x)); });
    out.bytes = oracle.bytes() + tracker.bytes();

    const ErrorEnvelope envelope =
        kind == SketchKind::count_min
            ? cms_envelope(kt, T, c.epsilon, c.delta)
            : cs_envelope(kt, T, c.epsilon, c.delta, f2_upper_bound(oracle.sketch()));
    EehhOptions opts;
    opts.rule = c.eehh_rule;
    opts.mechanism = kind == SketchKind::count_min ? Mechanism::eehh_cms : Mechanism::eehh_cs;
    out.report =
        eehh_release(tracker.candidates(), oracle, T, c.k, kt, envelope, c.delta, opts);
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Stream load_stream(const ExperimentConfig& c, std::size_t run_index) {
    if (const auto* z = std::get_if<ZipfSource>(&c.source)) {
        return generate_zipf(z->length, z->universe, z->skew, c.seed + run_index);
    }
    const auto& f = std::get<FileSource>(c.source);
    return ingest(f.path, f.format);
}

}  // namespace

BenchmarkRecord run_repeat(const ExperimentConfig& c, std::size_t run_index, StreamView stream,
                           std::optional<double> skew) {
    const std::uint64_t run_seed = c.seed + run_index;
    NoiseSource noise(derive_seed(run_seed, 1));
    PassResult pass;
    switch (c.algo) {
        case Algo::exact: pass = run_exact(c, stream); break;
        case Algo::eehh_cms:
        case Algo::eehh_cs: pass = run_sketch(c, stream, run_seed, noise); break;
        default: pass = run_counter(c, stream, noise); break;
    }
    const Metrics m = compute_metrics(pass.report, exact_heavy_hitters(stream, c.k));
    BenchmarkRecord r;
    r.algo = c.algo;
    r.k = c.k;
    r.k_tilde = c.effective_k_tilde();
    r.epsilon = c.epsilon;
    r.delta = c.delta;
    r.skew = skew;
    r.length = stream.size();
    r.run = std::to_string(run_index);
    r.recall = m.recall;
    r.precision = m.precision;
    r.are = m.are;
    r.update_ns = pass.update_ns;
    r.bytes = static_cast<double>(pass.bytes);
    r.released_count = static_cast<double>(m.released_count);
    return r;
}

std::vector<BenchmarkRecord> run_experiment(const ExperimentConfig& c) {
    validate(c);
    std::optional<double> skew;
    if (const auto* z = std::get_if<ZipfSource>(&c.source)) skew = z->skew;

    std::vector<BenchmarkRecord> runs(c.repeats);
    // A file is read once and shared by every repeat.
    Stream shared;
    if (!skew) shared = load_stream(c, 0);
    const auto one = [&](std::size_t r) {
        if (skew) {
            const Stream s = load_stream(c, r);
            runs[r] = run_repeat(c, r, s, skew);
        } else {
            runs[r] = run_repeat(c, r, shared, skew);
        }
    };

    const std::size_t jobs = std::min(c.jobs, c.repeats);
    if (jobs <= 1) {
        for (std::size_t r = 0; r < c.repeats; ++r) one(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        {
            std::vector<std::jthread> workers;
            for (std::size_t j = 0; j < jobs; ++j) {
                workers.emplace_back([&] {
                    for (std::size_t r; !failed && (r = next++) < c.repeats;) {
                        try {
                            one(r);
                        } catch (...) {
                            if (!failed.exchange(true)) failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<BenchmarkRecord> out = runs;
    const auto summary = summarize(runs);
    out.insert(out.end(), summary.begin(), summary.end());
    return out;
}

double percentile(std::vector<double> v, double q) {
    if (v.empty()) throw InvalidParameter("percentile of an empty sample");
    if (!(q >= 0.0 && q <= 100.0)) throw InvalidParameter("percentile rank must be in [0, 100]");
    std::sort(v.begin(), v.end());
    const double pos = q / 100.0 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + (v[hi] - v[lo]) * frac;
}

std::vector<BenchmarkRecord> summarize(std::span<const BenchmarkRecord> runs) {
    if (runs.empty()) return {};
    using Field = double BenchmarkRecord::*;
    constexpr Field kFields[] = {&BenchmarkRecord::recall,   &BenchmarkRecord::precision,
                                 &BenchmarkRecord::are,      &BenchmarkRecord::update_ns,
                                 &BenchmarkRecord::bytes,    &BenchmarkRecord::released_count};
    std::vector<BenchmarkRecord> out;
    for (const char* tag : {"mean", "p5", "p95"}) {
        BenchmarkRecord row = runs.front();
        row.run = tag;
        for (Field f : kFields) {
            std::vector<double> v;
            v.reserve(runs.size());
            for (const auto& r : runs) v.push_back(r.*f);
            if (row.run == "mean") {
                double s = 0.0;
                for (double x : v) s += x;
                row.*f = s / static_cast<double>(v.size());
            } else {
                row.*f = percentile(std::move(v), row.run == "p5" ? 5.0 : 95.0);
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

void write_csv(std::ostream& out, std::span<const BenchmarkRecord> records, bool header) {
    if (header) out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << to_string(r.algo) << ',' << r.k << ',' << r.k_tilde << ','
            << format_double(r.epsilon) << ',' << format_double(r.delta) << ','
            << (r.skew ? format_double(*r.skew) : std::string()) << ',' << r.length << ','
            << r.run << ',' << format_double(r.recall) << ',' << format_double(r.precision)
            << ',' << format_double(r.are) << ',' << format_double(r.update_ns) << ','
            << format_double(r.bytes) << ',' << format_double(r.released_count) << '\n';
    }
}

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "k") return SweepParam::k;
    if (name == "skew") return SweepParam::skew;
    if (name == "eps") return SweepParam::eps;
    if (name == "ktilde") return SweepParam::ktilde;
    throw InvalidParameter("unknown sweep parameter '" + std::string(name) +
                           "' (expected k, skew, eps or ktilde)");
}

std::vector<BenchmarkRecord> run_sweep(const ExperimentConfig& base, SweepParam param,
                                       std::span<const double> values) {
    if (values.empty()) throw InvalidParameter("sweep needs at least one value");
    const auto as_count = [](double v, const char* what) {
        if (!(v >= 1.0) || v != std::floor(v)) {
            throw InvalidParameter(std::string(what) + " values must be positive integers");
        }
        return static_cast<std::size_t>(v);
    };
    std::vector<BenchmarkRecord> out;
    for (double v : values) {
        ExperimentConfig c = base;
        switch (param) {
            case SweepParam::k: c.k = as_count(v, "k"); break;
            case SweepParam::eps: c.epsilon = v; break;
            case SweepParam::ktilde:
                c.k_tilde.reset();
                c.k_tilde_factor = as_count(v, "ktilde factor");
                break;
            case SweepParam::skew: {
                auto* z = std::get_if<ZipfSource>(&c.source);
                if (!z) throw InvalidParameter("a skew sweep needs a Zipf source");
                z->skew = v;
                break;
            }
        }
        const auto rows = run_experiment(c);
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

}  // namespace dphh
