#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dphh/errors.hpp"
#include "dphh/experiment.hpp"
#include "dphh/state_sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitViolation = 3;

struct ExperimentArgs {
    std::string algo;
    std::size_t k = 128;
    std::size_t ktilde_factor = 2;
    double eps = 1.0;
    double delta = 0.001;
    double skew = 1.1;
    std::uint64_t length = 1'000'000;
    std::uint64_t universe = 500'000;
    std::string input;
    std::string format = "tokens";
    std::uint64_t seed = 1;
    std::size_t repeats = 20;
    std::size_t warmup = 10'000;
    std::size_t jobs = 1;
    bool timing_strict = false;
    std::string eehh_threshold = "guarded";
    std::string out = "-";
};

void add_experiment_options(CLI::App& app, ExperimentArgs& a) {
    app.add_option("--algo", a.algo, "mg, ss, dpss, dpmg, eehh-cms, eehh-cs or exact")->required();
    app.add_option("--k", a.k, "heavy-hitter parameter (threshold T/k)");
    app.add_option("--ktilde-factor", a.ktilde_factor, "expanded capacity k~ = factor * k");
    app.add_option("--eps", a.eps, "privacy parameter epsilon");
    app.add_option("--delta", a.delta, "privacy parameter delta");
    auto* zipf = app.add_option("--zipf", a.skew, "Zipf skew of the generated stream");
    auto* length = app.add_option("--length", a.length, "generated stream length");
    auto* universe = app.add_option("--universe", a.universe, "generated label universe");
    auto* input = app.add_option("--input", a.input, "read the stream from a file");
    auto* format = app.add_option("--format", a.format, "tokens or u64le")->needs(input);
    input->excludes(zipf)->excludes(length)->excludes(universe);
    (void)format;
    app.add_option("--seed", a.seed, "master seed; repeat r uses seed + r");
    app.add_option("--repeats", a.repeats, "number of repeats");
    app.add_option("--warmup", a.warmup, "updates fed to a throwaway structure before timing");
    app.add_option("--jobs", a.jobs, "worker threads for repeats");
    app.add_flag("--timing-strict", a.timing_strict, "run repeats sequentially");
    app.add_option("--eehh-threshold", a.eehh_threshold, "guarded or literal");
    app.add_option("--out", a.out, "CSV output path, - for stdout");
}

dphh::ExperimentConfig to_config(const ExperimentArgs& a) {
    dphh::ExperimentConfig c;
    c.algo = dphh::parse_algo(a.algo);
    c.k = a.k;
    c.k_tilde_factor = a.ktilde_factor;
    c.epsilon = a.eps;
    c.delta = a.delta;
    if (!a.input.empty()) {
        c.source = dphh::FileSource{a.input, dphh::parse_input_format(a.format)};
    } else {
        c.source = dphh::ZipfSource{a.skew, a.length, a.universe};
    }
    c.seed = a.seed;
    c.repeats = a.repeats;
    c.warmup = a.warmup;
    c.jobs = a.timing_strict ? 1 : a.jobs;
    if (a.eehh_threshold == "guarded") {
        c.eehh_rule = dphh::ThresholdRule::guarded;
    } else if (a.eehh_threshold == "literal") {
        c.eehh_rule = dphh::ThresholdRule::literal;
    } else {
        throw dphh::InvalidParameter("unknown --eehh-threshold: " + a.eehh_threshold);
    }
    return c;
}

void emit(const std::string& out, const std::vector<dphh::BenchmarkRecord>& rows) {
    if (out == "-") {
        dphh::write_csv(std::cout, rows);
        return;
    }
    std::ofstream f(out);
    if (!f) throw dphh::InvalidParameter("cannot open " + out + " for writing");
    dphh::write_csv(f, rows);
    if (!f.flush()) throw std::runtime_error("write to " + out + " failed");
}

struct VerifyArgs {
    std::size_t universe = 16;
    std::size_t length = 200;
    std::size_t k_min = 2;
    std::size_t k_max = 8;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    bool exhaustive = false;
    bool canonical = false;
    std::string relation = "stated";
    std::size_t max_examples = 3;
};

void print_stats(const dphh::SweepStats& s, dphh::TransitionRelation rel) {
    using dphh::StateTag;
    std::printf("trajectories %llu, classifications %llu\n",
                static_cast<unsigned long long>(s.trajectories),
                static_cast<unsigned long long>(s.classifications));
    std::printf("violations %llu, bad initial %llu, illegal transitions %llu, corollary failures %llu\n",
                static_cast<unsigned long long>(s.violations),
                static_cast<unsigned long long>(s.bad_initial),
                static_cast<unsigned long long>(s.illegal_transitions),
                static_cast<unsigned long long>(s.corollary_failures));
    std::printf("states:");
    for (int a = 0; a < 4; ++a) std::printf(" S%d=%llu", a + 1, static_cast<unsigned long long>(s.states[a]));
    std::printf("\ntransitions (row = from):\n");
    for (int a = 0; a < 4; ++a) {
        std::printf("  S%d", a + 1);
        for (int b = 0; b < 4; ++b) {
            std::printf(" %12llu", static_cast<unsigned long long>(s.transitions[a][b]));
        }
        std::printf("\n");
    }
    for (auto [from, to] : s.outside(rel)) {
        std::printf("outside relation: %s -> %s\n", std::string(to_string(from)).c_str(),
                    std::string(to_string(to)).c_str());
    }
    for (auto [from, to] : s.unwitnessed(rel)) {
        std::printf("never observed: %s -> %s\n", std::string(to_string(from)).c_str(),
                    std::string(to_string(to)).c_str());
    }
    for (const auto& e : s.examples) std::printf("---\n%s", e.c_str());
}

int verify_states(const VerifyArgs& a) {
    dphh::TransitionRelation rel;
    if (a.relation == "stated") {
        rel = dphh::TransitionRelation::stated;
    } else if (a.relation == "extended") {
        rel = dphh::TransitionRelation::extended;
    } else {
        throw dphh::InvalidParameter("unknown --relation: " + a.relation);
    }
    if (a.k_min < 1 || a.k_max < a.k_min) throw dphh::InvalidParameter("bad k range");
    if (a.universe == 0 || a.length == 0) throw dphh::InvalidParameter("universe and length must be positive");

    dphh::SweepStats stats;
    if (a.exhaustive) {
        dphh::ExhaustiveConfig c;
        c.universe = a.universe;
        c.max_length = a.length;
        c.ks.clear();
        for (std::size_t k = a.k_min; k <= a.k_max; ++k) c.ks.push_back(k);
        c.canonical_only = a.canonical;
        c.relation = rel;
        c.max_examples = a.max_examples;
        stats = dphh::exhaustive_sweep(c);
    } else {
        dphh::RandomSweepConfig c;
        c.universe = a.universe;
        c.length = a.length;
        c.k_min = a.k_min;
        c.k_max = a.k_max;
        c.trials = a.trials;
        c.seed = a.seed;
        c.relation = rel;
        c.max_examples = a.max_examples;
        stats = dphh::random_sweep(c);
    }
    print_stats(stats, rel);
    return stats.failures() == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Private heavy-hitter experiments and state-machine verification"};
    app.require_subcommand(1);

    ExperimentArgs run_args;
    auto* run = app.add_subcommand("run", "run one configuration and write CSV");
    add_experiment_options(*run, run_args);

    ExperimentArgs sweep_args;
    std::string sweep_param;
    std::vector<double> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "run a configuration over a list of parameter values");
    add_experiment_options(*sweep, sweep_args);
    sweep->add_option("--param", sweep_param, "k, skew, eps or ktilde")->required();
    sweep->add_option("--values", sweep_values, "values of the swept parameter")->required();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify-states", "check neighbor-run table states");
    verify->add_option("--universe", verify_args.universe, "label universe");
    verify->add_option("--length", verify_args.length, "stream length (maximum length with --exhaustive)");
    verify->add_option("--k-min", verify_args.k_min, "smallest capacity");
    verify->add_option("--k-max", verify_args.k_max, "largest capacity");
    verify->add_option("--trials", verify_args.trials, "random trajectories");
    verify->add_option("--seed", verify_args.seed, "seed for random trials");
    verify->add_flag("--exhaustive", verify_args.exhaustive, "enumerate every stream instead of sampling");
    verify->add_flag("--canonical", verify_args.canonical, "with --exhaustive, one stream per relabeling class");
    verify->add_option("--relation", verify_args.relation, "stated or extended");
    verify->add_option("--max-examples", verify_args.max_examples, "failure dumps to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParameter;
    }

    try {
        if (*run) {
            emit(run_args.out, dphh::run_experiment(to_config(run_args)));
        } else if (*sweep) {
            const auto param = dphh::parse_sweep_param(sweep_param);
            emit(sweep_args.out, dphh::run_sweep(to_config(sweep_args), param, sweep_values));
        } else if (*verify) {
            return verify_states(verify_args);
        }
    } catch (const dphh::StateMachineViolation& e) {
        std::cerr << e.what() << '\n';
        return kExitViolation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const dphh::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
