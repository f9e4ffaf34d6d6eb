#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splaylist/bench/results.hpp"
#include "splaylist/bench/runner.hpp"
#include "splaylist/bench/workload.hpp"

#ifndef SPLAYLIST_BUILD_DESCRIBE
#define SPLAYLIST_BUILD_DESCRIBE "unknown"
#endif

namespace sb = splaylist::bench;

int main(int argc, char** argv) {
    CLI::App app{"Throughput and path-length benchmark for the splay-list and a skip-list baseline"};
    std::string structure = "splaylist";
    std::vector<double> probabilities{1.0};
    std::vector<int> thread_counts{1};
    std::string workload = "100000-90-10";
    double duration = 10.0;
    std::uint64_t ops = 0;
    int reps = 10;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    bool quiet = false;
    bool pin = false;

    app.add_option("--structure", structure, "splaylist or skiplist")
        ->check(CLI::IsMember({"splaylist", "skiplist"}));
    app.add_option("--p", probabilities, "rebalancing probability; several values run a sweep")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--threads", thread_counts, "worker threads; several values run a sweep")
        ->check(CLI::PositiveNumber);
    app.add_option("--workload", workload, "n-x-y | general:n-r-x-y-s | zipf:n:exp | uniform:n");
    app.add_option("--duration", duration, "seconds per repetition")->check(CLI::NonNegativeNumber);
    app.add_option("--ops", ops, "fixed total operation count instead of a duration");
    app.add_option("--reps", reps, "repetitions; repetition i uses seed + i")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "base seed");
    app.add_option("--out", out,
                   "output file, '-' for stdout; defaults to $SPLAYLIST_BENCH_DIR/bench.<format> when that is set");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--quiet", quiet, "no summary table");
    app.add_flag("--pin", pin, "pin worker threads to cpus");
    CLI11_PARSE(app, argc, argv);

    sb::WorkloadSpec spec;
    try {
        spec = sb::parse_workload(workload);
    } catch (const std::exception& e) {
        std::cerr << "bench: " << e.what() << '\n';
        return 2;
    }
    for (double p : probabilities) {
        if (p <= 0.0) {
            std::cerr << "bench: --p must be in (0, 1]\n";
            return 2;
        }
    }

    if (out.empty()) {
        if (const char* dir = std::getenv("SPLAYLIST_BENCH_DIR"); dir != nullptr && *dir != '\0') {
            out = (std::filesystem::path(dir) / ("bench." + format)).string();
        }
    }

    std::vector<sb::RunResult> runs;
    try {
        for (int threads : thread_counts) {
            for (double p : probabilities) {
                for (int rep = 0; rep < reps; ++rep) {
                    sb::RunConfig config;
                    config.structure = sb::parse_structure(structure);
                    config.p = p;
                    config.threads = threads;
                    config.duration = duration;
                    config.ops = ops;
                    config.seed = seed + static_cast<std::uint64_t>(rep);
                    config.pin = pin;
                    runs.push_back(sb::run_benchmark(spec, config));
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "bench: " << e.what() << '\n';
        return 1;
    }

    if (!quiet && out != "-") sb::write_summary(std::cout, runs);

    auto emit = [&](std::ostream& os) {
        if (format == "csv") {
            sb::write_csv(os, runs);
        } else {
            os << sb::to_json(runs, SPLAYLIST_BUILD_DESCRIBE).dump(2) << '\n';
        }
    };
    if (out == "-") {
        emit(std::cout);
    } else if (!out.empty()) {
        std::ofstream file(out);
        if (!file) {
            std::cerr << "bench: cannot write " << out << '\n';
            return 1;
        }
        emit(file);
        if (!file) {
            std::cerr << "bench: write to " << out << " failed\n";
            return 1;
        }
    }
    return 0;
}
