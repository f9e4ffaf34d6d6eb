#ifndef SPLAYLIST_BENCH_RUNNER_HPP
#define SPLAYLIST_BENCH_RUNNER_HPP

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#if defined(__linux__)
#include <pthread.h>
#include <sched.h>
#endif

#include "splaylist/bench/skip_list.hpp"
#include "splaylist/bench/workload.hpp"
#include "splaylist/concurrent_splay_list.hpp"

namespace splaylist::bench {

enum class Structure { SplayList, SkipList };

inline std::string to_string(Structure s) { return s == Structure::SplayList ? "splaylist" : "skiplist"; }

inline Structure parse_structure(const std::string& text) {
    if (text == "splaylist") return Structure::SplayList;
    if (text == "skiplist") return Structure::SkipList;
    throw std::invalid_argument("unknown structure '" + text + "'");
}

struct RunConfig {
    Structure structure = Structure::SplayList;
    double p = 1.0;  ///< rebalancing probability; ignored by the skip-list
    int threads = 1;
    double duration = 10.0;   ///< seconds; used when ops == 0
    std::uint64_t ops = 0;    ///< total operations, split evenly across threads
    std::uint64_t seed = 1;
    bool pin = false;  ///< bind worker t to cpu t mod hardware threads
};

struct HeightPoint {
    std::int64_t key;
    std::uint64_t ops;
    int height;
};

struct RunResult {
    RunConfig config;
    std::string workload;
    std::uint64_t total_ops = 0;
    double seconds = 0;
    double ops_per_sec = 0;
    double mean_path_len = 0;       ///< links examined by the search phase
    double mean_rebalance_len = 0;  ///< nodes examined by rebalancing passes
    std::vector<std::uint64_t> per_thread_ops;
    std::vector<HeightPoint> heights;  ///< keys touched during the run
    std::string final_dump;            ///< splay-list state after the run, when requested
};

namespace detail {

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a * 0x9E3779B97F4A7C15ull + b + 0x632BE59BD9B4E019ull;
    x ^= x >> 31;
    x *= 0xBF58476D1CE4E5B9ull;
    return x ^ (x >> 29);
}

inline void pin_to_cpu(std::size_t t) {
#if defined(__linux__)
    const unsigned cpus = std::max(1u, std::thread::hardware_concurrency());
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(static_cast<int>(t % cpus), &set);
    pthread_setaffinity_np(pthread_self(), sizeof(set), &set);
#else
    (void)t;
#endif
}

struct ThreadTotals {
    std::uint64_t ops = 0;
    std::uint64_t path = 0;
    std::uint64_t rebalance = 0;
    std::vector<std::uint64_t> per_key;
};

template <class List, class Measure>
RunResult run_on(List& list, const WorkloadPlan& plan, const RunConfig& config, Measure measure) {
    const auto threads = static_cast<std::size_t>(config.threads);
    {
        auto loader = list.handle(threads);
        for (auto key : plan.prepopulation()) loader.insert(key);
    }

    std::vector<ThreadTotals> totals(threads);
    std::atomic<bool> stop{false};
    std::barrier start(static_cast<std::ptrdiff_t>(threads + 1));
    const std::uint64_t quota = config.ops / threads + 1;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            if (config.pin) pin_to_cpu(t);
            auto handle = list.handle(t);
            auto sampler = plan.sampler(mix(config.seed, t));
            ThreadTotals& mine = totals[t];
            mine.per_key.assign(static_cast<std::size_t>(plan.spec().n) + 1, 0);
            const std::uint64_t limit = config.ops > 0 ? quota - (t < config.ops % threads ? 0 : 1) : UINT64_MAX;
            start.arrive_and_wait();
            while (mine.ops < limit) {
                if (config.ops == 0 && (mine.ops & 63) == 0 && stop.load(std::memory_order_relaxed)) break;
                const BenchOp op = sampler.next();
                switch (op.kind) {
                    case verify::OpKind::Contains: handle.contains(op.key); break;
                    case verify::OpKind::Insert: handle.insert(op.key); break;
                    case verify::OpKind::Delete: handle.erase(op.key); break;
                }
                measure(handle, mine);
                ++mine.per_key[static_cast<std::size_t>(op.key)];
                ++mine.ops;
            }
        });
    }

    start.arrive_and_wait();
    const auto began = std::chrono::steady_clock::now();
    if (config.ops == 0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(config.duration));
        stop.store(true);
    }
    for (auto& th : pool) th.join();
    const auto ended = std::chrono::steady_clock::now();

    RunResult result;
    result.config = config;
    result.workload = plan.spec().to_string();
    result.seconds = std::chrono::duration<double>(ended - began).count();
    std::uint64_t path = 0;
    std::uint64_t rebalance = 0;
    std::vector<std::uint64_t> per_key(static_cast<std::size_t>(plan.spec().n) + 1, 0);
    for (const auto& t : totals) {
        result.per_thread_ops.push_back(t.ops);
        result.total_ops += t.ops;
        path += t.path;
        rebalance += t.rebalance;
        for (std::size_t k = 0; k < t.per_key.size(); ++k) per_key[k] += t.per_key[k];
    }
    if (result.total_ops > 0) {
        result.ops_per_sec = static_cast<double>(result.total_ops) / result.seconds;
        result.mean_path_len = static_cast<double>(path) / static_cast<double>(result.total_ops);
        result.mean_rebalance_len = static_cast<double>(rebalance) / static_cast<double>(result.total_ops);
    }
    for (std::size_t k = 1; k < per_key.size(); ++k) {
        if (per_key[k] == 0) continue;
        const auto key = static_cast<std::int64_t>(k);
        std::optional<int> h;
        if constexpr (requires { list.height_of(key); }) {
            h = list.height_of(key);
        } else {
            if (auto info = list.peek(key)) h = info->height;
        }
        if (h) result.heights.push_back({key, per_key[k], *h});
    }
    return result;
}

}  // namespace detail

/// One repetition: fresh structure, prepopulation outside the timed region,
/// then `threads` workers over the shared instance.
inline RunResult run_benchmark(const WorkloadSpec& spec, const RunConfig& config, bool keep_dump = false) {
    if (config.threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (config.duration < 0) throw std::invalid_argument("duration must be >= 0");
    const WorkloadPlan plan(spec, config.seed);
    if (config.ops == 0 && config.duration == 0) {
        RunResult empty;
        empty.config = config;
        empty.workload = spec.to_string();
        empty.per_thread_ops.assign(static_cast<std::size_t>(config.threads), 0);
        return empty;
    }
    if (config.structure == Structure::SkipList) {
        ConcurrentSkipList<std::int64_t> list(config.seed);
        return detail::run_on(list, plan, config, [](const auto& handle, detail::ThreadTotals& t) {
            t.path += handle.last_path_length();
        });
    }
    auto list = std::make_unique<ConcurrentSplayList<std::int64_t>>(config.p, config.seed);
    auto result = detail::run_on(*list, plan, config, [](const auto& handle, detail::ThreadTotals& t) {
        t.path += handle.last_cost().search_len;
        t.rebalance += handle.last_cost().backward_len;
    });
    if (keep_dump) result.final_dump = to_text(list->snapshot());
    return result;
}

}  // namespace splaylist::bench

#endif  // SPLAYLIST_BENCH_RUNNER_HPP
