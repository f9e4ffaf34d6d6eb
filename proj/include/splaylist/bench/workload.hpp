#ifndef SPLAYLIST_BENCH_WORKLOAD_HPP
#define SPLAYLIST_BENCH_WORKLOAD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "splaylist/verify/op_stream.hpp"

namespace splaylist::bench {

enum class Distribution { Skewed, Uniform, Zipf, General };

/// Parsed form of `n-x-y`, `uniform:n`, `zipf:n:exp` or `general:n-r-x-y-s`.
struct WorkloadSpec {
    Distribution distribution = Distribution::Skewed;
    std::int64_t n = 100000;
    double read_pct = 100;      // r
    double hot_ops_pct = 90;    // x
    double hot_keys_pct = 10;   // y
    double update_keys_pct = 0; // s
    double zipf_exponent = 1.0;

    std::string to_string() const {
        std::ostringstream out;
        switch (distribution) {
            case Distribution::Skewed: out << n << '-' << hot_ops_pct << '-' << hot_keys_pct; break;
            case Distribution::Uniform: out << "uniform:" << n; break;
            case Distribution::Zipf: out << "zipf:" << n << ':' << zipf_exponent; break;
            case Distribution::General:
                out << "general:" << n << '-' << read_pct << '-' << hot_ops_pct << '-' << hot_keys_pct << '-'
                    << update_keys_pct;
                break;
        }
        return out.str();
    }
};

namespace detail {

inline std::vector<double> split_numbers(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (part.empty() || used != part.size()) throw std::invalid_argument("workload: bad number '" + part + "'");
        out.push_back(v);
    }
    return out;
}

inline std::int64_t as_count(double v) {
    if (v < 1 || v != std::floor(v)) throw std::invalid_argument("workload: n must be a positive integer");
    return static_cast<std::int64_t>(v);
}

inline void check_pct(double v) {
    if (v < 0 || v > 100) throw std::invalid_argument("workload: percentages must lie in [0, 100]");
}

}  // namespace detail

inline WorkloadSpec parse_workload(const std::string& text) {
    WorkloadSpec spec;
    auto after = [&](const std::string& prefix) { return text.substr(prefix.size()); };
    if (text.rfind("uniform:", 0) == 0) {
        spec.distribution = Distribution::Uniform;
        const auto v = detail::split_numbers(after("uniform:"), ':');
        if (v.size() != 1) throw std::invalid_argument("workload: expected uniform:n");
        spec.n = detail::as_count(v[0]);
        spec.hot_ops_pct = spec.hot_keys_pct = 100;
    } else if (text.rfind("zipf:", 0) == 0) {
        spec.distribution = Distribution::Zipf;
        const auto v = detail::split_numbers(after("zipf:"), ':');
        if (v.size() != 2) throw std::invalid_argument("workload: expected zipf:n:exp");
        spec.n = detail::as_count(v[0]);
        spec.zipf_exponent = v[1];
        if (!(spec.zipf_exponent >= 0)) throw std::invalid_argument("workload: zipf exponent must be >= 0");
    } else if (text.rfind("general:", 0) == 0) {
        spec.distribution = Distribution::General;
        const auto v = detail::split_numbers(after("general:"), '-');
        if (v.size() != 5) throw std::invalid_argument("workload: expected general:n-r-x-y-s");
        spec.n = detail::as_count(v[0]);
        spec.read_pct = v[1];
        spec.hot_ops_pct = v[2];
        spec.hot_keys_pct = v[3];
        spec.update_keys_pct = v[4];
    } else {
        const auto v = detail::split_numbers(text, '-');
        if (v.size() != 3) throw std::invalid_argument("workload: expected n-x-y");
        spec.n = detail::as_count(v[0]);
        spec.hot_ops_pct = v[1];
        spec.hot_keys_pct = v[2];
    }
    for (double pct : {spec.read_pct, spec.hot_ops_pct, spec.hot_keys_pct, spec.update_keys_pct}) detail::check_pct(pct);
    return spec;
}

struct BenchOp {
    verify::OpKind kind;
    std::int64_t key;
};

/// Key sets drawn once per run. Keys are 1..n.
class WorkloadPlan {
public:
    WorkloadPlan(const WorkloadSpec& spec, std::uint64_t seed) : spec_(spec) {
        std::mt19937_64 rng(seed);
        const auto n = spec.n;
        std::vector<std::int64_t> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), std::int64_t{1});

        auto take = [&rng](std::vector<std::int64_t> pool, double pct) {
            const auto count = static_cast<std::size_t>(std::floor(static_cast<double>(pool.size()) * pct / 100.0));
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(count);
            std::sort(pool.begin(), pool.end());
            return pool;
        };
        auto minus = [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
            std::vector<std::int64_t> out;
            std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
            return out;
        };

        switch (spec.distribution) {
            case Distribution::Uniform:
                prepopulate_ = all;
                hot_ = all;
                break;
            case Distribution::Skewed:
                prepopulate_ = all;
                hot_ = take(all, spec.hot_keys_pct);
                if (hot_.empty()) throw std::invalid_argument("workload: y * n must be at least 1");
                cold_ = minus(all, hot_);
                break;
            case Distribution::Zipf: {
                prepopulate_ = all;
                rank_to_key_ = all;
                std::shuffle(rank_to_key_.begin(), rank_to_key_.end(), rng);
                std::vector<double> weights(static_cast<std::size_t>(n));
                for (std::size_t r = 0; r < weights.size(); ++r) {
                    weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent);
                }
                zipf_ = std::make_shared<std::discrete_distribution<std::size_t>>(weights.begin(), weights.end());
                break;
            }
            case Distribution::General: {
                // The prepopulation probability is taken to be 50%.
                std::bernoulli_distribution coin(0.5);
                for (auto k : all) {
                    if (coin(rng)) prepopulate_.push_back(k);
                }
                updates_ = take(all, spec.update_keys_pct);
                hot_ = take(prepopulate_, spec.hot_keys_pct);
                if (hot_.empty() && spec.read_pct > 0 && spec.hot_ops_pct > 0) {
                    throw std::invalid_argument("workload: y * n must be at least 1");
                }
                cold_ = minus(all, hot_);
                if (updates_.empty() && spec.read_pct < 100) {
                    throw std::invalid_argument("workload: s * n must be at least 1");
                }
                break;
            }
        }
        std::shuffle(prepopulate_.begin(), prepopulate_.end(), rng);
    }

    const WorkloadSpec& spec() const { return spec_; }
    /// Keys to insert before timing, in insertion order.
    const std::vector<std::int64_t>& prepopulation() const { return prepopulate_; }
    const std::vector<std::int64_t>& hot_keys() const { return hot_; }
    const std::vector<std::int64_t>& cold_keys() const { return cold_; }
    const std::vector<std::int64_t>& update_keys() const { return updates_; }
    const std::vector<std::int64_t>& zipf_ranking() const { return rank_to_key_; }

    /// Per-thread operation source; deterministic for a given seed.
    class Sampler {
    public:
        Sampler(const WorkloadPlan& plan, std::uint64_t seed) : plan_(&plan), rng_(seed) {
            if (plan.zipf_) zipf_ = *plan.zipf_;
        }

        BenchOp next() {
            const WorkloadSpec& s = plan_->spec_;
            switch (s.distribution) {
                case Distribution::Uniform: return {verify::OpKind::Contains, pick(plan_->hot_)};
                case Distribution::Zipf: return {verify::OpKind::Contains, plan_->rank_to_key_[zipf_(rng_)]};
                case Distribution::Skewed: return {verify::OpKind::Contains, skewed()};
                case Distribution::General: {
                    const double u = percent_(rng_);
                    if (u < s.read_pct) return {verify::OpKind::Contains, skewed()};
                    const bool insert = u < s.read_pct + (100.0 - s.read_pct) / 2.0;
                    return {insert ? verify::OpKind::Insert : verify::OpKind::Delete, pick(plan_->updates_)};
                }
            }
            return {verify::OpKind::Contains, 0};
        }

    private:
        std::int64_t pick(const std::vector<std::int64_t>& pool) {
            return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng_)];
        }

        std::int64_t skewed() {
            const auto& hot = plan_->hot_;
            const auto& cold = plan_->cold_;
            const bool use_hot = percent_(rng_) < plan_->spec_.hot_ops_pct;
            if ((use_hot && !hot.empty()) || cold.empty()) return pick(hot);
            return pick(cold);
        }

        const WorkloadPlan* plan_;
        std::mt19937_64 rng_;
        std::uniform_real_distribution<double> percent_{0.0, 100.0};
        std::discrete_distribution<std::size_t> zipf_;
    };

    Sampler sampler(std::uint64_t seed) const { return Sampler(*this, seed); }

private:
    WorkloadSpec spec_;
    std::vector<std::int64_t> prepopulate_;
    std::vector<std::int64_t> hot_;
    std::vector<std::int64_t> cold_;
    std::vector<std::int64_t> updates_;
    std::vector<std::int64_t> rank_to_key_;
    std::shared_ptr<std::discrete_distribution<std::size_t>> zipf_;
};

}  // namespace splaylist::bench

#endif  // SPLAYLIST_BENCH_WORKLOAD_HPP
