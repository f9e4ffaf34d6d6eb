#ifndef SPLAYLIST_REBALANCE_POLICY_HPP
#define SPLAYLIST_REBALANCE_POLICY_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace splaylist {

/// Decides whether a hit-operation updates counters and rebalances.
///
/// Exact mode always says yes and never touches the generator. Relaxed mode
/// says yes with probability p, using its own std::mt19937_64 stream: the
/// top 53 bits of each draw form a uniform double in [0, 1) that is compared
/// against p. The stream is per instance; share the configuration, not the
/// object.
class RebalancePolicy {
public:
    RebalancePolicy() = default;

    static RebalancePolicy exact() { return RebalancePolicy{}; }

    static RebalancePolicy relaxed(double p, std::uint64_t seed) {
        if (!(p > 0.0 && p <= 1.0)) {
            throw std::invalid_argument("rebalance probability must be in (0, 1]");
        }
        RebalancePolicy policy;
        policy.probability_ = p;
        policy.rng_.seed(seed);
        return policy;
    }

    /// p = 1/c.
    static RebalancePolicy one_in(std::uint64_t c, std::uint64_t seed) {
        if (c == 0) throw std::invalid_argument("rebalance period must be positive");
        return relaxed(1.0 / static_cast<double>(c), seed);
    }

    /// Same probability, fresh stream.
    RebalancePolicy with_seed(std::uint64_t seed) const {
        RebalancePolicy policy = *this;
        policy.rng_.seed(seed);
        return policy;
    }

    bool is_exact() const noexcept { return probability_ >= 1.0; }
    double probability() const noexcept { return probability_; }

    bool should_rebalance() {
        if (is_exact()) return true;
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return u < probability_;
    }

private:
    double probability_ = 1.0;
    std::mt19937_64 rng_{0};
};

}  // namespace splaylist

#endif  // SPLAYLIST_REBALANCE_POLICY_HPP
