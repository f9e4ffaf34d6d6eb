#ifndef SPLAYLIST_VERIFY_BINOMIAL_CHECK_HPP
#define SPLAYLIST_VERIFY_BINOMIAL_CHECK_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace splaylist::verify {

struct LogMomentResult {
    bool skipped = false;  ///< hypothesis np >= 3 n^(2/3) does not hold
    std::string notice;
    double estimate = 0;   ///< mean of log2(X + 1)
    double std_error = 0;
    double bound = 0;      ///< log2(np) - 4
    bool passed = false;   ///< estimate >= bound - 3 * std_error
};

/// Monte-Carlo estimate of E[log2(X + 1)] for X ~ Binomial(n, p).
inline LogMomentResult binomial_log_moment_check(std::uint64_t n, double p, std::uint64_t trials,
                                                 std::uint64_t seed = 1) {
    LogMomentResult result;
    const double nd = static_cast<double>(n);
    if (!(p > 0.0 && p <= 1.0) || n == 0 || trials == 0 || nd * p < 3.0 * std::cbrt(nd * nd)) {
        result.skipped = true;
        result.notice = "hypothesis np >= 3 n^(2/3) not met";
        return result;
    }
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::uint64_t> draw(n, p);
    double sum = 0;
    double sum_sq = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double v = std::log2(static_cast<double>(draw(rng)) + 1.0);
        sum += v;
        sum_sq += v * v;
    }
    const double count = static_cast<double>(trials);
    result.estimate = sum / count;
    const double variance = std::max(0.0, sum_sq / count - result.estimate * result.estimate);
    result.std_error = std::sqrt(variance / count);
    result.bound = std::log2(nd * p) - 4.0;
    result.passed = result.estimate >= result.bound - 3.0 * result.std_error;
    return result;
}

}  // namespace splaylist::verify

#endif  // SPLAYLIST_VERIFY_BINOMIAL_CHECK_HPP
