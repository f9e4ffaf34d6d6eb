#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "splaylist/bench/workload.hpp"
#include "splaylist/splay_list.hpp"
#include "splaylist/verify/validator.hpp"

using namespace splaylist;
using List = SplayList<std::int64_t>;

// m' after n gated hits on a single key, across independent seeds, against
// Binomial(n, p) with equiprobable bins.
TEST(RelaxedCounter, GatedHitsFollowTheBinomial) {
    constexpr int kReps = 200;
    constexpr unsigned kHits = 10000;
    constexpr double kP = 0.1;
    constexpr int kBins = 8;

    const boost::math::binomial_distribution<double> law(kHits, kP);
    std::vector<double> edges;
    for (int b = 1; b < kBins; ++b) edges.push_back(std::floor(quantile(law, static_cast<double>(b) / kBins)));
    std::vector<double> expected;
    double below = 0;
    for (double e : edges) {
        const double c = cdf(law, e);
        expected.push_back((c - below) * kReps);
        below = c;
    }
    expected.push_back((1 - below) * kReps);
    for (double e : expected) ASSERT_GE(e, 5.0);

    std::vector<int> observed(kBins, 0);
    for (int r = 0; r < kReps; ++r) {
        List list(RebalancePolicy::relaxed(kP, 1000 + static_cast<std::uint64_t>(r)));
        list.insert(42);
        const HitCount base = list.hit_count();
        for (unsigned i = 0; i < kHits; ++i) ASSERT_TRUE(list.contains(42));
        const double counted = static_cast<double>(list.hit_count() - base);
        int bin = 0;
        while (bin < kBins - 1 && counted > edges[static_cast<std::size_t>(bin)]) ++bin;
        ++observed[static_cast<std::size_t>(bin)];
    }

    double stat = 0;
    for (int b = 0; b < kBins; ++b) {
        const double d = observed[static_cast<std::size_t>(b)] - expected[static_cast<std::size_t>(b)];
        stat += d * d / expected[static_cast<std::size_t>(b)];
    }
    const boost::math::chi_squared_distribution<double> chi(kBins - 1);
    EXPECT_LT(stat, quantile(complement(chi, 0.001))) << "chi-square " << stat;
}

TEST(RelaxedCounter, AscentInvariantUnderContains) {
    List list(RebalancePolicy::one_in(4, 17));
    for (std::int64_t k = 1; k <= 300; ++k) list.insert(k);
    std::mt19937_64 rng(5);
    std::geometric_distribution<std::int64_t> skew(0.05);
    for (int i = 0; i < 4000; ++i) {
        list.contains(1 + skew(rng) % 300);
        const auto report = verify::validate(list.snapshot());
        ASSERT_TRUE(report.ok()) << "op " << i << "\n" << report.to_text();
    }
}

namespace {

double mean_hot_depth(RebalancePolicy policy) {
    const auto spec = bench::parse_workload("100000-99-1");
    const bench::WorkloadPlan plan(spec, 1);
    List list(std::move(policy));
    for (auto key : plan.prepopulation()) list.insert(key);
    auto sampler = plan.sampler(2);
    for (int i = 0; i < 1000000; ++i) list.contains(sampler.next().key);
    double total = 0;
    for (auto key : plan.hot_keys()) total += list.k() - *list.height_of(key);
    return total / static_cast<double>(plan.hot_keys().size());
}

}  // namespace

TEST(RelaxedShape, HotKeysSitWithinOneLevelOfExact) {
    const double exact = mean_hot_depth(RebalancePolicy::exact());
    const double relaxed = mean_hot_depth(RebalancePolicy::one_in(10, 3));
    EXPECT_LE(std::abs(exact - relaxed), 1.0) << "exact " << exact << " relaxed " << relaxed;
}
