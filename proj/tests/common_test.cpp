#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "splaylist/common.hpp"
#include "splaylist/rebalance_policy.hpp"

using namespace splaylist;

TEST(HeightParameter, FloorLog2) {
    EXPECT_EQ(height_parameter(0), 0);
    EXPECT_EQ(height_parameter(1), 0);
    EXPECT_EQ(height_parameter(7), 2);
    EXPECT_EQ(height_parameter(8), 3);
    EXPECT_EQ(height_parameter(9), 3);
    EXPECT_EQ(height_parameter(10), 3);
    EXPECT_EQ(height_parameter(~HitCount{0}), 63);
}

TEST(HeightParameter, ZeroLevelKeepsOneUserLevel) {
    EXPECT_EQ(zero_level_for(0), kTopUserLevel);
    EXPECT_EQ(zero_level_for(1), kTopUserLevel);
    EXPECT_EQ(zero_level_for(2), kTopUserLevel);
    EXPECT_EQ(zero_level_for(10), kSentinelLevel - 3);
}

// Logical form: exponent k - h for descent, k - h - 1 for ascent.
TEST(Conditions, WorkedExampleDescent) {
    // pred 2, node 3 at height 1, m = 11, k = 3: 2 <= 11/4
    EXPECT_TRUE(descent_condition(2, 3 - 1, 11));
    // pred 4, node 5 at height 0: 3 > 11/8
    EXPECT_FALSE(descent_condition(3, 3 - 0, 11));
    // Nothing can be demoted before the first hit.
    EXPECT_FALSE(descent_condition(2, 0, 0));
}

TEST(Conditions, WorkedExampleAscent) {
    EXPECT_TRUE(ascent_condition(3, 3 - 0 - 1, 11));
    EXPECT_FALSE(ascent_condition(2, 3 - 0 - 1, 11));
    EXPECT_FALSE(ascent_condition(1000, 5, 0));
}

TEST(Conditions, PhysicalLevelsMatchLogicalOnes) {
    const HitCount m = 11;
    const Height zero = zero_level_for(m);
    EXPECT_EQ(should_demote(2, zero + 1, m), descent_condition(2, 2, m));
    EXPECT_EQ(should_promote(3, zero, m), ascent_condition(3, 2, m));
}

TEST(Conditions, BoundaryIsInclusiveForDescentStrictForAscent) {
    EXPECT_TRUE(descent_condition(3, 2, 12));   // 12 <= 12
    EXPECT_FALSE(ascent_condition(3, 2, 12));   // 12 > 12 fails
    EXPECT_TRUE(ascent_condition(4, 2, 15));
}

TEST(Conditions, NoOverflowNearTheTop) {
    const HitCount big = HitCount{1} << 62;
    EXPECT_FALSE(descent_condition(big, 63, ~HitCount{0}));
    EXPECT_TRUE(ascent_condition(big, 63, ~HitCount{0}));
}

TEST(Policy, ExactAlwaysRebalances) {
    auto policy = RebalancePolicy::exact();
    for (int i = 0; i < 1000; ++i) ASSERT_TRUE(policy.should_rebalance());
}

TEST(Policy, SeededStreamsAreReproducible) {
    auto a = RebalancePolicy::one_in(7, 42);
    auto b = RebalancePolicy::one_in(7, 42);
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.should_rebalance(), b.should_rebalance());
}

TEST(Policy, FrequencyWithinBinomialInterval) {
    // 10^6 draws at p = 1/100: sigma = 0.0000995, [0.0097, 0.0103] is about +-3 sigma.
    auto policy = RebalancePolicy::one_in(100, 2024);
    std::size_t yes = 0;
    const std::size_t n = 1'000'000;
    for (std::size_t i = 0; i < n; ++i) yes += policy.should_rebalance() ? 1 : 0;
    const double fraction = static_cast<double>(yes) / static_cast<double>(n);
    EXPECT_GE(fraction, 0.0097);
    EXPECT_LE(fraction, 0.0103);
}

TEST(Policy, RejectsBadProbabilities) {
    EXPECT_THROW(RebalancePolicy::relaxed(0.0, 1), std::invalid_argument);
    EXPECT_THROW(RebalancePolicy::relaxed(1.5, 1), std::invalid_argument);
    EXPECT_THROW(RebalancePolicy::one_in(0, 1), std::invalid_argument);
    EXPECT_TRUE(RebalancePolicy::relaxed(1.0, 1).is_exact());
}
