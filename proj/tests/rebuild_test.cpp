#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "splaylist/rebuild.hpp"
#include "splaylist/splay_list.hpp"
#include "splaylist/verify/validator.hpp"

using namespace splaylist;
using List = SplayList<std::int64_t>;

namespace {

// Straight from the recursive definition: no prefix sums, no owner array.
void reference_split(const std::vector<HitCount>& hits, std::size_t l, std::size_t r, std::vector<int>& out) {
    HitCount total = 0;
    for (std::size_t i = l; i <= r; ++i) total += hits[i];
    int p = 1;
    while ((HitCount{1} << p) <= total) ++p;
    for (std::size_t s = l; s <= r; ++s) {
        HitCount before = 0;
        HitCount after = 0;
        for (std::size_t i = l; i < s; ++i) before += hits[i];
        for (std::size_t i = s + 1; i <= r; ++i) after += hits[i];
        if (2 * before <= total && 2 * after < total) {
            out[s] = p;
            if (s > l) reference_split(hits, l, s - 1, out);
            if (s < r) reference_split(hits, s + 1, r, out);
            return;
        }
    }
    FAIL() << "no split point";
}

std::vector<HitCount> random_hits(std::size_t n, std::uint64_t seed, HitCount max_hits = 100) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<HitCount> dist(1, max_hits);
    std::vector<HitCount> hits(n);
    for (auto& h : hits) h = dist(rng);
    return hits;
}

List::Entries entries_for(const std::vector<HitCount>& hits) {
    List::Entries entries;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        entries.push_back({static_cast<std::int64_t>(3 * i + 1), Unit{}, hits[i]});
    }
    return entries;
}

}  // namespace

TEST(RebuildRanks, HandExecutedSplit) {
    const std::vector<HitCount> hits{1, 1, 2};
    for (auto algo : {RebuildAlgorithm::LinearSplit, RebuildAlgorithm::MedianArray}) {
        const auto ranks = rebuild_ranks(hits, algo);
        // H = 4 gives p = 3 at key 3; [1, 2] has H = 2, p = 2, split at key 2; key 1 gets p = 1.
        EXPECT_EQ(ranks, (std::vector<int>{1, 2, 3}));
    }
}

TEST(RebuildRanks, SingleEntry) {
    const std::vector<HitCount> hits{1};
    EXPECT_EQ(rebuild_ranks(hits, RebuildAlgorithm::LinearSplit), std::vector<int>{1});
    EXPECT_EQ(rebuild_ranks(hits, RebuildAlgorithm::MedianArray), std::vector<int>{1});
    auto list = List::rebuilt({{9, Unit{}, 1}});
    EXPECT_TRUE(verify::validate(list.snapshot(), {.check_descent = true}).ok());
    EXPECT_TRUE(list.contains(9));
}

TEST(RebuildRanks, EmptyInput) {
    EXPECT_TRUE(rebuild_ranks({}).empty());
    auto list = List::rebuilt({});
    EXPECT_EQ(list.size(), 0u);
    EXPECT_EQ(list.hit_count(), 0u);
    EXPECT_FALSE(list.contains(1));
}

TEST(RebuildRanks, RejectsZeroHitsAndDuplicates) {
    const std::vector<HitCount> hits{1, 0};
    EXPECT_THROW(rebuild_ranks(hits), std::invalid_argument);
    EXPECT_THROW(List::rebuilt({{1, Unit{}, 1}, {1, Unit{}, 1}}), std::invalid_argument);
}

TEST(RebuildRanks, BothAlgorithmsMatchTheDefinition) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto hits = random_hits(60 + seed, seed, seed % 3 == 0 ? 1000 : 8);
        std::vector<int> expected(hits.size(), 0);
        reference_split(hits, 0, hits.size() - 1, expected);
        EXPECT_EQ(rebuild_ranks(hits, RebuildAlgorithm::LinearSplit), expected) << "seed " << seed;
        EXPECT_EQ(rebuild_ranks(hits, RebuildAlgorithm::MedianArray), expected) << "seed " << seed;
    }
}

TEST(RebuildRanks, AutoPicksByHitMass) {
    EXPECT_EQ(resolve_rebuild_algorithm(10, 1000, RebuildAlgorithm::Auto), RebuildAlgorithm::LinearSplit);
    EXPECT_EQ(resolve_rebuild_algorithm(1000, 2000, RebuildAlgorithm::Auto), RebuildAlgorithm::MedianArray);
    EXPECT_EQ(resolve_rebuild_algorithm(1000, 2000, RebuildAlgorithm::LinearSplit), RebuildAlgorithm::LinearSplit);
}

TEST(Rebuilt, ThousandRandomEntriesSatisfyBothConditions) {
    const auto hits = random_hits(1000, 77);
    const auto entries = entries_for(hits);
    auto linear = List::rebuilt(entries, RebuildAlgorithm::LinearSplit);
    auto median = List::rebuilt(entries, RebuildAlgorithm::MedianArray);
    for (auto* list : {&linear, &median}) {
        const auto report = verify::validate(list->snapshot(), {.check_descent = true});
        EXPECT_TRUE(report.ok()) << report.to_text();
        EXPECT_EQ(list->hit_count(), list->live_hit_count());
    }
    for (const auto& e : entries) ASSERT_EQ(linear.height_of(e.key), median.height_of(e.key)) << e.key;
}

TEST(Rebuilt, SkewedHitsProduceTallHotKeys) {
    std::vector<HitCount> hits(200, 1);
    hits[123] = 10'000;
    auto list = List::rebuilt(entries_for(hits));
    const auto hot = list.height_of(3 * 123 + 1);
    ASSERT_TRUE(hot.has_value());
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (i != 123) EXPECT_LT(list.height_of(static_cast<std::int64_t>(3 * i + 1)), hot);
    }
    EXPECT_TRUE(verify::validate(list.snapshot(), {.check_descent = true}).ok());
}
