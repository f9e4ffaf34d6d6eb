#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <sstream>

#include "fixtures.hpp"
#include "splaylist/splay_list.hpp"
#include "splaylist/verify/binomial_check.hpp"
#include "splaylist/verify/cost_bounds.hpp"
#include "splaylist/verify/linearizability.hpp"
#include "splaylist/verify/op_stream.hpp"
#include "splaylist/verify/oracle.hpp"
#include "splaylist/verify/reference_model.hpp"
#include "splaylist/verify/validator.hpp"

using namespace splaylist;
using namespace splaylist::verify;
using List = SplayList<std::int64_t>;

TEST(ReferenceModel, FollowsHitRules) {
    ReferenceModel<int> model;
    EXPECT_FALSE(model.contains(1));
    EXPECT_EQ(model.hit_count(), 0u);
    EXPECT_TRUE(model.insert(1));
    EXPECT_TRUE(model.insert(2));
    EXPECT_FALSE(model.insert(1));
    EXPECT_TRUE(model.contains(1));
    EXPECT_TRUE(model.contains(1));
    EXPECT_EQ(model.hit_count(), 5u);
    EXPECT_TRUE(model.erase(2));
    EXPECT_EQ(model.hit_count(), 6u);
    EXPECT_EQ(model.live_hit_count(), 4u);
    EXPECT_FALSE(model.contains(2));
    EXPECT_EQ(model.find(2)->self_hits, 3u);
    EXPECT_FALSE(model.contains(2, false));
    EXPECT_EQ(model.hit_count(), 7u);
    EXPECT_EQ(model.rebuilds(), 0u);
}

TEST(ReferenceModel, RebuildDropsMarkedKeys) {
    ReferenceModel<int> model;
    model.insert(1);
    model.insert(2);
    model.insert(2);
    EXPECT_TRUE(model.erase(2));  // m = 4, M = 1
    EXPECT_EQ(model.rebuilds(), 1u);
    EXPECT_FALSE(model.find(2).has_value());
    EXPECT_EQ(model.hit_count(), 1u);
    EXPECT_EQ(model.live_hit_count(), 1u);
}

TEST(OpStream, TextRoundTrip) {
    const auto stream = random_op_stream(50, 10, 99);
    std::stringstream text;
    write_op_stream(text, stream);
    const auto back = read_op_stream(text);
    EXPECT_EQ(back.seed, 99u);
    EXPECT_EQ(back.ops, stream.ops);
}

TEST(OpStream, RejectsGarbage) {
    std::istringstream text("# seed 1\nX 3\n");
    EXPECT_THROW(read_op_stream(text), std::runtime_error);
}

TEST(Oracle, EmptyStreamIsEqual) {
    List list;
    EXPECT_TRUE(oracle_equivalence_run(OpStream{}, list).ok());
}

TEST(Oracle, ExactModeMatchesTheModel) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        List list;
        const auto report = oracle_equivalence_run(random_op_stream(20000, 500, seed), list);
        EXPECT_TRUE(report.ok()) << report.detail << '\n' << report.replay.substr(0, 200);
        EXPECT_EQ(report.ops_run, 20000u);
    }
}

TEST(Oracle, RelaxedModeMatchesTheModel) {
    List list(RebalancePolicy::one_in(10, 3));
    const auto report = oracle_equivalence_run(random_op_stream(20000, 500, 7), list);
    EXPECT_TRUE(report.ok()) << report.detail;
}

namespace {

// Drops every 1000th insert.
struct LossyList : List {
    std::size_t calls = 0;
    bool insert(std::int64_t key) {
        if (++calls % 1000 == 0) return true;
        return List::insert(key);
    }
};

}  // namespace

TEST(Oracle, ReportsTheFirstDivergenceWithAReplayPrefix) {
    LossyList list;
    const auto stream = random_op_stream(20000, 50, 2, {0, 100, 0});
    const auto report = oracle_equivalence_run(stream, list);
    ASSERT_FALSE(report.ok());
    std::istringstream replay(report.replay);
    EXPECT_EQ(read_op_stream(replay).ops.size(), *report.divergence + 1);
}

TEST(Validator, CatchesMissingLevelLinks) {
    auto snap = List::from_snapshot(splaylist::testing::parse(splaylist::testing::kAfterContains5)).snapshot();
    ASSERT_TRUE(validate(snap).ok());
    snap.levels[1].erase(snap.levels[1].begin() + 1);
    EXPECT_EQ(validate(snap).count(ViolationKind::Link), 1u);
}

TEST(Validator, CatchesAscentAndGlobalCounts) {
    auto snap = splaylist::testing::parse(splaylist::testing::kAfterContains5);
    snap.live_m = 3;
    EXPECT_EQ(validate(snap).count(ViolationKind::GlobalCount), 1u);
    // Before contains(5), with m bumped to 11 and counters updated, 4 must be promoted.
    auto before = splaylist::testing::parse(
        "11 11 3 60\n-inf 63 1 0 1 6 11 0\n1 60 1 0 0\n2 61 1 0 0 0\n3 61 1 0 3 0\n4 60 1 0 0\n5 60 2 0 0\n"
        "6 62 5 0 0 0 0\n");
    const auto report = validate(before);
    EXPECT_EQ(report.count(ViolationKind::Ascent), 1u) << report.to_text();
    EXPECT_EQ(report.count(ViolationKind::SubtreeSum), 0u) << report.to_text();
}

TEST(CostBounds, ExactRunHasNoPerOpViolations) {
    List list;
    std::vector<CostRecord> records;
    const auto stream = random_op_stream(5000, 300, 12);
    for (const Op& op : stream.ops) {
        if (op.kind == OpKind::Contains) list.contains(op.key);
        if (op.kind == OpKind::Insert) list.insert(op.key);
        if (op.kind == OpKind::Delete) list.erase(op.key);
        records.push_back({op.key, list.last_cost(), list.stats().lifts});
    }
    const auto report = check_cost_bounds(records);
    EXPECT_TRUE(report.per_op_ok()) << to_text(report);
    EXPECT_EQ(report.adjusted_prefix_violations, 0u) << to_text(report);
    EXPECT_GT(report.checked, 0u);
}

TEST(CostBounds, SingleHotKeyNeedsFewLevels) {
    List list;
    for (int k = 0; k < 1000; ++k) list.insert(k);
    for (int i = 0; i < 100000; ++i) list.contains(500);
    const auto& c = list.last_cost();
    EXPECT_LE(c.levels_visited, 3);
    EXPECT_TRUE(within_level_bound(c));
}

TEST(CostBounds, LevelBoundIsExact) {
    OpCost c;
    c.hit = true;
    c.self_hits_before = 1;
    c.m_before = 8;
    c.levels_visited = 6;  // 3 + log2(8)
    EXPECT_TRUE(within_level_bound(c));
    c.levels_visited = 7;
    EXPECT_FALSE(within_level_bound(c));
}

TEST(Binomial, DeterministicWhenPIsOne) {
    const auto r = binomial_log_moment_check(1000, 1.0, 10);
    ASSERT_FALSE(r.skipped);
    EXPECT_DOUBLE_EQ(r.estimate, std::log2(1001.0));
    EXPECT_TRUE(r.passed);
}

TEST(Binomial, HalfProbability) {
    const auto r = binomial_log_moment_check(10000, 0.5, 20000);
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.estimate, std::log2(5001.0), 0.01);
}

TEST(Binomial, SkipsWhenHypothesisFails) {
    EXPECT_TRUE(binomial_log_moment_check(1000000, 1e-4, 10).skipped);
}

namespace {

HistoryOp op(int thread, OpKind kind, std::int64_t key, bool result, std::uint64_t in, std::uint64_t out) {
    return {thread, kind, key, result, in, out};
}

}  // namespace

TEST(Linearizability, SequentialHistory) {
    History h;
    h.ops = {op(0, OpKind::Insert, 1, true, 1, 2), op(0, OpKind::Contains, 1, true, 3, 4),
             op(0, OpKind::Delete, 1, true, 5, 6), op(0, OpKind::Contains, 1, false, 7, 8)};
    EXPECT_EQ(check_linearizable(h, 4).verdict, Verdict::Linearizable);
}

TEST(Linearizability, ContainsOfANeverInsertedKey) {
    History h;
    h.ops = {op(0, OpKind::Contains, 2, true, 1, 2)};
    const auto r = check_linearizable(h, 4);
    EXPECT_EQ(r.verdict, Verdict::NotLinearizable);
    EXPECT_EQ(r.failing_key, 2);
}

TEST(Linearizability, OverlapAllowsEitherOrder) {
    History h;
    // contains overlaps the insert, so it may see either state
    h.ops = {op(0, OpKind::Insert, 1, true, 1, 4), op(1, OpKind::Contains, 1, true, 2, 3),
             op(1, OpKind::Contains, 1, true, 5, 6)};
    EXPECT_EQ(check_linearizable(h, 4).verdict, Verdict::Linearizable);
    h.ops[2].result = false;  // after the insert responded, it must be visible
    EXPECT_EQ(check_linearizable(h, 4).verdict, Verdict::NotLinearizable);
}

TEST(Linearizability, TwoSuccessfulInsertsNeedADeleteBetween) {
    History h;
    h.ops = {op(0, OpKind::Insert, 1, true, 1, 10), op(1, OpKind::Insert, 1, true, 2, 9)};
    EXPECT_EQ(check_linearizable(h, 4).verdict, Verdict::NotLinearizable);
    h.ops.push_back(op(2, OpKind::Delete, 1, true, 3, 8));
    EXPECT_EQ(check_linearizable(h, 4).verdict, Verdict::Linearizable);
}

TEST(Linearizability, InitialStateCounts) {
    History h;
    h.initially_present = {3};
    h.ops = {op(0, OpKind::Contains, 3, true, 1, 2)};
    EXPECT_EQ(check_linearizable(h, 4).verdict, Verdict::Linearizable);
}

TEST(Linearizability, BudgetGivesInconclusive) {
    History h;
    for (int t = 0; t < 24; ++t) h.ops.push_back(op(t, OpKind::Contains, 0, false, 1 + t, 100 + t));
    h.ops.push_back(op(30, OpKind::Contains, 0, true, 2, 200));
    EXPECT_EQ(check_linearizable(h, 4, 50).verdict, Verdict::Inconclusive);
}

TEST(Linearizability, RejectsMalformedHistories) {
    History h;
    h.ops = {op(0, OpKind::Insert, 1, true, 1, 5), op(0, OpKind::Insert, 2, true, 3, 6)};
    EXPECT_THROW(check_linearizable(h, 4), std::invalid_argument);
    h.ops = {op(0, OpKind::Insert, 9, true, 1, 2)};
    EXPECT_THROW(check_linearizable(h, 4), std::invalid_argument);
}
