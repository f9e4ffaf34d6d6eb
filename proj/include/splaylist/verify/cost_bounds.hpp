#ifndef SPLAYLIST_VERIFY_COST_BOUNDS_HPP
#define SPLAYLIST_VERIFY_COST_BOUNDS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "splaylist/common.hpp"
#include "splaylist/splay_list.hpp"

namespace splaylist::verify {

struct CostRecord {
    std::int64_t key = 0;
    OpCost cost;
    std::size_t lifts = 0;  ///< cumulative ListStats::lifts after the op
};

struct CostReport {
    std::size_t records = 0;
    std::size_t checked = 0;          ///< records subject to the per-op bounds
    std::size_t level_violations = 0;     // levels visited > 3 + log2(m/sh)
    std::size_t non_descending_violations = 0;  // more than 4 per level
    std::size_t length_violations = 0;    // forward + backward > 2d + 8y
    std::size_t total_promotions = 0;
    std::size_t total_demotions = 0;
    std::size_t lifts = 0;
    std::size_t prefix_violations = 0;    ///< prefixes where demotions > promotions
    std::size_t adjusted_prefix_violations = 0;  ///< ... > promotions + lifts
    std::vector<std::string> first_failures;

    bool per_op_ok() const {
        return level_violations == 0 && non_descending_violations == 0 && length_violations == 0;
    }
    bool demotion_bound_ok() const { return prefix_violations == 0; }
    bool ok() const { return per_op_ok() && demotion_bound_ok(); }
};

/// y for a hit on an existing node: 3 + log2(m / sh) with pre-operation
/// counters. New keys have no prior hits; their y is the number of levels
/// actually traversed.
inline double traversal_budget(const OpCost& c) {
    if (c.inserted_new || c.self_hits_before == 0) return static_cast<double>(c.levels_visited);
    return 3.0 + std::log2(static_cast<double>(c.m_before) / static_cast<double>(c.self_hits_before));
}

/// Exact integer form of levels <= 3 + log2(m / sh).
inline bool within_level_bound(const OpCost& c) {
    if (c.levels_visited <= 3) return true;
    const int shift = c.levels_visited - 3;
    if (shift >= 64) return false;
    return static_cast<unsigned __int128>(c.self_hits_before) << shift <= c.m_before;
}

inline CostReport check_cost_bounds(const std::vector<CostRecord>& records) {
    CostReport report;
    report.records = records.size();
    auto note = [&report](std::size_t i, const std::string& what) {
        if (report.first_failures.size() < 10) {
            report.first_failures.push_back("op " + std::to_string(i) + ": " + what);
        }
    };
    for (std::size_t i = 0; i < records.size(); ++i) {
        const OpCost& c = records[i].cost;
        report.total_promotions += c.promotions;
        report.total_demotions += c.demotions;
        report.lifts = records[i].lifts;
        if (report.total_demotions > report.total_promotions) ++report.prefix_violations;
        if (report.total_demotions > report.total_promotions + report.lifts) ++report.adjusted_prefix_violations;
        if (!c.hit) continue;
        ++report.checked;
        if (c.max_non_descending > 4) {
            ++report.non_descending_violations;
            note(i, "non-descending nodes on one level: " + std::to_string(c.max_non_descending));
        }
        if (!c.inserted_new && c.self_hits_before > 0 && !within_level_bound(c)) {
            ++report.level_violations;
            note(i, "levels visited " + std::to_string(c.levels_visited));
        }
        const double bound = 2.0 * static_cast<double>(c.demotions) + 8.0 * traversal_budget(c);
        if (static_cast<double>(c.forward_len + c.backward_len) > bound + 1e-9) {
            ++report.length_violations;
            note(i, "path length " + std::to_string(c.forward_len + c.backward_len) + " > " + std::to_string(bound));
        }
    }
    return report;
}

inline std::string to_text(const CostReport& r) {
    std::ostringstream out;
    out << "records " << r.records << ", checked " << r.checked << ", level " << r.level_violations
        << ", non-descending " << r.non_descending_violations << ", length " << r.length_violations
        << ", promotions " << r.total_promotions << ", demotions " << r.total_demotions << ", lifts " << r.lifts
        << ", prefix " << r.prefix_violations << ", adjusted prefix " << r.adjusted_prefix_violations << '\n';
    for (const auto& f : r.first_failures) out << "  " << f << '\n';
    return out.str();
}

}  // namespace splaylist::verify

#endif  // SPLAYLIST_VERIFY_COST_BOUNDS_HPP
