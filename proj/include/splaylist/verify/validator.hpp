#ifndef SPLAYLIST_VERIFY_VALIDATOR_HPP
#define SPLAYLIST_VERIFY_VALIDATOR_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "splaylist/common.hpp"
#include "splaylist/snapshot.hpp"

namespace splaylist::verify {

enum class ViolationKind {
    Order,        ///< bottom list not strictly increasing
    Link,         ///< a level's links disagree with the node heights
    Sentinel,     ///< head/tail conventions or user node out of level range
    SubtreeSum,   ///< stored hits[h] differs from the recomputed subtree sum
    GlobalCount,  ///< m or M disagrees with the per-node hit counts
    Ascent,       ///< some node satisfies the ascent condition
    Descent       ///< some node satisfies the descent condition
};

inline const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Order: return "order";
        case ViolationKind::Link: return "link";
        case ViolationKind::Sentinel: return "sentinel";
        case ViolationKind::SubtreeSum: return "subtree-sum";
        case ViolationKind::GlobalCount: return "global-count";
        case ViolationKind::Ascent: return "ascent";
        case ViolationKind::Descent: return "descent";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    std::size_t count(ViolationKind kind) const {
        return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                      [kind](const Violation& v) { return v.kind == kind; }));
    }

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& v : violations) out << to_string(v.kind) << ": " << v.detail << '\n';
        return out.str();
    }
};

struct ValidationOptions {
    bool check_ascent = true;
    bool check_descent = false;  ///< only freshly rebuilt structures promise this
    bool check_global_counts = true;
};

/// Full scan of a quiescent structure. O(n * levels).
template <class Key, class Less = std::less<Key>>
ValidationReport validate(const Snapshot<Key>& snap, ValidationOptions options = {}, Less less = Less{}) {
    ValidationReport report;
    auto add = [&report](ViolationKind kind, auto&&... parts) {
        std::ostringstream out;
        (out << ... << parts);
        report.violations.push_back({kind, out.str()});
    };
    const auto& nodes = snap.nodes;
    const Height zero = snap.zero;
    auto name = [&nodes](std::size_t i) {
        std::ostringstream out;
        if (nodes[i].kind == NodeKind::Head) {
            out << "head";
        } else if (nodes[i].kind == NodeKind::Tail) {
            out << "tail";
        } else {
            out << "key " << nodes[i].key;
        }
        return out.str();
    };

    if (nodes.size() < 2 || nodes.front().kind != NodeKind::Head || nodes.back().kind != NodeKind::Tail) {
        add(ViolationKind::Sentinel, "bottom list must start at head and end at tail");
        return report;
    }
    for (std::size_t i : {std::size_t{0}, nodes.size() - 1}) {
        if (nodes[i].top != kSentinelLevel || nodes[i].self_hits != 1) {
            add(ViolationKind::Sentinel, name(i), " must span every level with one self hit");
        }
    }
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.kind != NodeKind::User) add(ViolationKind::Sentinel, "sentinel inside the bottom list at ", i);
        if (n.top < zero || n.top >= kSentinelLevel) add(ViolationKind::Sentinel, name(i), " has top ", n.top);
        if (i > 1 && !less(nodes[i - 1].key, n.key)) add(ViolationKind::Order, name(i), " does not follow ", name(i - 1));
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].hits.size() != static_cast<std::size_t>(std::max(0, nodes[i].top - zero + 1))) {
            add(ViolationKind::Sentinel, name(i), " has the wrong number of counters");
            return report;
        }
    }

    // Links versus heights.
    if (!snap.levels.empty()) {
        for (Height h = zero; h <= kSentinelLevel; ++h) {
            std::vector<std::size_t> expected;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                if (nodes[i].top >= h) expected.push_back(i);
            }
            const auto& actual = snap.levels[static_cast<std::size_t>(h - zero)];
            if (actual != expected) add(ViolationKind::Link, "level ", h, " links do not match node heights");
        }
    }

    // Subtree sums recomputed from self hits alone.
    HitCount total = 0;
    HitCount live = 0;
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        total += nodes[i].self_hits;
        if (!nodes[i].deleted) live += nodes[i].self_hits;
    }
    if (options.check_global_counts) {
        if (total != snap.m) add(ViolationKind::GlobalCount, "m = ", snap.m, " but node hits sum to ", total);
        if (live != snap.live_m) add(ViolationKind::GlobalCount, "M = ", snap.live_m, " but live hits sum to ", live);
    }
    for (Height h = zero; h <= kSentinelLevel; ++h) {
        std::size_t owner = 0;
        HitCount below = 0;
        auto settle = [&](std::size_t who) {
            const HitCount stored = nodes[who].hits[static_cast<std::size_t>(h - zero)];
            if (stored != below) {
                add(ViolationKind::SubtreeSum, name(who), " level ", h, " stores ", stored, ", recomputed ", below);
            }
        };
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            if (nodes[i].top >= h) {
                settle(owner);
                owner = i;
                below = 0;
            } else {
                below += nodes[i].self_hits;
            }
        }
        settle(owner);  // tail
    }

    auto subtree = [&](std::size_t i, Height h) { return nodes[i].subtree_hits(h, zero); };

    for (Height h = zero; h <= kTopUserLevel; ++h) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].top >= h) members.push_back(i);
        }
        if (options.check_ascent) {
            // Walk right to left accumulating each same-height run.
            HitCount run = 0;
            for (std::size_t j = members.size(); j-- > 0;) {
                const std::size_t i = members[j];
                if (nodes[i].top != h || nodes[i].kind != NodeKind::User) {
                    run = 0;
                    continue;
                }
                run += subtree(i, h);
                if (should_promote(run, h, snap.m)) {
                    add(ViolationKind::Ascent, name(i), " at level ", h, " has ascent potential ", run, " with m = ", snap.m);
                }
            }
        }
        if (options.check_descent && h > zero) {
            for (std::size_t j = 1; j < members.size(); ++j) {
                const std::size_t i = members[j];
                if (nodes[i].top != h || nodes[i].kind != NodeKind::User) continue;
                const std::size_t pred = members[j - 1];
                if (should_demote(subtree(pred, h) + subtree(i, h), h, snap.m)) {
                    add(ViolationKind::Descent, name(i), " at level ", h, " satisfies the descent condition");
                }
            }
        }
    }
    return report;
}

}  // namespace splaylist::verify

#endif  // SPLAYLIST_VERIFY_VALIDATOR_HPP
