#ifndef SPLAYLIST_VERIFY_ORACLE_HPP
#define SPLAYLIST_VERIFY_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>

#include "splaylist/verify/op_stream.hpp"
#include "splaylist/verify/reference_model.hpp"

namespace splaylist::verify {

struct OracleReport {
    std::size_t ops_run = 0;
    std::optional<std::size_t> divergence;  ///< index of the first differing op
    std::string detail;
    std::string replay;  ///< op stream up to and including the divergence

    bool ok() const { return !divergence.has_value(); }
};

struct OracleOptions {
    bool compare_counters = true;  ///< m, M and the touched key's self hits
    bool check_membership_at_end = true;
};

/// Replays `stream` against `impl` and a ReferenceModel side by side.
/// `impl` needs contains/insert/erase returning bool, last_cost().rebalanced,
/// hit_count(), live_hit_count() and peek(key). The model follows the
/// implementation's gate decisions, so relaxed runs compare counters too.
template <class Impl>
OracleReport oracle_equivalence_run(const OpStream& stream, Impl& impl, OracleOptions options = {}) {
    OracleReport report;
    ReferenceModel<std::int64_t> model;
    auto diverge = [&](std::size_t i, const std::string& what) {
        report.divergence = i;
        report.detail = what;
        std::ostringstream out;
        write_op_stream(out, stream, i + 1);
        report.replay = out.str();
    };
    for (std::size_t i = 0; i < stream.ops.size(); ++i) {
        const Op& op = stream.ops[i];
        bool got = false;
        switch (op.kind) {
            case OpKind::Contains: got = impl.contains(op.key); break;
            case OpKind::Insert: got = impl.insert(op.key); break;
            case OpKind::Delete: got = impl.erase(op.key); break;
        }
        const bool gated = impl.last_cost().rebalanced;
        bool want = false;
        switch (op.kind) {
            case OpKind::Contains: want = model.contains(op.key, gated); break;
            case OpKind::Insert: want = model.insert(op.key, gated); break;
            case OpKind::Delete: want = model.erase(op.key, gated); break;
        }
        report.ops_run = i + 1;
        std::ostringstream what;
        what << static_cast<char>(op.kind) << ' ' << op.key << ": ";
        if (got != want) {
            what << "result " << got << ", expected " << want;
            diverge(i, what.str());
            return report;
        }
        if (!options.compare_counters) continue;
        if (impl.hit_count() != model.hit_count() || impl.live_hit_count() != model.live_hit_count()) {
            what << "m/M " << impl.hit_count() << '/' << impl.live_hit_count() << ", expected "
                 << model.hit_count() << '/' << model.live_hit_count();
            diverge(i, what.str());
            return report;
        }
        const auto actual = impl.peek(op.key);
        const auto expected = model.find(op.key);
        if (actual.has_value() != expected.has_value() ||
            (actual && (actual->self_hits != expected->self_hits || actual->deleted == expected->present))) {
            what << "node state differs (present " << actual.has_value() << " vs " << expected.has_value() << ")";
            diverge(i, what.str());
            return report;
        }
    }
    if (options.check_membership_at_end) {
        for (const auto& [key, record] : model.records()) {
            const auto actual = impl.peek(key);
            if (!actual || actual->deleted == record.present) {
                std::ostringstream what;
                what << "final membership of " << key << " differs";
                diverge(stream.ops.size() - 1, what.str());
                return report;
            }
        }
    }
    return report;
}

}  // namespace splaylist::verify

#endif  // SPLAYLIST_VERIFY_ORACLE_HPP
