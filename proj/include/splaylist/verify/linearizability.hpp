#ifndef SPLAYLIST_VERIFY_LINEARIZABILITY_HPP
#define SPLAYLIST_VERIFY_LINEARIZABILITY_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "splaylist/verify/op_stream.hpp"

namespace splaylist::verify {

/// One completed operation. Stamps come from a shared counter, so every
/// invocation and response is distinct and totally ordered.
struct HistoryOp {
    int thread = 0;
    OpKind kind = OpKind::Contains;
    std::int64_t key = 0;
    bool result = false;
    std::uint64_t invoked = 0;
    std::uint64_t responded = 0;
};

struct History {
    std::vector<HistoryOp> ops;
    std::set<std::int64_t> initially_present;
};

enum class Verdict { Linearizable, NotLinearizable, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Linearizable: return "linearizable";
        case Verdict::NotLinearizable: return "not linearizable";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct LinearizabilityResult {
    Verdict verdict = Verdict::Linearizable;
    std::size_t expansions = 0;
    std::int64_t failing_key = 0;  ///< meaningful for NotLinearizable
};

namespace detail {

// Wing and Gong's search over one key's operations with memoized
// (linearized set, membership) states.
class KeySearch {
public:
    KeySearch(std::vector<HistoryOp> ops, bool present, std::size_t& expansions, std::size_t budget)
        : ops_(std::move(ops)), initial_(present), expansions_(expansions), budget_(budget),
          words_((ops_.size() + 63) / 64) {
        std::sort(ops_.begin(), ops_.end(), [](const HistoryOp& a, const HistoryOp& b) { return a.invoked < b.invoked; });
    }

    Verdict run() {
        std::vector<std::uint64_t> done(words_, 0);
        try {
            return dfs(done, 0, initial_) ? Verdict::Linearizable : Verdict::NotLinearizable;
        } catch (const OutOfBudget&) {
            return Verdict::Inconclusive;
        }
    }

private:
    struct OutOfBudget {};

    struct StateHash {
        std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
            std::size_t h = 1469598103934665603ull;
            for (std::uint64_t w : v) h = (h ^ w) * 1099511628211ull;
            return h;
        }
    };

    static bool apply(const HistoryOp& op, bool present, bool& after) {
        switch (op.kind) {
            case OpKind::Contains: after = present; return op.result == present;
            case OpKind::Insert: after = true; return op.result == !present;
            case OpKind::Delete: after = false; return op.result == present;
        }
        return false;
    }

    bool is_done(const std::vector<std::uint64_t>& done, std::size_t i) const { return (done[i / 64] >> (i % 64)) & 1u; }

    bool dfs(std::vector<std::uint64_t>& done, std::size_t count, bool present) {
        if (count == ops_.size()) return true;
        std::vector<std::uint64_t> key = done;
        key.push_back(present ? 1 : 0);
        if (failed_.count(key) != 0) return false;
        if (++expansions_ > budget_) throw OutOfBudget{};

        std::uint64_t horizon = std::numeric_limits<std::uint64_t>::max();
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            if (!is_done(done, i)) horizon = std::min(horizon, ops_[i].responded);
        }
        for (std::size_t i = 0; i < ops_.size() && ops_[i].invoked < horizon; ++i) {
            if (is_done(done, i)) continue;
            bool after = present;
            if (!apply(ops_[i], present, after)) continue;
            done[i / 64] |= std::uint64_t{1} << (i % 64);
            const bool ok = dfs(done, count + 1, after);
            done[i / 64] &= ~(std::uint64_t{1} << (i % 64));
            if (ok) return true;
        }
        failed_.insert(std::move(key));
        return false;
    }

    std::vector<HistoryOp> ops_;
    bool initial_;
    std::size_t& expansions_;
    std::size_t budget_;
    std::size_t words_;
    std::unordered_set<std::vector<std::uint64_t>, StateHash> failed_;
};

}  // namespace detail

/// Checks a complete history against set semantics. Keys are independent
/// objects, so the history is split per key and each part is searched on its
/// own. `keyspace` bounds the keys, [0, keyspace); the budget caps search
/// nodes over all keys.
inline LinearizabilityResult check_linearizable(const History& history, std::int64_t keyspace,
                                                std::size_t budget = 10'000'000) {
    std::map<int, std::uint64_t> last_response;
    std::map<std::int64_t, std::vector<HistoryOp>> by_key;
    std::vector<HistoryOp> ordered = history.ops;
    std::sort(ordered.begin(), ordered.end(), [](const HistoryOp& a, const HistoryOp& b) { return a.invoked < b.invoked; });
    for (const auto& op : ordered) {
        if (op.key < 0 || op.key >= keyspace) throw std::invalid_argument("history key outside the keyspace");
        if (op.responded <= op.invoked) throw std::invalid_argument("history op responds before it is invoked");
        auto it = last_response.find(op.thread);
        if (it != last_response.end() && it->second > op.invoked) {
            throw std::invalid_argument("history thread has overlapping ops");
        }
        last_response[op.thread] = op.responded;
        by_key[op.key].push_back(op);
    }
    LinearizabilityResult result;
    bool inconclusive = false;
    for (auto& [key, ops] : by_key) {
        detail::KeySearch search(std::move(ops), history.initially_present.count(key) != 0, result.expansions, budget);
        const Verdict v = search.run();
        if (v == Verdict::NotLinearizable) {
            result.verdict = v;
            result.failing_key = key;
            return result;
        }
        if (v == Verdict::Inconclusive) inconclusive = true;
    }
    if (inconclusive) result.verdict = Verdict::Inconclusive;
    return result;
}

}  // namespace splaylist::verify

#endif  // SPLAYLIST_VERIFY_LINEARIZABILITY_HPP
