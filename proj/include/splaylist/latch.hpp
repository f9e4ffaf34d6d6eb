#ifndef SPLAYLIST_LATCH_HPP
#define SPLAYLIST_LATCH_HPP

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>
#include <vector>

namespace splaylist {

/// Record of blocking latch acquisitions that broke the key order. Only
/// written when SPLAYLIST_LATCH_ORDER_CHECK is enabled; a violation is
/// logged and then aborts unless aborting was switched off for a test.
class LatchOrderLog {
public:
    static void record(std::string entry) {
        {
            std::lock_guard<std::mutex> guard(mutex());
            entries().push_back(std::move(entry));
        }
        if (abort_on_violation()) {
            std::fprintf(stderr, "latch order violation: %s\n", entries().back().c_str());
            std::abort();
        }
    }

    static std::vector<std::string> snapshot() {
        std::lock_guard<std::mutex> guard(mutex());
        return entries();
    }

    static void clear() {
        std::lock_guard<std::mutex> guard(mutex());
        entries().clear();
    }

    static bool& abort_on_violation() {
        static bool value = true;
        return value;
    }

private:
    static std::mutex& mutex() {
        static std::mutex m;
        return m;
    }
    static std::vector<std::string>& entries() {
        static std::vector<std::string> log;
        return log;
    }
};

/// Per-thread list of held latches. `Before(a, b)` is the acquisition order.
template <class Node, class Before>
class LatchTracker {
public:
    static void on_lock(const Node* n, Before before) {
        for (const Node* held : held_) {
            if (!before(held, n)) {
                LatchOrderLog::record("blocking acquisition after a latch that does not precede it");
                break;
            }
        }
        held_.push_back(n);
    }

    static void on_try_lock(const Node* n) { held_.push_back(n); }

    static void on_unlock(const Node* n) {
        auto it = std::find(held_.begin(), held_.end(), n);
        if (it != held_.end()) held_.erase(it);
    }

    static std::size_t held_count() { return held_.size(); }

private:
    static inline thread_local std::vector<const Node*> held_;
};

}  // namespace splaylist

#endif  // SPLAYLIST_LATCH_HPP
