#ifndef SPLAYLIST_VERIFY_REFERENCE_MODEL_HPP
#define SPLAYLIST_VERIFY_REFERENCE_MODEL_HPP

#include <map>
#include <optional>

#include "splaylist/common.hpp"

namespace splaylist::verify {

/// Membership and hit counters with the splay-list's accounting rules and no
/// structure. `gated` says whether the operation updated counters; callers
/// running a relaxed structure pass the structure's own decision.
template <class Key>
class ReferenceModel {
public:
    struct Record {
        bool present = false;
        HitCount self_hits = 0;
    };

    bool contains(const Key& key, bool gated = true) {
        auto it = records_.find(key);
        if (it == records_.end()) return false;
        count(it->second, gated);
        const bool result = it->second.present;
        rebuild_if_needed();
        return result;
    }

    bool insert(const Key& key, bool gated = true) {
        auto it = records_.find(key);
        if (it == records_.end()) {
            records_.emplace(key, Record{true, 1});
            ++m_;
            ++live_m_;
            return true;
        }
        Record& r = it->second;
        const bool inserted = !r.present;
        if (inserted) {
            r.present = true;
            live_m_ += r.self_hits;
        }
        count(r, gated);
        rebuild_if_needed();
        return inserted;
    }

    bool erase(const Key& key, bool gated = true) {
        auto it = records_.find(key);
        if (it == records_.end()) return false;
        Record& r = it->second;
        const bool erased = r.present;
        if (erased) {
            r.present = false;
            live_m_ -= r.self_hits;
        }
        count(r, gated);
        rebuild_if_needed();
        return erased;
    }

    /// Physically present record, marked or not.
    std::optional<Record> find(const Key& key) const {
        auto it = records_.find(key);
        if (it == records_.end()) return std::nullopt;
        return it->second;
    }

    bool member(const Key& key) const {
        auto it = records_.find(key);
        return it != records_.end() && it->second.present;
    }

    HitCount hit_count() const noexcept { return m_; }
    HitCount live_hit_count() const noexcept { return live_m_; }
    std::size_t rebuilds() const noexcept { return rebuilds_; }
    const std::map<Key, Record>& records() const noexcept { return records_; }

private:
    void count(Record& r, bool gated) {
        if (!gated) return;
        ++m_;
        ++r.self_hits;
        if (r.present) ++live_m_;
    }

    void rebuild_if_needed() {
        if (m_ == 0 || 2 * (m_ - live_m_) < m_) return;
        for (auto it = records_.begin(); it != records_.end();) {
            it = it->second.present ? std::next(it) : records_.erase(it);
        }
        m_ = live_m_;
        ++rebuilds_;
    }

    std::map<Key, Record> records_;
    HitCount m_ = 0;
    HitCount live_m_ = 0;
    std::size_t rebuilds_ = 0;
};

}  // namespace splaylist::verify

#endif  // SPLAYLIST_VERIFY_REFERENCE_MODEL_HPP
