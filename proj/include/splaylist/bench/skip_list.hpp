#ifndef SPLAYLIST_BENCH_SKIP_LIST_HPP
#define SPLAYLIST_BENCH_SKIP_LIST_HPP

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

namespace splaylist::bench {

/// Baseline: a concurrent skip-list with random geometric heights (p = 1/2).
/// Searches are latch-free. Deletion only marks, and nodes are never
/// unlinked, mirroring the splay-list's logical deletion. Inserts link one
/// level at a time under the predecessor's latch.
template <class Key = std::int64_t, class Compare = std::less<Key>>
class ConcurrentSkipList {
    static constexpr int kLevels = 32;

    struct Node {
        Key key{};
        int height = 1;
        std::atomic<bool> deleted{false};
        std::mutex latch;
        std::array<std::atomic<Node*>, kLevels> next{};
    };

public:
    class Handle {
    public:
        bool contains(const Key& key) {
            Node* n = list_->find(key, path_);
            return n != nullptr && !n->deleted.load(std::memory_order_acquire);
        }
        bool insert(const Key& key) {
            Node* n = list_->find(key, path_);
            if (n != nullptr) return n->deleted.exchange(false);
            return list_->link(key, random_height());
        }
        bool erase(const Key& key) {
            Node* n = list_->find(key, path_);
            return n != nullptr && !n->deleted.exchange(true);
        }
        /// Successor links examined by the last search.
        std::size_t last_path_length() const noexcept { return path_; }

    private:
        friend class ConcurrentSkipList;
        Handle(ConcurrentSkipList* list, std::uint64_t seed) : list_(list), rng_(seed) {}

        int random_height() {
            int h = 1;
            while (h < kLevels && (rng_() & 1u) != 0) ++h;
            return h;
        }

        ConcurrentSkipList* list_;
        std::mt19937_64 rng_;
        std::size_t path_ = 0;
    };

    explicit ConcurrentSkipList(std::uint64_t seed = 0, Compare cmp = Compare{}) : seed_(seed), cmp_(std::move(cmp)) {
        head_.height = kLevels;
    }

    ConcurrentSkipList(const ConcurrentSkipList&) = delete;
    ConcurrentSkipList& operator=(const ConcurrentSkipList&) = delete;

    ~ConcurrentSkipList() {
        Node* n = head_.next[0].load();
        while (n != nullptr) {
            Node* nx = n->next[0].load();
            delete n;
            n = nx;
        }
    }

    Handle handle(std::size_t thread_index) { return Handle(this, seed_ + thread_index); }

    /// Height of the node for `key`, counting the bottom list as 0.
    std::optional<int> height_of(const Key& key) const {
        std::size_t ignored = 0;
        const Node* n = const_cast<ConcurrentSkipList*>(this)->find(key, ignored);
        if (n == nullptr) return std::nullopt;
        return n->height - 1;
    }

    std::size_t size() const {
        std::size_t count = 0;
        for (const Node* n = head_.next[0].load(); n != nullptr; n = n->next[0].load()) {
            if (!n->deleted.load()) ++count;
        }
        return count;
    }

private:
    Node* find(const Key& key, std::size_t& path) {
        path = 0;
        Node* pred = &head_;
        for (int h = top_.load(std::memory_order_acquire) - 1; h >= 0; --h) {
            Node* succ = pred->next[h].load(std::memory_order_acquire);
            ++path;
            while (succ != nullptr && cmp_(succ->key, key)) {
                pred = succ;
                succ = pred->next[h].load(std::memory_order_acquire);
                ++path;
            }
            if (succ != nullptr && !cmp_(key, succ->key)) return succ;
        }
        return nullptr;
    }

    // Last node before `key` on level h, starting from `from`.
    Node* predecessor(Node* from, const Key& key, int h) {
        Node* pred = from;
        for (Node* succ = pred->next[h].load(std::memory_order_acquire); succ != nullptr && cmp_(succ->key, key);
             succ = pred->next[h].load(std::memory_order_acquire)) {
            pred = succ;
        }
        return pred;
    }

    bool link(const Key& key, int height) {
        std::array<Node*, kLevels> preds{};
        Node* pred = &head_;
        for (int h = kLevels - 1; h >= 0; --h) {
            pred = predecessor(pred, key, h);
            preds[h] = pred;
        }
        auto* node = new Node;
        node->key = key;
        node->height = height;
        for (int h = 0; h < height; ++h) {
            for (;;) {
                Node* p = predecessor(preds[h], key, h);
                std::lock_guard<std::mutex> guard(p->latch);
                Node* succ = p->next[h].load(std::memory_order_acquire);
                if (succ != nullptr && cmp_(succ->key, key)) continue;  // moved on; walk further
                if (h == 0 && succ != nullptr && !cmp_(key, succ->key)) {
                    // Lost a race with an insert of the same key.
                    delete node;
                    return !succ->deleted.exchange(false);
                }
                node->next[h].store(succ, std::memory_order_relaxed);
                p->next[h].store(node, std::memory_order_release);
                break;
            }
        }
        int top = top_.load(std::memory_order_relaxed);
        while (top < height && !top_.compare_exchange_weak(top, height, std::memory_order_acq_rel)) {
        }
        return true;
    }

    std::uint64_t seed_;
    Compare cmp_;
    Node head_;
    std::atomic<int> top_{1};
};

}  // namespace splaylist::bench

#endif  // SPLAYLIST_BENCH_SKIP_LIST_HPP
