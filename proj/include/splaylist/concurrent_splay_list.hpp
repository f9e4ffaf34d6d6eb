#ifndef SPLAYLIST_CONCURRENT_SPLAY_LIST_HPP
#define SPLAYLIST_CONCURRENT_SPLAY_LIST_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "splaylist/common.hpp"
#include "splaylist/latch.hpp"
#include "splaylist/rebalance_policy.hpp"
#include "splaylist/rebuild.hpp"
#include "splaylist/snapshot.hpp"
#include "splaylist/splay_list.hpp"

#ifndef SPLAYLIST_LATCH_ORDER_CHECK
#define SPLAYLIST_LATCH_ORDER_CHECK 0
#endif

namespace splaylist {

struct ConcurrentStats {
    std::size_t update_passes = 0;
    std::size_t promotions = 0;
    std::size_t demotions = 0;
    std::size_t rebuilds = 0;
};

/// Thread-safe splay-list. Searches take no latches; counter updates and
/// rebalancing happen in one top-down pass that holds node latches
/// hand-over-hand, always acquiring in increasing key order. The bottom
/// level is lowered lazily, and only when a node at the bottom has to be
/// demoted. Rebuilds are stop-the-world.
///
/// Operations go through a Handle, one per thread, which owns that thread's
/// rebalancing decision stream.
template <class Key, class Value = Unit, class Compare = std::less<Key>>
class ConcurrentSplayList {
    struct Node;

    struct Slot {
        std::atomic<Node*> next{nullptr};
        std::atomic<HitCount> hits{0};
    };

    struct Node {
        Key key{};
        Value value{};
        NodeKind kind = NodeKind::User;
        std::atomic<Height> zero{0};
        std::atomic<Height> top{0};
        std::atomic<HitCount> self_hits{0};
        std::atomic<bool> deleted{false};
        std::mutex latch;
        std::array<Slot, kMaxLevel> slots;

        // Levels below the materialized zero share the lowest link.
        Node* next(Height h) const {
            const Height z = zero.load(std::memory_order_acquire);
            return slots[static_cast<std::size_t>(std::max(h, z))].next.load(std::memory_order_acquire);
        }
        HitCount hits(Height h) const {
            if (h < zero.load(std::memory_order_acquire)) return 0;
            return slots[static_cast<std::size_t>(h)].hits.load(std::memory_order_relaxed);
        }
        HitCount subtree(Height h) const { return self_hits.load(std::memory_order_relaxed) + hits(h); }
        Slot& slot(Height h) { return slots[static_cast<std::size_t>(h)]; }
    };

    struct Found {
        Node* node = nullptr;
        Node* pred = nullptr;  // last node before the key on the bottom level
    };

    struct KeyOrder {
        const Compare* cmp;
        bool operator()(const Node* a, const Node* b) const {
            if (a->kind == NodeKind::Head || b->kind == NodeKind::Tail) return a != b;
            if (a->kind == NodeKind::Tail || b->kind == NodeKind::Head) return false;
            return (*cmp)(a->key, b->key);
        }
    };
    using Tracker = LatchTracker<Node, KeyOrder>;

public:
    using Entries = std::vector<RebuildEntry<Key, Value>>;

    class Handle {
    public:
        bool contains(const Key& key) { return list_->do_lookup(key, *this).has_value(); }
        std::optional<Value> lookup(const Key& key) { return list_->do_lookup(key, *this); }
        bool insert(const Key& key, Value value = Value{}) { return list_->do_insert(key, std::move(value), *this); }
        bool erase(const Key& key) { return list_->do_erase(key, *this); }

        const OpCost& last_cost() const noexcept { return cost_; }
        HitCount hit_count() const noexcept { return list_->hit_count(); }
        HitCount live_hit_count() const noexcept { return list_->live_hit_count(); }
        std::optional<NodeInfo> peek(const Key& key) const { return list_->peek(key); }

    private:
        friend class ConcurrentSplayList;
        Handle(ConcurrentSplayList* list, RebalancePolicy policy) : list_(list), policy_(std::move(policy)) {}

        ConcurrentSplayList* list_;
        RebalancePolicy policy_;
        OpCost cost_;
    };

    /// p in (0, 1]; handle i draws from a stream seeded with base_seed + i.
    explicit ConcurrentSplayList(double p = 1.0, std::uint64_t base_seed = 0, Compare cmp = Compare{})
        : probability_(p), base_seed_(base_seed), cmp_(std::move(cmp)) {
        if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("rebalance probability must be in (0, 1]");
        head_ = new Node;
        tail_ = new Node;
        head_->kind = NodeKind::Head;
        tail_->kind = NodeKind::Tail;
        reset_sentinels(zero_level_for(0));
    }

    ConcurrentSplayList(const ConcurrentSplayList&) = delete;
    ConcurrentSplayList& operator=(const ConcurrentSplayList&) = delete;

    ~ConcurrentSplayList() {
        destroy_users();
        delete head_;
        delete tail_;
    }

    Handle handle(std::size_t thread_index) {
        const std::uint64_t seed = base_seed_ + thread_index;
        return Handle(this, probability_ >= 1.0 ? RebalancePolicy::exact() : RebalancePolicy::relaxed(probability_, seed));
    }

    // Everything below requires quiescence unless noted.

    /// Replace the contents with a dumped state.
    void load(const Snapshot<Key>& snap) {
        std::unique_lock<std::shared_mutex> world(world_);
        destroy_users();
        reset_sentinels(snap.zero);
        std::vector<Node*> nodes;
        std::size_t live = 0;
        for (const auto& in : snap.nodes) {
            if (in.kind == NodeKind::Tail) continue;
            Node* n = in.kind == NodeKind::Head ? head_ : new Node;
            if (in.kind == NodeKind::User) {
                if (in.top >= kSentinelLevel) throw std::invalid_argument("load: user node at sentinel level");
                if (!nodes.empty() && !cmp_(nodes.back()->key, in.key)) {
                    throw std::invalid_argument("load: keys must be strictly increasing");
                }
                n->key = in.key;
                n->zero.store(snap.zero);
                n->top.store(in.top);
                n->self_hits.store(in.self_hits);
                n->deleted.store(in.deleted);
                nodes.push_back(n);
                if (!in.deleted) ++live;
            }
            for (std::size_t i = 0; i < in.hits.size(); ++i) {
                n->slot(snap.zero + static_cast<Height>(i)).hits.store(in.hits[i]);
            }
        }
        link_levels(nodes, snap.zero);
        m_.store(snap.m);
        live_m_.store(snap.live_m);
        physical_size_.store(nodes.size());
        live_size_.store(live);
    }

    /// Build so that no node satisfies either rebalancing condition.
    void assign(const Entries& entries, RebuildAlgorithm algorithm = RebuildAlgorithm::Auto) {
        std::unique_lock<std::shared_mutex> world(world_);
        rebuild_algorithm_ = algorithm;
        assemble(entries);
    }

    Snapshot<Key> snapshot() const {
        std::unique_lock<std::shared_mutex> world(world_);
        Snapshot<Key> snap;
        const Height z = zero_.load();
        snap.m = m_.load();
        snap.live_m = live_m_.load();
        snap.zero = z;
        std::unordered_map<const Node*, std::size_t> index;
        for (const Node* n = head_; n != nullptr; n = n->kind == NodeKind::Tail ? nullptr : n->next(z)) {
            index.emplace(n, snap.nodes.size());
            typename Snapshot<Key>::Node out;
            out.kind = n->kind;
            if (n->kind == NodeKind::User) out.key = n->key;
            out.top = n->top.load();
            out.self_hits = n->self_hits.load();
            out.deleted = n->deleted.load();
            for (Height h = z; h <= out.top; ++h) out.hits.push_back(n->hits(h));
            snap.nodes.push_back(std::move(out));
        }
        const std::size_t limit = snap.nodes.size() + 1;
        for (Height h = z; h <= kSentinelLevel; ++h) {
            std::vector<std::size_t> members;
            for (const Node* x = head_; x != nullptr && members.size() <= limit; x = x->next(h)) {
                auto it = index.find(x);
                if (it == index.end()) break;
                members.push_back(it->second);
                if (x->kind == NodeKind::Tail) break;
            }
            snap.levels.push_back(std::move(members));
        }
        return snap;
    }

    /// Latch-free, non-counting probe. Safe concurrently.
    std::optional<NodeInfo> peek(const Key& key) const {
        const Node* n = locate(key);
        if (n == nullptr) return std::nullopt;
        return NodeInfo{n->self_hits.load(), n->top.load() - zero_.load(), n->deleted.load()};
    }

    /// Lowest level the node for `key` has links for.
    std::optional<Height> materialized_zero(const Key& key) const {
        const Node* n = locate(key);
        if (n == nullptr) return std::nullopt;
        return n->zero.load();
    }

    struct RawSlot {
        std::optional<Key> next;  ///< empty for the tail or an absent link
        HitCount hits = 0;
    };

    /// Physical slots of the node for `key`, from its own zero level up.
    std::vector<RawSlot> materialized_slots(const Key& key) const {
        std::vector<RawSlot> out;
        const Node* n = locate(key);
        if (n == nullptr) return out;
        for (Height h = n->zero.load(); h <= n->top.load(); ++h) {
            const Slot& s = n->slots[static_cast<std::size_t>(h)];
            const Node* nx = s.next.load();
            out.push_back({is_user(nx) ? std::optional<Key>(nx->key) : std::nullopt, s.hits.load()});
        }
        return out;
    }

    /// Lower the bottom level without touching any node; nodes catch up as
    /// traversals pass them.
    void force_zero_level(Height z) {
        Height current = zero_.load();
        while (z < current && !zero_.compare_exchange_weak(current, z)) {
        }
    }

    void rebuild() {
        std::unique_lock<std::shared_mutex> world(world_);
        rebuild_locked();
    }

    HitCount hit_count() const noexcept { return m_.load(); }
    HitCount live_hit_count() const noexcept { return live_m_.load(); }
    Height zero_level() const noexcept { return zero_.load(); }
    std::size_t size() const noexcept { return live_size_.load(); }
    std::size_t physical_size() const noexcept { return physical_size_.load(); }
    double probability() const noexcept { return probability_; }

    ConcurrentStats stats() const {
        ConcurrentStats s;
        s.update_passes = passes_.load();
        s.promotions = promotions_.load();
        s.demotions = demotions_.load();
        s.rebuilds = rebuilds_.load();
        return s;
    }

private:
    bool is_user(const Node* n) const { return n != nullptr && n->kind == NodeKind::User; }
    bool after(const Node* n, const Key& key) const { return n->kind == NodeKind::Tail || cmp_(key, n->key); }

    void lock(Node* n) {
#if SPLAYLIST_LATCH_ORDER_CHECK
        Tracker::on_lock(n, KeyOrder{&cmp_});
#endif
        n->latch.lock();
    }

    bool try_lock(Node* n) {
        if (!n->latch.try_lock()) return false;
#if SPLAYLIST_LATCH_ORDER_CHECK
        Tracker::on_try_lock(n);
#endif
        return true;
    }

    void unlock(Node* n) {
#if SPLAYLIST_LATCH_ORDER_CHECK
        Tracker::on_unlock(n);
#endif
        n->latch.unlock();
    }

    // Caller holds n's latch.
    static void materialize(Node* n, Height to) {
        Height z = n->zero.load(std::memory_order_relaxed);
        while (z > to) {
            Slot& below = n->slot(z - 1);
            below.hits.store(0, std::memory_order_relaxed);
            below.next.store(n->slot(z).next.load(std::memory_order_relaxed), std::memory_order_relaxed);
            n->zero.store(--z, std::memory_order_release);
        }
    }

    void update_up_to_level(Node* n, Height level) {
        if (n->zero.load(std::memory_order_acquire) <= level) return;
        lock(n);
        materialize(n, level);
        unlock(n);
    }

    // Successor on level h, materializing n down to h first. A node demoted
    // below h reads as the end of the level.
    Node* advance(Node* n, Height h) {
        update_up_to_level(n, h);
        return n->slot(h).next.load(std::memory_order_acquire);
    }

    const Node* locate(const Key& key) const {
        const Node* pred = head_;
        for (Height h = kSentinelLevel; h >= zero_.load(std::memory_order_acquire); --h) {
            for (const Node* succ = pred->next(h); succ != nullptr; succ = pred->next(h)) {
                if (after(succ, key)) break;
                if (!cmp_(succ->key, key)) return succ;
                pred = succ;
            }
        }
        return nullptr;
    }

    Found find(const Key& key, OpCost& cost) {
        Node* pred = head_;
        for (Height h = kSentinelLevel; h >= zero_.load(std::memory_order_acquire); --h) {
            ++cost.levels_visited;
            Node* succ = advance(pred, h);
            ++cost.search_len;
            while (succ != nullptr) {
                if (after(succ, key)) break;
                if (!cmp_(succ->key, key)) {
                    update_up_to_level(succ, h);
                    cost.hit = true;
                    cost.self_hits_before = succ->self_hits.load(std::memory_order_relaxed);
                    return {succ, pred};
                }
                pred = succ;
                ++cost.forward_len;
                succ = advance(pred, h);
                ++cost.search_len;
            }
        }
        return {nullptr, pred};
    }

    std::optional<Value> do_lookup(const Key& key, Handle& self) {
        self.cost_ = OpCost{};
        std::optional<Value> result;
        {
            std::shared_lock<std::shared_mutex> world(world_);
            self.cost_.m_before = m_.load(std::memory_order_relaxed);
            const Found f = find(key, self.cost_);
            if (f.node == nullptr) return std::nullopt;
            if (self.policy_.should_rebalance()) update(f.node, key, self.cost_);
            if constexpr (std::is_same_v<Value, Unit>) {
                if (!f.node->deleted.load(std::memory_order_acquire)) result = Unit{};
            } else {
                lock(f.node);
                if (!f.node->deleted.load()) result = f.node->value;
                unlock(f.node);
            }
        }
        maybe_rebuild();
        return result;
    }

    bool do_insert(const Key& key, Value value, Handle& self) {
        self.cost_ = OpCost{};
        std::shared_lock<std::shared_mutex> world(world_);
        self.cost_.m_before = m_.load(std::memory_order_relaxed);
        for (;;) {
            const Found f = find(key, self.cost_);
            if (f.node != nullptr) {
                bool inserted = false;
                lock(f.node);
                if (f.node->deleted.load()) {
                    f.node->deleted.store(false);
                    f.node->value = std::move(value);
                    live_m_.fetch_add(f.node->self_hits.load());
                    live_size_.fetch_add(1);
                    inserted = true;
                }
                unlock(f.node);
                if (self.policy_.should_rebalance()) update(f.node, key, self.cost_);
                world.unlock();
                maybe_rebuild();
                return inserted;
            }
            Node* pred = f.pred;
            lock(pred);
            const Height z = zero_.load(std::memory_order_acquire);
            materialize(pred, z);
            const Height level = pred->zero.load(std::memory_order_relaxed);
            Node* succ = pred->slot(level).next.load(std::memory_order_acquire);
            if (!after(succ, key)) {
                unlock(pred);
                continue;
            }
            auto* n = new Node;
            n->key = key;
            n->value = std::move(value);
            n->zero.store(level, std::memory_order_relaxed);
            n->top.store(level, std::memory_order_relaxed);
            n->slot(level).next.store(succ, std::memory_order_relaxed);
            pred->slot(level).next.store(n, std::memory_order_release);
            unlock(pred);
            physical_size_.fetch_add(1);
            live_size_.fetch_add(1);
            self.cost_.inserted_new = true;
            self.cost_.hit = true;
            update(n, key, self.cost_);
            return true;
        }
    }

    bool do_erase(const Key& key, Handle& self) {
        self.cost_ = OpCost{};
        bool erased = false;
        {
            std::shared_lock<std::shared_mutex> world(world_);
            self.cost_.m_before = m_.load(std::memory_order_relaxed);
            const Found f = find(key, self.cost_);
            if (f.node == nullptr) return false;
            lock(f.node);
            if (!f.node->deleted.load()) {
                f.node->deleted.store(true);
                live_m_.fetch_sub(f.node->self_hits.load());
                live_size_.fetch_sub(1);
                erased = true;
            }
            unlock(f.node);
            if (self.policy_.should_rebalance()) update(f.node, key, self.cost_);
        }
        maybe_rebuild();
        return erased;
    }

    // Forward rebalancing pass for a present target. `owner` is the latched
    // parent of the key one level up; `owner_pred` precedes it on its top
    // level.
    void update(Node* target, const Key& key, OpCost& cost) {
        const HitCount m = m_.fetch_add(1, std::memory_order_acq_rel) + 1;
        cost.rebalanced = true;
        passes_.fetch_add(1, std::memory_order_relaxed);
        Node* owner = head_;
        Node* owner_pred = nullptr;
        lock(head_);
        head_->slot(kSentinelLevel).hits.fetch_add(1, std::memory_order_relaxed);

        for (Height h = kTopUserLevel; h >= 0; --h) {
            materialize(owner, h);

            // Only the owner's first child can satisfy the ascent condition.
            for (;;) {
                Node* c = owner->next(h);
                if (h >= kTopUserLevel || !is_user(c) || after(c, key) || c->top.load() != h) break;
                if (!should_promote(owner->hits(h + 1) - owner->hits(h), h, m)) break;
                lock(c);
                if (owner->next(h) != c || c->top.load() != h) {
                    unlock(c);
                    break;
                }
                materialize(c, h);
                const HitCount pending = c == target ? 1 : 0;
                const Height cap = std::min(owner->top.load(), kTopUserLevel);
                Height t = h;
                do {
                    const HitCount potential = owner->hits(t + 1) - owner->hits(t);
                    Slot& up = owner->slot(t + 1);
                    c->slot(t + 1).hits.store(potential - c->self_hits.load() - pending, std::memory_order_relaxed);
                    c->slot(t + 1).next.store(up.next.load(), std::memory_order_relaxed);
                    c->top.store(t + 1);
                    up.hits.store(owner->hits(t), std::memory_order_relaxed);
                    up.next.store(c, std::memory_order_release);
                    ++t;
                    ++cost.promotions;
                    promotions_.fetch_add(1, std::memory_order_relaxed);
                } while (t + 1 <= cap && should_promote(owner->hits(t + 1) - owner->hits(t), t, m));

                Node* c_pred = owner;
                if (owner != head_ && owner->top.load() == t && owner_pred != nullptr &&
                    demote_vacated_owner(owner_pred, owner, t, m, cost)) {
                    c_pred = owner_pred;
                }
                unlock(owner);
                owner = c;
                owner_pred = c_pred;
            }

            // Sweep the level, demoting where possible, up to the key's parent.
            Node* walk_pred = owner_pred;
            Node* pred = owner;
            Node* curr = owner->next(h);
            // A null link means a pass further ahead demoted the node we
            // stood on; the owner is latched, so start over from it.
            auto restart = [&] {
                walk_pred = owner_pred;
                pred = owner;
                curr = owner->next(h);
            };
            for (;;) {
                if (curr == nullptr) {
                    restart();
                    continue;
                }
                if (after(curr, key)) {
                    if (pred == owner) break;
                    lock(pred);
                    Node* nx = pred->next(h);
                    if (nx != nullptr && after(nx, key)) break;
                    unlock(pred);
                    if (nx == nullptr) {
                        restart();
                    } else {
                        curr = nx;  // a node was linked behind pred meanwhile
                    }
                    continue;
                }
                Node* nx = curr->next(h);
                ++cost.backward_len;
                if (curr != target && nx != nullptr && !after(nx, key) && curr->top.load() == h &&
                    should_demote(pred->subtree(h) + curr->subtree(h), h, m) &&
                    demote(pred, curr, h, key, m, owner, cost)) {
                    curr = pred->next(h);
                    continue;
                }
                walk_pred = pred;
                pred = curr;
                curr = nx;
            }

            if (pred == target) {
                target->self_hits.fetch_add(1, std::memory_order_relaxed);
                if (!target->deleted.load()) live_m_.fetch_add(1, std::memory_order_relaxed);
                if (pred != owner) unlock(owner);
                unlock(pred);
                return;
            }
            materialize(pred, h);
            pred->slot(h).hits.fetch_add(1, std::memory_order_relaxed);
            if (pred != owner) {
                unlock(owner);
                owner = pred;
                owner_pred = walk_pred;
            }
        }
        unlock(owner);
        assert(false && "update pass did not reach its target");
    }

    // The owner just handed part of its top-level subtree to a promoted
    // child. Its predecessor precedes it in key order, so only try_lock.
    bool demote_vacated_owner(Node* pred, Node* owner, Height t, HitCount m, OpCost& cost) {
        if (!try_lock(pred)) return false;
        const bool ok = pred->top.load() >= t && pred->next(t) == owner && owner->top.load() == t &&
                        should_demote(pred->subtree(t) + owner->subtree(t), t, m);
        if (ok) unlink(pred, owner, t, cost);
        unlock(pred);
        return ok;
    }

    bool demote(Node* pred, Node* curr, Height h, const Key& key, HitCount m, Node* owner, OpCost& cost) {
        Height z = zero_.load(std::memory_order_acquire);
        if (h == z) {
            if (h == 0) return false;
            zero_.compare_exchange_strong(z, h - 1);
        }
        if (pred != owner) lock(pred);
        lock(curr);
        Node* nx = curr->next(h);
        const bool ok = pred->top.load() >= h && pred->next(h) == curr && curr->top.load() == h && nx != nullptr &&
                        !after(nx, key) && should_demote(pred->subtree(h) + curr->subtree(h), h, m);
        if (ok) unlink(pred, curr, h, cost);
        unlock(curr);
        if (pred != owner) unlock(pred);
        return ok;
    }

    // Both latches held; pred precedes u on level h and u.top == h.
    void unlink(Node* pred, Node* u, Height h, OpCost& cost) {
        materialize(pred, h - 1);
        materialize(u, h - 1);
        Slot& ps = pred->slot(h);
        Slot& us = u->slot(h);
        ps.hits.fetch_add(u->self_hits.load() + us.hits.load(), std::memory_order_relaxed);
        ps.next.store(us.next.load(), std::memory_order_release);
        us.next.store(nullptr, std::memory_order_release);
        us.hits.store(0, std::memory_order_relaxed);
        u->top.store(h - 1);
        ++cost.demotions;
        demotions_.fetch_add(1, std::memory_order_relaxed);
    }

    bool rebuild_due() const {
        const HitCount m = m_.load();
        const HitCount live = live_m_.load();
        return m > 0 && live <= m && 2 * (m - live) >= m;
    }

    void maybe_rebuild() {
        if (!rebuild_due()) return;
        std::unique_lock<std::shared_mutex> world(world_);
        if (rebuild_due()) rebuild_locked();
    }

    void rebuild_locked() {
        Entries entries;
        const Height z = zero_.load();
        for (Node* n = head_->next(z); is_user(n); n = n->next(z)) {
            if (!n->deleted.load()) entries.push_back({n->key, n->value, n->self_hits.load()});
        }
        assemble(entries);
        rebuilds_.fetch_add(1);
    }

    void assemble(const Entries& entries) {
        for (std::size_t i = 1; i < entries.size(); ++i) {
            if (!cmp_(entries[i - 1].key, entries[i].key)) {
                throw std::invalid_argument("rebuild: keys must be strictly increasing");
            }
        }
        std::vector<HitCount> hits;
        HitCount total = 0;
        for (const auto& e : entries) {
            hits.push_back(e.hits);
            total += e.hits;
        }
        const SplitResult split = split_entries(hits, rebuild_algorithm_);
        destroy_users();
        const Height z = zero_level_for(total);
        reset_sentinels(z);
        std::vector<Node*> nodes;
        nodes.reserve(entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            auto* n = new Node;
            n->key = entries[i].key;
            n->value = entries[i].value;
            n->self_hits.store(entries[i].hits);
            n->zero.store(z);
            n->top.store(split_level(split.weights[i], total));
            nodes.push_back(n);
        }
        link_levels(nodes, z);
        std::array<Node*, kMaxLevel> owner{};
        owner.fill(head_);
        for (Node* n : nodes) {
            const Height top = n->top.load();
            for (Height h = top + 1; h <= kSentinelLevel; ++h) owner[h]->slot(h).hits.fetch_add(n->self_hits.load());
            for (Height h = z; h <= top; ++h) owner[h] = n;
        }
        m_.store(total);
        live_m_.store(total);
        physical_size_.store(nodes.size());
        live_size_.store(nodes.size());
    }

    void link_levels(const std::vector<Node*>& nodes, Height z) {
        std::array<Node*, kMaxLevel> last{};
        last.fill(head_);
        for (Node* n : nodes) {
            for (Height h = z; h <= n->top.load(); ++h) {
                last[h]->slot(h).next.store(n);
                last[h] = n;
            }
        }
        for (Height h = z; h <= kSentinelLevel; ++h) last[h]->slot(h).next.store(tail_);
    }

    void reset_sentinels(Height z) {
        zero_.store(z);
        for (Node* s : {head_, tail_}) {
            s->zero.store(z);
            s->top.store(kSentinelLevel);
            s->self_hits.store(1);
            for (Slot& slot : s->slots) {
                slot.next.store(nullptr);
                slot.hits.store(0);
            }
        }
        for (Height h = z; h <= kSentinelLevel; ++h) head_->slot(h).next.store(tail_);
        m_.store(0);
        live_m_.store(0);
        physical_size_.store(0);
        live_size_.store(0);
    }

    void destroy_users() {
        const Height z = zero_.load();
        Node* n = head_->next(z);
        while (is_user(n)) {
            Node* next = n->next(z);
            delete n;
            n = next;
        }
        for (Height h = z; h <= kSentinelLevel; ++h) head_->slot(h).next.store(tail_);
    }

    double probability_;
    std::uint64_t base_seed_;
    Compare cmp_;
    Node* head_ = nullptr;
    Node* tail_ = nullptr;
    RebuildAlgorithm rebuild_algorithm_ = RebuildAlgorithm::Auto;

    std::atomic<HitCount> m_{0};
    std::atomic<HitCount> live_m_{0};
    std::atomic<Height> zero_{kTopUserLevel};
    std::atomic<std::size_t> physical_size_{0};
    std::atomic<std::size_t> live_size_{0};

    std::atomic<std::size_t> passes_{0};
    std::atomic<std::size_t> promotions_{0};
    std::atomic<std::size_t> demotions_{0};
    std::atomic<std::size_t> rebuilds_{0};

    // Shared for every operation, exclusive for rebuilds. Nodes are freed
    // only under the exclusive side, when no traversal can hold them.
    mutable std::shared_mutex world_;
};

}  // namespace splaylist

#endif  // SPLAYLIST_CONCURRENT_SPLAY_LIST_HPP
