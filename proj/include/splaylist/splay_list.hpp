#ifndef SPLAYLIST_SPLAY_LIST_HPP
#define SPLAYLIST_SPLAY_LIST_HPP

#include <array>
#include <cassert>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "splaylist/common.hpp"
#include "splaylist/rebalance_policy.hpp"
#include "splaylist/rebuild.hpp"
#include "splaylist/snapshot.hpp"

namespace splaylist {

/// Payload type for set semantics.
struct Unit {
    friend bool operator==(Unit, Unit) { return true; }
};

/// Per-operation instrumentation. Lengths count nodes; `m_before` and
/// `self_hits_before` are the counters seen by the forward pass.
struct OpCost {
    bool hit = false;            ///< a physically present node was visited
    bool rebalanced = false;     ///< counters were updated and the backward pass ran
    bool inserted_new = false;
    HitCount m_before = 0;
    HitCount self_hits_before = 0;
    std::size_t search_len = 0;    ///< successor links examined by the search
    std::size_t forward_len = 0;   ///< nodes reached horizontally by the search
    std::size_t backward_len = 0;  ///< nodes examined by the backward pass
    int levels_visited = 0;        ///< sub-lists entered, sentinel list included
    int max_non_descending = 0;    ///< worst sub-list count of nodes failing the descent test
    std::size_t demotions = 0;
    std::size_t promotions = 0;
};

struct ListStats {
    std::size_t hit_operations = 0;
    std::size_t promotions = 0;
    std::size_t demotions = 0;
    std::size_t rebuilds = 0;
    // Levels gained without a promotion: one per present node at each
    // expansion, plus the logical heights handed out by a rebuild.
    std::size_t lifts = 0;
};

/// Read-only view of one present node.
struct NodeInfo {
    HitCount self_hits = 0;
    Height height = 0;  ///< logical
    bool deleted = false;
};

template <class Key, class Value>
struct RebuildEntry {
    Key key;
    Value value;
    HitCount hits;
};

/// Sequential splay-list: an ordered map whose node heights follow access
/// frequency.
///
/// Levels are physical indices in [zero_level(), kSentinelLevel]. The
/// sentinels sit at kSentinelLevel; the lowest list moves down one level
/// each time the hit count reaches a new power of two, and nodes copy their
/// lowest link downwards the next time a traversal touches them.
template <class Key, class Value = Unit, class Compare = std::less<Key>>
class SplayList {
    struct Node;

    struct Slot {
        Node* next = nullptr;
        HitCount hits = 0;
    };

    struct Node {
        Key key{};
        Value value{};
        Height zero = 0;
        Height top = 0;
        HitCount self_hits = 0;
        bool deleted = false;
        NodeKind kind = NodeKind::User;
        std::vector<Slot> slots;  // index h - zero

        Node* next(Height h) const { return slots[h < zero ? 0 : static_cast<std::size_t>(h - zero)].next; }
        HitCount hits(Height h) const { return h < zero ? 0 : slots[static_cast<std::size_t>(h - zero)].hits; }
        HitCount subtree(Height h) const { return self_hits + hits(h); }

        Slot& slot(Height h) {
            assert(h >= zero && h <= top);
            return slots[static_cast<std::size_t>(h - zero)];
        }

        // Levels below the old zero are exact copies of the lowest link with
        // an empty subtree.
        void materialize(Height to) {
            if (zero <= to) return;
            const Slot fill{slots.front().next, 0};
            slots.insert(slots.begin(), static_cast<std::size_t>(zero - to), fill);
            zero = to;
        }
    };

    struct Entry {
        Node* node;
        HitCount partial;  // subtree hits from the level's start up to this node, exclusive
    };

    enum class Outcome { Kept, Demoted, Promoted };

public:
    using key_type = Key;
    using mapped_type = Value;
    using Entries = std::vector<RebuildEntry<Key, Value>>;

    explicit SplayList(RebalancePolicy policy = RebalancePolicy::exact(), Compare cmp = Compare{})
        : policy_(std::move(policy)), cmp_(std::move(cmp)) {
        init_sentinels(zero_level_for(0));
    }

    SplayList(const SplayList&) = delete;
    SplayList& operator=(const SplayList&) = delete;

    SplayList(SplayList&& other) noexcept { steal(other); }
    SplayList& operator=(SplayList&& other) noexcept {
        if (this != &other) {
            destroy();
            steal(other);
        }
        return *this;
    }

    ~SplayList() { destroy(); }

    /// Build directly from key-ordered entries so that no node satisfies
    /// either rebalancing condition.
    static SplayList rebuilt(const Entries& entries,
                             RebuildAlgorithm algorithm = RebuildAlgorithm::Auto,
                             RebalancePolicy policy = RebalancePolicy::exact(), Compare cmp = Compare{}) {
        SplayList list(std::move(policy), std::move(cmp));
        list.rebuild_algorithm_ = algorithm;
        list.assemble(entries);
        return list;
    }

    /// Restore a dumped state verbatim: heights, counters, marks and the
    /// global counters are taken from the snapshot, links follow the heights.
    static SplayList from_snapshot(const Snapshot<Key>& snap,
                                   RebalancePolicy policy = RebalancePolicy::exact(), Compare cmp = Compare{}) {
        SplayList list(std::move(policy), std::move(cmp));
        list.load(snap);
        return list;
    }

    bool contains(const Key& key) { return lookup(key).has_value(); }

    /// Hit-operation returning the payload of a live key.
    std::optional<Value> lookup(const Key& key) {
        begin_op();
        Node* node = search(key);
        if (node == nullptr) return std::nullopt;
        hit(node, policy_.should_rebalance());
        std::optional<Value> result;
        if (!node->deleted) result = node->value;
        maybe_rebuild();
        return result;
    }

    bool insert(const Key& key, Value value = Value{}) {
        begin_op();
        Node* node = search(key);
        if (node == nullptr) {
            node = link_at_bottom(key, std::move(value));
            hit(node, true);
            return true;
        }
        bool inserted = false;
        if (node->deleted) {
            node->deleted = false;
            node->value = std::move(value);
            live_m_ += node->self_hits;
            ++live_size_;
            inserted = true;
        }
        hit(node, policy_.should_rebalance());
        maybe_rebuild();
        return inserted;
    }

    bool erase(const Key& key) {
        begin_op();
        Node* node = search(key);
        if (node == nullptr) return false;
        bool erased = false;
        if (!node->deleted) {
            node->deleted = true;
            live_m_ -= node->self_hits;
            --live_size_;
            erased = true;
        }
        hit(node, policy_.should_rebalance());
        maybe_rebuild();
        return erased;
    }

    /// Non-counting probe; for inspection only.
    std::optional<NodeInfo> peek(const Key& key) const {
        const Node* cur = head_;
        for (Height h = kSentinelLevel; h >= zero_; --h) {
            for (const Node* nx = cur->next(h); at_or_before(nx, key); nx = cur->next(h)) {
                if (same_key(nx, key)) return NodeInfo{nx->self_hits, nx->top - zero_, nx->deleted};
                cur = nx;
            }
        }
        return std::nullopt;
    }

    std::optional<Height> height_of(const Key& key) const {
        const auto info = peek(key);
        if (!info) return std::nullopt;
        return info->height;
    }

    HitCount hit_count() const noexcept { return m_; }
    HitCount live_hit_count() const noexcept { return live_m_; }
    Height zero_level() const noexcept { return zero_; }
    Height k() const noexcept { return height_parameter(m_); }
    std::size_t size() const noexcept { return live_size_; }
    std::size_t physical_size() const noexcept { return physical_size_; }
    bool empty() const noexcept { return live_size_ == 0; }

    const OpCost& last_cost() const noexcept { return cost_; }
    const ListStats& stats() const noexcept { return stats_; }
    const RebalancePolicy& policy() const noexcept { return policy_; }

    void set_rebuild_algorithm(RebuildAlgorithm algorithm) noexcept { rebuild_algorithm_ = algorithm; }

    /// Physically drop marked keys if their hits reach half of m.
    bool trigger_rebuild_if_needed() { return maybe_rebuild(); }

    /// Unconditional rebuild from the live keys.
    void rebuild() {
        Entries entries;
        entries.reserve(live_size_);
        for (Node* n = head_->next(zero_); n->kind == NodeKind::User; n = n->next(zero_)) {
            if (!n->deleted) entries.push_back({n->key, n->value, n->self_hits});
        }
        destroy();
        init_sentinels(zero_level_for(0));
        assemble(entries);
        ++stats_.rebuilds;
    }

    Snapshot<Key> snapshot() const {
        Snapshot<Key> snap;
        snap.m = m_;
        snap.live_m = live_m_;
        snap.zero = zero_;
        std::unordered_map<const Node*, std::size_t> index;
        const Node* n = head_;
        while (n != nullptr) {
            index.emplace(n, snap.nodes.size());
            typename Snapshot<Key>::Node out;
            out.kind = n->kind;
            if (n->kind == NodeKind::User) out.key = n->key;
            out.top = n->top;
            out.self_hits = n->self_hits;
            out.deleted = n->deleted;
            for (Height h = zero_; h <= n->top; ++h) out.hits.push_back(n->hits(h));
            snap.nodes.push_back(std::move(out));
            if (n->kind == NodeKind::Tail) break;
            n = n->next(zero_);
        }
        const std::size_t limit = snap.nodes.size() + 1;
        for (Height h = zero_; h <= kSentinelLevel; ++h) {
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

private:
    bool at_or_before(const Node* n, const Key& key) const {
        return n->kind == NodeKind::User && !cmp_(key, n->key);
    }

    bool same_key(const Node* n, const Key& key) const { return !cmp_(n->key, key); }

    void begin_op() { cost_ = OpCost{}; }

    // Forward pass. Records, per level, where the level was entered and
    // every node reached horizontally together with its partial sum.
    Node* search(const Key& key) {
        path_.clear();
        cost_.m_before = m_;
        Node* cur = head_;
        const Height z = zero_;
        for (Height h = kSentinelLevel; h >= z; --h) {
            start_[h] = cur;
            begin_[h] = path_.size();
            ++cost_.levels_visited;
            HitCount partial = 0;
            int non_descending = 1;
            for (;;) {
                Node* nx = cur->next(h);
                ++cost_.search_len;
                if (!at_or_before(nx, key)) break;
                nx->materialize(z);
                partial += cur->subtree(h);
                if (!should_demote(cur->subtree(h) + nx->subtree(h), h, m_)) ++non_descending;
                path_.push_back({nx, partial});
                ++cost_.forward_len;
                cur = nx;
                if (same_key(nx, key)) {
                    end_[h] = path_.size();
                    found_level_ = h;
                    cost_.max_non_descending = std::max(cost_.max_non_descending, non_descending);
                    cost_.hit = true;
                    cost_.self_hits_before = nx->self_hits;
                    return nx;
                }
            }
            end_[h] = path_.size();
            cost_.max_non_descending = std::max(cost_.max_non_descending, non_descending);
        }
        bottom_pred_ = cur;
        return nullptr;
    }

    Node* link_at_bottom(const Key& key, Value value) {
        const Height z = zero_;
        Node* pred = bottom_pred_;
        auto* node = new Node;
        node->key = key;
        node->value = std::move(value);
        node->zero = z;
        node->top = z;
        node->slots.push_back({pred->next(z), 0});
        pred->slot(z).next = node;
        const HitCount base = end_[z] > begin_[z] ? path_[end_[z] - 1].partial : 0;
        path_.push_back({node, base + pred->subtree(z)});
        end_[z] = path_.size();
        found_level_ = z;
        ++physical_size_;
        ++live_size_;
        cost_.inserted_new = true;
        cost_.hit = true;
        return node;
    }

    Node* parent_at(Height h) const { return end_[h] > begin_[h] ? path_[end_[h] - 1].node : start_[h]; }

    void hit(Node* target, bool rebalance) {
        cost_.hit = true;
        if (!rebalance) return;
        cost_.rebalanced = true;
        ++stats_.hit_operations;
        ++m_;
        ++target->self_hits;
        if (!target->deleted) ++live_m_;
        for (Height h = kSentinelLevel; h > target->top; --h) ++parent_at(h)->slot(h).hits;

        const Height z = zero_level_for(m_);
        if (z < zero_) {
            stats_.lifts += physical_size_ * static_cast<std::size_t>(zero_ - z);
            zero_ = z;
            head_->materialize(z);
            tail_->materialize(z);
        }
        backward_pass(target);
    }

    void backward_pass(Node* target) {
        Node* carried = nullptr;
        for (Height h = target->top; h <= kTopUserLevel; ++h) {
            const std::size_t b = begin_[h];
            const std::size_t e = end_[h];
            if (carried != nullptr) {
                Node* pred = parent_at(h);
                const HitCount partial = (e > b ? path_[e - 1].partial : 0) + pred->subtree(h);
                if (process(carried, pred, partial, h) == Outcome::Promoted) continue;
                carried = nullptr;
            }
            for (std::size_t i = e; i-- > b;) {
                Node* u = path_[i].node;
                Node* pred = i > b ? path_[i - 1].node : start_[h];
                if (process(u, pred, path_[i].partial, h) == Outcome::Promoted) {
                    carried = u;
                    break;
                }
            }
        }
    }

    Outcome process(Node* u, Node* pred, HitCount partial, Height h) {
        ++cost_.backward_len;
        if (u->top != h) return Outcome::Kept;
        if (h > zero_ && should_demote(pred->subtree(h) + u->subtree(h), h, m_)) {
            demote(pred, u, h);
            return Outcome::Demoted;
        }
        if (h < kTopUserLevel) {
            Node* parent = start_[h];
            if (parent->top > h) {
                const HitCount potential = parent->subtree(h + 1) - partial;
                if (should_promote(potential, h, m_)) {
                    promote(parent, u, h, potential);
                    return Outcome::Promoted;
                }
            }
        }
        return Outcome::Kept;
    }

    void demote(Node* pred, Node* u, Height h) {
        pred->materialize(zero_);
        u->materialize(zero_);
        pred->slot(h).next = u->slot(h).next;
        pred->slot(h).hits += u->subtree(h);
        u->slots.pop_back();
        --u->top;
        ++cost_.demotions;
        ++stats_.demotions;
    }

    void promote(Node* parent, Node* u, Height h, HitCount potential) {
        const Height up = h + 1;
        Slot& above = parent->slot(up);
        assert(above.hits >= potential && potential >= u->self_hits);
        u->slots.push_back({above.next, potential - u->self_hits});
        above.next = u;
        above.hits -= potential;
        u->top = up;
        ++cost_.promotions;
        ++stats_.promotions;
    }

    bool maybe_rebuild() {
        if (m_ == 0 || 2 * (m_ - live_m_) < m_) return false;
        rebuild();
        return true;
    }

    void init_sentinels(Height z) {
        zero_ = z;
        head_ = new Node;
        tail_ = new Node;
        head_->kind = NodeKind::Head;
        tail_->kind = NodeKind::Tail;
        for (Node* s : {head_, tail_}) {
            s->zero = z;
            s->top = kSentinelLevel;
            s->self_hits = 1;
            s->slots.assign(static_cast<std::size_t>(kSentinelLevel - z + 1), Slot{});
        }
        for (Slot& slot : head_->slots) slot.next = tail_;
        m_ = 0;
        live_m_ = 0;
        physical_size_ = 0;
        live_size_ = 0;
    }

    // Links nodes level by level in key order; `tops[i]` is the physical
    // top of nodes[i].
    void link_levels(const std::vector<Node*>& nodes) {
        std::array<Node*, kMaxLevel> last{};
        last.fill(head_);
        for (Node* n : nodes) {
            for (Height h = zero_; h <= n->top; ++h) {
                last[h]->slot(h).next = n;
                last[h] = n;
            }
        }
        for (Height h = zero_; h <= kSentinelLevel; ++h) last[h]->slot(h).next = tail_;
    }

    void assemble(const Entries& entries) {
        for (std::size_t i = 1; i < entries.size(); ++i) {
            if (!cmp_(entries[i - 1].key, entries[i].key)) {
                throw std::invalid_argument("rebuild: keys must be strictly increasing");
            }
        }
        std::vector<HitCount> hits;
        hits.reserve(entries.size());
        HitCount total = 0;
        for (const auto& e : entries) {
            hits.push_back(e.hits);
            total += e.hits;
        }
        const SplitResult split = split_entries(hits, rebuild_algorithm_);
        destroy_users();
        const Height z = zero_level_for(total);
        for (Node* s : {head_, tail_}) {
            s->zero = z;
            s->slots.assign(static_cast<std::size_t>(kSentinelLevel - z + 1), Slot{});
        }
        zero_ = z;
        m_ = total;
        live_m_ = total;

        std::vector<Node*> nodes;
        nodes.reserve(entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            auto* n = new Node;
            n->key = entries[i].key;
            n->value = entries[i].value;
            n->self_hits = entries[i].hits;
            n->zero = z;
            n->top = split_level(split.weights[i], total);
            n->slots.assign(static_cast<std::size_t>(n->top - z + 1), Slot{});
            stats_.lifts += static_cast<std::size_t>(n->top - z);
            nodes.push_back(n);
        }
        link_levels(nodes);

        std::array<Node*, kMaxLevel> owner{};
        owner.fill(head_);
        for (Node* n : nodes) {
            for (Height h = n->top + 1; h <= kSentinelLevel; ++h) owner[h]->slot(h).hits += n->self_hits;
            for (Height h = z; h <= n->top; ++h) owner[h] = n;
        }
        physical_size_ = live_size_ = nodes.size();
    }

    void load(const Snapshot<Key>& snap) {
        destroy_users();
        zero_ = snap.zero;
        m_ = snap.m;
        live_m_ = snap.live_m;
        std::vector<Node*> nodes;
        physical_size_ = live_size_ = 0;
        for (const auto& in : snap.nodes) {
            if (in.kind == NodeKind::Tail) continue;
            Node* n = in.kind == NodeKind::Head ? head_ : new Node;
            n->key = in.key;
            n->zero = zero_;
            n->top = in.top;
            n->self_hits = in.self_hits;
            n->deleted = in.deleted;
            n->slots.assign(in.hits.size(), Slot{});
            for (std::size_t i = 0; i < in.hits.size(); ++i) n->slots[i].hits = in.hits[i];
            if (in.kind == NodeKind::User) {
                if (in.top >= kSentinelLevel) throw std::invalid_argument("load: user node at sentinel level");
                if (!nodes.empty() && !cmp_(nodes.back()->key, n->key)) {
                    throw std::invalid_argument("load: keys must be strictly increasing");
                }
                nodes.push_back(n);
                ++physical_size_;
                if (!n->deleted) ++live_size_;
            }
        }
        tail_->zero = zero_;
        tail_->slots.assign(static_cast<std::size_t>(kSentinelLevel - zero_ + 1), Slot{});
        link_levels(nodes);
    }

    void destroy_users() {
        if (head_ == nullptr) return;
        Node* n = head_->next(zero_);
        while (n != nullptr && n->kind == NodeKind::User) {
            Node* next = n->next(zero_);
            delete n;
            n = next;
        }
        for (Slot& slot : head_->slots) {
            slot.next = tail_;
            slot.hits = 0;
        }
    }

    void destroy() {
        destroy_users();
        delete head_;
        delete tail_;
        head_ = tail_ = nullptr;
    }

    void steal(SplayList& other) noexcept {
        policy_ = other.policy_;
        cmp_ = other.cmp_;
        head_ = std::exchange(other.head_, nullptr);
        tail_ = std::exchange(other.tail_, nullptr);
        m_ = other.m_;
        live_m_ = other.live_m_;
        zero_ = other.zero_;
        physical_size_ = other.physical_size_;
        live_size_ = other.live_size_;
        stats_ = other.stats_;
        rebuild_algorithm_ = other.rebuild_algorithm_;
    }

    RebalancePolicy policy_;
    Compare cmp_;
    Node* head_ = nullptr;
    Node* tail_ = nullptr;
    HitCount m_ = 0;
    HitCount live_m_ = 0;
    Height zero_ = kTopUserLevel;
    std::size_t physical_size_ = 0;
    std::size_t live_size_ = 0;
    RebuildAlgorithm rebuild_algorithm_ = RebuildAlgorithm::Auto;

    OpCost cost_;
    ListStats stats_;

    std::vector<Entry> path_;
    std::array<Node*, kMaxLevel> start_{};
    std::array<std::size_t, kMaxLevel> begin_{};
    std::array<std::size_t, kMaxLevel> end_{};
    Height found_level_ = 0;
    Node* bottom_pred_ = nullptr;
};

}  // namespace splaylist

#endif  // SPLAYLIST_SPLAY_LIST_HPP
