#ifndef SPLAYLIST_SNAPSHOT_HPP
#define SPLAYLIST_SNAPSHOT_HPP

#include <cstddef>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "splaylist/common.hpp"

namespace splaylist {

/// A quiescent, implementation-independent copy of a splay-list.
///
/// `nodes` is the bottom list in key order, head first and tail last. Each
/// node carries its logical counters for every level in [zero, top].
/// `levels[h - zero]` lists the node indices reached by following the
/// actual links of level h from the head, so a checker can compare what the
/// links say against what the heights say.
template <class Key>
struct Snapshot {
    struct Node {
        NodeKind kind = NodeKind::User;
        Key key{};
        Height top = 0;
        HitCount self_hits = 0;
        std::vector<HitCount> hits;  // index h - zero
        bool deleted = false;

        HitCount subtree_hits(Height h, Height zero) const {
            return self_hits + hits[static_cast<std::size_t>(h - zero)];
        }
    };

    HitCount m = 0;
    HitCount live_m = 0;
    Height zero = kTopUserLevel;
    std::vector<Node> nodes;
    std::vector<std::vector<std::size_t>> levels;

    Height k() const { return height_parameter(m); }
};

/// Line-oriented dump: header `m M k zeroLevel`, then one line per node in
/// bottom-list order, `key topLevel selfHits hits[zero..top] deleted`. The
/// head is written with key `-inf`; the tail carries no state and is omitted.
template <class Key>
std::string to_text(const Snapshot<Key>& snap) {
    std::ostringstream out;
    out << snap.m << ' ' << snap.live_m << ' ' << snap.k() << ' ' << snap.zero << '\n';
    for (const auto& node : snap.nodes) {
        if (node.kind == NodeKind::Tail) continue;
        if (node.kind == NodeKind::Head) {
            out << "-inf";
        } else {
            out << node.key;
        }
        out << ' ' << node.top << ' ' << node.self_hits;
        for (HitCount h : node.hits) out << ' ' << h;
        out << ' ' << (node.deleted ? 1 : 0) << '\n';
    }
    return out.str();
}

/// Inverse of to_text. Links are not part of the text; `levels` is left
/// empty and loaders derive links from the heights.
template <class Key>
Snapshot<Key> parse_text(std::istream& in) {
    Snapshot<Key> snap;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("dump: missing header");
    {
        std::istringstream header(line);
        Height k = 0;
        if (!(header >> snap.m >> snap.live_m >> k >> snap.zero)) {
            throw std::runtime_error("dump: malformed header");
        }
        if (snap.zero < 0 || snap.zero > kTopUserLevel) throw std::runtime_error("dump: bad zero level");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string key_text;
        typename Snapshot<Key>::Node node;
        if (!(row >> key_text >> node.top >> node.self_hits)) {
            throw std::runtime_error("dump: malformed node line: " + line);
        }
        if (key_text == "-inf") {
            node.kind = NodeKind::Head;
        } else {
            std::istringstream key_in(key_text);
            if (!(key_in >> node.key)) throw std::runtime_error("dump: bad key: " + key_text);
        }
        if (node.top < snap.zero || node.top > kSentinelLevel) {
            throw std::runtime_error("dump: top level out of range: " + line);
        }
        std::vector<HitCount> values;
        HitCount v = 0;
        while (row >> v) values.push_back(v);
        const auto expected = static_cast<std::size_t>(node.top - snap.zero + 1);
        if (values.size() != expected + 1) throw std::runtime_error("dump: wrong counter count: " + line);
        node.deleted = values.back() != 0;
        values.pop_back();
        node.hits = std::move(values);
        snap.nodes.push_back(std::move(node));
    }
    if (snap.nodes.empty() || snap.nodes.front().kind != NodeKind::Head) {
        throw std::runtime_error("dump: first node must be the head");
    }
    typename Snapshot<Key>::Node tail;
    tail.kind = NodeKind::Tail;
    tail.top = kSentinelLevel;
    tail.self_hits = 1;
    tail.hits.assign(static_cast<std::size_t>(kSentinelLevel - snap.zero + 1), 0);
    snap.nodes.push_back(std::move(tail));
    return snap;
}

}  // namespace splaylist

#endif  // SPLAYLIST_SNAPSHOT_HPP
