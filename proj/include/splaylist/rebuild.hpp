#ifndef SPLAYLIST_REBUILD_HPP
#define SPLAYLIST_REBUILD_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "splaylist/common.hpp"

namespace splaylist {

enum class RebuildAlgorithm {
    Auto,         ///< pick by comparing M with n log2 M
    LinearSplit,  ///< O(n log M) time, scans each segment for its split key
    MedianArray   ///< O(M) time, reads the split key out of a repeated-key array
};

namespace detail {

// Both builders assign segment [l, r] with total H the rank p where
// 2^(p-1) <= H < 2^p to the smallest index s such that
//   hits[l..s-1] <= H/2  and  hits[s+1..r] < H/2.
// The second condition is equivalent to prefix(s+1) > H/2, so s is the
// owner of cell floor(H/2) (0-based) in the repeated-key array.

class SplitBuilder {
public:
    explicit SplitBuilder(std::span<const HitCount> hits) : ranks_(hits.size(), 0), weights_(hits.size(), 0) {
        prefix_.reserve(hits.size() + 1);
        prefix_.push_back(0);
        for (HitCount h : hits) {
            if (h == 0) throw std::invalid_argument("rebuild: every entry needs at least one hit");
            prefix_.push_back(prefix_.back() + h);
        }
    }

    HitCount total() const noexcept { return prefix_.back(); }
    std::vector<int> take_ranks() && { return std::move(ranks_); }
    std::vector<HitCount> take_weights() && { return std::move(weights_); }

protected:
    HitCount segment(std::size_t l, std::size_t r) const { return prefix_[r + 1] - prefix_[l]; }

    void place(std::size_t s, HitCount total) {
        ranks_[s] = floor_log2(total) + 1;
        weights_[s] = total;
    }

    std::vector<HitCount> prefix_;
    std::vector<int> ranks_;
    std::vector<HitCount> weights_;
};

class LinearSplitBuilder : public SplitBuilder {
public:
    using SplitBuilder::SplitBuilder;

    void run() {
        if (!ranks_.empty()) build(0, ranks_.size() - 1);
    }

private:
    void build(std::size_t l, std::size_t r) {
        const HitCount total = segment(l, r);
        std::size_t s = l;
        while (2 * (prefix_[r + 1] - prefix_[s + 1]) >= total) ++s;
        place(s, total);
        if (s > l) build(l, s - 1);
        if (s < r) build(s + 1, r);
    }
};

class MedianArrayBuilder : public SplitBuilder {
public:
    using SplitBuilder::SplitBuilder;

    void run() {
        if (ranks_.empty()) return;
        owner_.reserve(total());
        for (std::size_t i = 0; i + 1 < prefix_.size(); ++i) {
            owner_.insert(owner_.end(), prefix_[i + 1] - prefix_[i], i);
        }
        build(0, ranks_.size() - 1);
    }

private:
    void build(std::size_t l, std::size_t r) {
        const HitCount total = segment(l, r);
        const std::size_t s = owner_[prefix_[l] + total / 2];
        place(s, total);
        if (s > l) build(l, s - 1);
        if (s < r) build(s + 1, r);
    }

    std::vector<std::size_t> owner_;
};

}  // namespace detail

inline RebuildAlgorithm resolve_rebuild_algorithm(std::size_t n, HitCount total,
                                                  RebuildAlgorithm requested) {
    if (requested != RebuildAlgorithm::Auto) return requested;
    if (total == 0) return RebuildAlgorithm::LinearSplit;
    const double n_log_m = static_cast<double>(n) * std::log2(static_cast<double>(total));
    return static_cast<double>(total) > n_log_m ? RebuildAlgorithm::LinearSplit
                                                : RebuildAlgorithm::MedianArray;
}

struct SplitResult {
    std::vector<int> ranks;         ///< p with 2^(p-1) <= H < 2^p
    std::vector<HitCount> weights;  ///< H, the total of the segment each entry split
};

/// Recursive split of a key-ordered hit sequence.
inline SplitResult split_entries(std::span<const HitCount> hits,
                                 RebuildAlgorithm algorithm = RebuildAlgorithm::Auto) {
    HitCount total = 0;
    for (HitCount h : hits) total += h;
    auto finish = [](auto&& builder) {
        builder.run();
        SplitResult out;
        out.weights = std::move(builder).take_weights();
        out.ranks = std::move(builder).take_ranks();
        return out;
    };
    if (resolve_rebuild_algorithm(hits.size(), total, algorithm) == RebuildAlgorithm::MedianArray) {
        return finish(detail::MedianArrayBuilder(hits));
    }
    return finish(detail::LinearSplitBuilder(hits));
}

inline std::vector<int> rebuild_ranks(std::span<const HitCount> hits,
                                      RebuildAlgorithm algorithm = RebuildAlgorithm::Auto) {
    return split_entries(hits, algorithm).ranks;
}

/// Physical level of an entry that split a segment of weight H when the
/// structure holds `total` hits: 63 - j for the least j with H * 2^j >= total,
/// clamped to the user range. For total = 2^k this is logical height
/// floor(log2 H) = p - 1; otherwise the rank alone can leave a node that
/// satisfies the descent condition.
constexpr Height split_level(HitCount weight, HitCount total) noexcept {
    int j = 0;
    while (j < kSentinelLevel && (static_cast<unsigned __int128>(weight) << j) < total) ++j;
    const Height level = kSentinelLevel - j;
    const Height zero = zero_level_for(total);
    if (level > kTopUserLevel) return kTopUserLevel;
    return level < zero ? zero : level;
}

}  // namespace splaylist

#endif  // SPLAYLIST_REBUILD_HPP
