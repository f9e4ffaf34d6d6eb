#ifndef SPLAYLIST_COMMON_HPP
#define SPLAYLIST_COMMON_HPP

#include <bit>
#include <cassert>
#include <cstdint>

namespace splaylist {

using HitCount = std::uint64_t;
using Height = int;

/// Number of link slots a node may use. Level kMaxLevel - 1 is reserved for
/// the head/tail sentinels; user nodes live strictly below it.
inline constexpr Height kMaxLevel = 64;
inline constexpr Height kSentinelLevel = kMaxLevel - 1;
inline constexpr Height kTopUserLevel = kSentinelLevel - 1;

enum class NodeKind : std::uint8_t { Head, User, Tail };

/// floor(log2 m), with 0 for m <= 1.
constexpr Height floor_log2(HitCount m) noexcept {
    return m <= 1 ? 0 : static_cast<Height>(63 - std::countl_zero(m));
}

/// Structure height parameter k for a given total hit count.
constexpr Height height_parameter(HitCount m) noexcept { return floor_log2(m); }

/// Physical index of the lowest list for k. One user level always exists,
/// so the sentinels stay at least one level above every user node.
constexpr Height zero_level_for(HitCount m) noexcept {
    const Height k = height_parameter(m);
    return kSentinelLevel - (k < 1 ? 1 : k);
}

/// Distance from a physical level to the sentinel level. This is k - h
/// expressed in physical coordinates.
constexpr int level_exponent(Height level) noexcept { return kSentinelLevel - level; }

/// Descent test: pair_hits <= m / 2^exponent, evaluated without division.
constexpr bool descent_condition(HitCount pair_hits, int exponent, HitCount m) noexcept {
    assert(exponent >= 0 && exponent < 64);
    return (static_cast<unsigned __int128>(pair_hits) << exponent) <= m;
}

/// Ascent test: m > 0 and potential > m / 2^exponent.
constexpr bool ascent_condition(HitCount potential, int exponent, HitCount m) noexcept {
    assert(exponent >= 0 && exponent < 64);
    return m > 0 && (static_cast<unsigned __int128>(potential) << exponent) > m;
}

/// Descent test for a node at physical `level`.
constexpr bool should_demote(HitCount pair_hits, Height level, HitCount m) noexcept {
    return descent_condition(pair_hits, level_exponent(level), m);
}

/// Ascent test for a node whose top is physical `level` (< kSentinelLevel).
constexpr bool should_promote(HitCount potential, Height level, HitCount m) noexcept {
    return ascent_condition(potential, level_exponent(level) - 1, m);
}

}  // namespace splaylist

#endif  // SPLAYLIST_COMMON_HPP
