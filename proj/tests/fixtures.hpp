#ifndef SPLAYLIST_TESTS_FIXTURES_HPP
#define SPLAYLIST_TESTS_FIXTURES_HPP

#include <cstdint>
#include <sstream>
#include <string>

#include "splaylist/snapshot.hpp"
#include "splaylist/splay_list.hpp"

namespace splaylist::testing {

// Keys 1..6 with m = 10, k = 3: 6 at logical height 2, 2 and 3 at height 1,
// the rest at height 0. Counters per level, lowest first.
inline const std::string kBeforeContains5 =
    "10 10 3 60\n"
    "-inf 63 1 0 1 5 10 0\n"
    "1 60 1 0 0\n"
    "2 61 1 0 0 0\n"
    "3 61 1 0 2 0\n"
    "4 60 1 0 0\n"
    "5 60 1 0 0\n"
    "6 62 5 0 0 0 0\n";

// Expected state after contains(5): 4 promoted, 3 demoted.
inline const std::string kAfterContains5 =
    "11 11 3 60\n"
    "-inf 63 1 0 1 6 11 0\n"
    "1 60 1 0 0\n"
    "2 61 1 0 1 0\n"
    "3 60 1 0 0\n"
    "4 61 1 0 2 0\n"
    "5 60 2 0 0\n"
    "6 62 5 0 0 0 0\n";

inline Snapshot<std::int64_t> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_text<std::int64_t>(in);
}

template <class List = SplayList<std::int64_t>>
List load(const std::string& text) {
    return List::from_snapshot(parse(text));
}

}  // namespace splaylist::testing

#endif  // SPLAYLIST_TESTS_FIXTURES_HPP
