#ifndef SPLAYLIST_VERIFY_OP_STREAM_HPP
#define SPLAYLIST_VERIFY_OP_STREAM_HPP

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace splaylist::verify {

enum class OpKind : char { Contains = 'C', Insert = 'I', Delete = 'D' };

struct Op {
    OpKind kind;
    std::int64_t key;

    friend bool operator==(const Op&, const Op&) = default;
};

/// Replayable operation sequence. Text form: `# seed <u64>` then one
/// `C|I|D <key>` per line.
struct OpStream {
    std::uint64_t seed = 0;
    std::vector<Op> ops;
};

struct OpMix {
    int contains = 60;
    int insert = 20;
    int erase = 20;
};

/// Uniform keys in [0, keyspace).
inline OpStream random_op_stream(std::size_t count, std::int64_t keyspace, std::uint64_t seed, OpMix mix = {}) {
    if (keyspace < 1) throw std::invalid_argument("keyspace must be positive");
    OpStream stream;
    stream.seed = seed;
    stream.ops.reserve(count);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> key(0, keyspace - 1);
    std::uniform_int_distribution<int> pick(0, mix.contains + mix.insert + mix.erase - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const int r = pick(rng);
        const OpKind kind = r < mix.contains                ? OpKind::Contains
                            : r < mix.contains + mix.insert ? OpKind::Insert
                                                            : OpKind::Delete;
        stream.ops.push_back({kind, key(rng)});
    }
    return stream;
}

inline void write_op_stream(std::ostream& out, const OpStream& stream, std::size_t limit = SIZE_MAX) {
    out << "# seed " << stream.seed << '\n';
    for (std::size_t i = 0; i < stream.ops.size() && i < limit; ++i) {
        out << static_cast<char>(stream.ops[i].kind) << ' ' << stream.ops[i].key << '\n';
    }
}

inline OpStream read_op_stream(std::istream& in) {
    OpStream stream;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        if (line[0] == '#') {
            std::string hash;
            std::string word;
            if (row >> hash >> word && word == "seed") row >> stream.seed;
            continue;
        }
        char kind = 0;
        std::int64_t key = 0;
        if (!(row >> kind >> key) || (kind != 'C' && kind != 'I' && kind != 'D')) {
            throw std::runtime_error("op stream: malformed line: " + line);
        }
        stream.ops.push_back({static_cast<OpKind>(kind), key});
    }
    return stream;
}

}  // namespace splaylist::verify

#endif  // SPLAYLIST_VERIFY_OP_STREAM_HPP
