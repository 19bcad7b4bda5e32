#ifndef COALGAME_PARTITION_HPP
#define COALGAME_PARTITION_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coalgame {

// Coalitions are index sets over at most 64 players, stored as bitmasks.
// The worked games use 2-4 players; the bound is a representation limit,
// not a model assumption.
using Mask = std::uint64_t;

inline int mask_size(Mask m) { return __builtin_popcountll(m); }
inline int lowest_member(Mask m) { return __builtin_ctzll(m); }
inline bool mask_contains(Mask m, int i) { return (m >> i) & 1ull; }

std::vector<int> mask_members(Mask m);

// Ordered list of distinct player labels; player index = list position.
class PlayerSet {
public:
    explicit PlayerSet(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    // -1 when the label is unknown.
    int index_of(std::string_view label) const;
    Mask full_mask() const { return (size() == 64) ? ~0ull : ((1ull << size()) - 1); }

    bool operator==(const PlayerSet& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
};

// A coalition structure: disjoint nonempty blocks covering 0..n-1.
// Canonical form: blocks ordered by smallest member (members of a block
// are inherently sorted by the bitmask representation).
class Partition {
public:
    Partition() = default;

    // Canonicalizes; throws ValidationError if the blocks are not a
    // partition of exactly 0..n-1.
    static Partition from_blocks(std::vector<Mask> blocks, int n);

    const std::vector<Mask>& blocks() const { return blocks_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    int num_players() const { return n_; }
    int max_block_size() const;

    // The unique block containing player i.
    Mask block_of(int i) const;
    // True iff g is exactly one of the blocks (not a subset of a bigger one).
    bool contains_block(Mask g) const;

    auto operator<=>(const Partition& other) const = default;

private:
    std::vector<Mask> blocks_;
    int n_ = 0;
};

// All partitions of {0..n-1} with largest block <= k, in lexicographic
// order of their restricted-growth encoding. Throws DomainError unless
// 1 <= k <= n <= 64.
std::vector<Partition> enumerate_partitions(int n, int k);

// "A,B|C1|C2" rendering of the canonical form.
std::string canonical_string(const Partition& p, const PlayerSet& ps);

// Inverse of canonical_string; accepts non-canonical block/member order
// and canonicalizes. Throws ParseError naming the offending label on
// unknown, duplicated, or missing players.
Partition parse_partition(std::string_view text, const PlayerSet& ps);

// Member subset of the players, "A,C1" syntax. Same error contract.
Mask parse_coalition(std::string_view text, const PlayerSet& ps);

std::string coalition_string(Mask g, const PlayerSet& ps);

}  // namespace coalgame

#endif
