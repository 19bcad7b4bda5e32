#include "coalgame/partition.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coalgame/errors.hpp"

namespace coalgame {

std::vector<int> mask_members(Mask m) {
    std::vector<int> out;
    while (m) {
        int i = lowest_member(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

PlayerSet::PlayerSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ValidationError("player set must be nonempty");
    if (labels_.size() > 64) throw ValidationError("at most 64 players supported");
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw ValidationError("player labels must be nonempty");
        if (l.find('|') != std::string::npos || l.find(',') != std::string::npos ||
            l == "*")
            throw ValidationError("player label '" + l + "' uses reserved characters");
        if (!seen.insert(l).second)
            throw ValidationError("duplicate player label '" + l + "'");
    }
}

int PlayerSet::index_of(std::string_view label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    return -1;
}

Partition Partition::from_blocks(std::vector<Mask> blocks, int n) {
    if (n < 1 || n > 64) throw ValidationError("player count out of range");
    Mask full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    Mask seen = 0;
    for (Mask b : blocks) {
        if (b == 0) throw ValidationError("empty block in partition");
        if (b & ~full) throw ValidationError("block member out of range");
        if (b & seen) throw ValidationError("overlapping blocks in partition");
        seen |= b;
    }
    if (seen != full) throw ValidationError("partition does not cover the player set");
    std::sort(blocks.begin(), blocks.end(),
              [](Mask a, Mask b) { return lowest_member(a) < lowest_member(b); });
    Partition p;
    p.blocks_ = std::move(blocks);
    p.n_ = n;
    return p;
}

int Partition::max_block_size() const {
    int best = 0;
    for (Mask b : blocks_) best = std::max(best, mask_size(b));
    return best;
}

Mask Partition::block_of(int i) const {
    for (Mask b : blocks_)
        if (mask_contains(b, i)) return b;
    throw DomainError("player index not covered by partition");
}

bool Partition::contains_block(Mask g) const {
    return std::find(blocks_.begin(), blocks_.end(), g) != blocks_.end();
}

std::vector<Partition> enumerate_partitions(int n, int k) {
    if (n < 1 || n > 64) throw DomainError("player count out of range");
    if (k < 1 || k > n) throw DomainError("max block size must satisfy 1 <= k <= n");
    std::vector<Partition> out;
    // Restricted-growth string a[0..n-1]: a[i] <= max(a[0..i-1]) + 1,
    // pruned when any block would exceed k members.
    std::vector<int> rgs(n, 0);
    std::vector<int> block_sizes;
    auto emit = [&] {
        int num_blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<Mask> blocks(num_blocks, 0);
        for (int i = 0; i < n; ++i) blocks[rgs[i]] |= (1ull << i);
        out.push_back(Partition::from_blocks(std::move(blocks), n));
    };
    auto rec = [&](auto&& self, int i, int max_label) -> void {
        if (i == n) {
            emit();
            return;
        }
        for (int label = 0; label <= max_label + 1; ++label) {
            if (label < static_cast<int>(block_sizes.size()) && block_sizes[label] >= k)
                continue;
            rgs[i] = label;
            if (label == static_cast<int>(block_sizes.size()))
                block_sizes.push_back(0);
            ++block_sizes[label];
            self(self, i + 1, std::max(max_label, label));
            --block_sizes[label];
            if (block_sizes[label] == 0 && label + 1 == static_cast<int>(block_sizes.size()))
                block_sizes.pop_back();
        }
    };
    rec(rec, 0, -1);
    return out;
}

std::string canonical_string(const Partition& p, const PlayerSet& ps) {
    if (p.num_players() != ps.size())
        throw DomainError("partition size does not match player set");
    std::ostringstream out;
    bool first_block = true;
    for (Mask b : p.blocks()) {
        if (!first_block) out << "|";
        first_block = false;
        bool first = true;
        for (int i : mask_members(b)) {
            if (!first) out << ",";
            first = false;
            out << ps.label(i);
        }
    }
    return out.str();
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

Mask parse_member_list(std::string_view text, const PlayerSet& ps, Mask& seen) {
    Mask block = 0;
    for (const auto& raw : split(text, ',')) {
        std::string label = trim(raw);
        if (label.empty()) throw ParseError("empty player label in '" + std::string(text) + "'");
        int idx = ps.index_of(label);
        if (idx < 0) throw ParseError("unknown player '" + label + "'");
        Mask bit = 1ull << idx;
        if (seen & bit) throw ParseError("duplicate player '" + label + "'");
        seen |= bit;
        block |= bit;
    }
    return block;
}

}  // namespace

Partition parse_partition(std::string_view text, const PlayerSet& ps) {
    Mask seen = 0;
    std::vector<Mask> blocks;
    for (const auto& block_text : split(text, '|')) {
        std::string t = trim(block_text);
        if (t.empty()) throw ParseError("empty block in partition '" + std::string(text) + "'");
        blocks.push_back(parse_member_list(t, ps, seen));
    }
    if (seen != ps.full_mask()) {
        for (int i = 0; i < ps.size(); ++i)
            if (!mask_contains(seen, i))
                throw ParseError("missing player '" + ps.label(i) + "'");
    }
    return Partition::from_blocks(std::move(blocks), ps.size());
}

Mask parse_coalition(std::string_view text, const PlayerSet& ps) {
    Mask seen = 0;
    std::string t = trim(text);
    if (t.empty()) throw ParseError("empty coalition");
    return parse_member_list(t, ps, seen);
}

std::string coalition_string(Mask g, const PlayerSet& ps) {
    std::ostringstream out;
    bool first = true;
    for (int i : mask_members(g)) {
        if (!first) out << ",";
        first = false;
        out << ps.label(i);
    }
    return out.str();
}

}  // namespace coalgame
