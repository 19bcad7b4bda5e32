#ifndef COALGAME_COOPERATIVE_HPP
#define COALGAME_COOPERATIVE_HPP

#include <map>
#include <optional>
#include <vector>

#include "coalgame/game.hpp"

namespace coalgame {

enum class ValueConvention { kOptimistic, kPessimistic };

// Coalition values in the cooperative-game sense, derived from a
// partition-function-form payoff description by taking the best or
// worst partition/action context for the coalition.
struct CharacteristicFunction {
    PlayerSet players;
    ValueConvention convention = ValueConvention::kOptimistic;
    std::map<Mask, Rat> values;  // every nonempty coalition

    const Rat& value(Mask coalition) const;
};

// v(S) = max (optimistic) or min (pessimistic), over partitions that
// contain S as a block and over action profiles, of the total payoff to
// S's members.
CharacteristicFunction extract_characteristic(const GameSpec& spec,
                                              ValueConvention convention);

struct CoreResult {
    bool empty = false;
    // Nonempty core: a payoff vector satisfying every coalition
    // constraint exactly.
    std::optional<std::vector<Rat>> core_point;
    // Empty core: weights w_S >= 0 with sum_{S ∋ i} w_S = 1 for every
    // player and sum_S w_S v(S) > v(N) (a violated balanced collection).
    std::optional<std::map<Mask, Rat>> balanced_weights;
};

// Exact rational feasibility of the core. Throws ResourceError for more
// than 6 players.
CoreResult core_empty(const CharacteristicFunction& cf);

// Permutation-average marginal contributions; v(empty) treated as 0.
std::vector<Rat> shapley_value(const CharacteristicFunction& cf);

}  // namespace coalgame

#endif
