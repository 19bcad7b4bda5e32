#ifndef COALGAME_GAME_HPP
#define COALGAME_GAME_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coalgame/partition.hpp"
#include "coalgame/rational.hpp"

namespace coalgame {

// One payoff table row. A missing partition pattern is the "all other
// partitions" wildcard; a missing action pattern (or "*" in a position)
// matches any action profile.
struct PayoffEntry {
    std::optional<Partition> partition;
    std::optional<std::vector<std::optional<int>>> actions;  // per-player action index
    std::vector<Rat> payoffs;
};

// Declarative payoff-over-(partition, action-profile) description.
// Payoffs are keyed on the realized partition plus the action profile;
// the unrealized parts of chosen partitions never enter payoffs.
class GameSpec {
public:
    GameSpec(PlayerSet players, std::vector<std::vector<std::string>> actions,
             std::vector<PayoffEntry> entries, std::vector<Rat> default_payoff,
             std::string name = "", std::vector<std::string> notes = {});

    const PlayerSet& players() const { return players_; }
    int num_players() const { return players_.size(); }
    const std::vector<std::string>& actions(int player) const { return actions_[player]; }
    int num_actions(int player) const { return static_cast<int>(actions_[player].size()); }
    const std::vector<PayoffEntry>& entries() const { return entries_; }
    const std::vector<Rat>& default_payoff() const { return default_payoff_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& notes() const { return notes_; }

    // First matching concrete entry, else first matching wildcard entry,
    // else the default payoff.
    const std::vector<Rat>& payoff(const Partition& realized,
                                   const std::vector<int>& action_profile) const;

private:
    void validate() const;

    PlayerSet players_;
    std::vector<std::vector<std::string>> actions_;  // per player, never empty
    std::vector<PayoffEntry> entries_;
    std::vector<Rat> default_payoff_;
    std::string name_;
    std::vector<std::string> notes_;
};

// A strategy is a desired coalition structure plus an own action, stored
// as indices into the enclosing game's partition list and the player's
// action list.
struct Strategy {
    int partition = 0;
    int action = 0;
    auto operator<=>(const Strategy&) const = default;
};

using PureProfile = std::vector<Strategy>;  // one Strategy per player

class Game;

// Per-player probability distribution over strategies, aligned with the
// game's per-player strategy sets. Probabilities are exact rationals.
class MixedProfile {
public:
    MixedProfile() = default;
    // Validates nonnegativity and per-player sum == 1 (exact).
    MixedProfile(const Game& game, std::vector<std::vector<Rat>> probs);

    static MixedProfile degenerate(const Game& game, const PureProfile& profile);

    const std::vector<Rat>& probs(int player) const { return probs_[player]; }
    int num_players() const { return static_cast<int>(probs_.size()); }
    // Indices (into the game's strategy set) with positive probability:
    // the "Dom" of the profile.
    std::vector<int> support(int player) const;

    bool operator==(const MixedProfile&) const = default;

private:
    std::vector<std::vector<Rat>> probs_;
};

// Realization of a GameSpec at a fixed maximum coalition size k: the
// partition family P(k) and explicit per-player strategy sets.
class Game {
public:
    const GameSpec& spec() const { return *spec_; }
    const std::shared_ptr<const GameSpec>& spec_ptr() const { return spec_; }
    int k() const { return k_; }
    int num_players() const { return spec_->num_players(); }
    const std::vector<Partition>& partitions() const { return partitions_; }
    // -1 when the partition is outside P(k).
    int partition_index(const Partition& p) const;

    const std::vector<Strategy>& strategies(int player) const { return strategy_sets_[player]; }
    int num_strategies(int player) const { return static_cast<int>(strategy_sets_[player].size()); }

    // Own-block of player i under its chosen strategy.
    Mask desired_block(int player, const Strategy& s) const;
    std::string strategy_string(int player, const Strategy& s) const;

    // A copy of this game with restricted per-player strategy sets
    // (used by dominance elimination).
    Game restricted(std::vector<std::vector<Strategy>> strategy_sets) const;

    friend Game build_game(std::shared_ptr<const GameSpec> spec, int k);

private:
    std::shared_ptr<const GameSpec> spec_;
    int k_ = 0;
    std::vector<Partition> partitions_;
    std::map<Partition, int> partition_index_;
    std::vector<std::vector<Strategy>> strategy_sets_;
};

// Strategy set of each player = enumerate_partitions(n, k) x own actions.
Game build_game(std::shared_ptr<const GameSpec> spec, int k);

// Unanimity rule: a block of two or more players forms iff it is the
// desired own-block of every one of its members; everyone else is a
// singleton.
Partition formation_rule(const Game& game, const PureProfile& profile);

std::vector<Rat> outcome_payoff(const Game& game, const PureProfile& profile);

// Exact summation of outcome_payoff over the product distribution.
std::vector<Rat> expected_payoff(const Game& game, const MixedProfile& m);

// Expected payoff of `player` when it deviates to `deviation` while the
// others keep playing m.
Rat expected_payoff_deviating(const Game& game, const MixedProfile& m, int player,
                              const Strategy& deviation);

// Pushforward of the product distribution through the formation rule.
std::map<Partition, Rat> realized_distribution(const Game& game, const MixedProfile& m);

// Games for k = 1..n; strategy sets nest as k grows.
std::vector<Game> nested_family(std::shared_ptr<const GameSpec> spec);

// Outcome-equivalence classes of a player's strategy set: two strategies
// are equivalent iff they share the action and the desired own-block.
// Returned as index lists into game.strategies(player).
std::vector<std::vector<int>> quotient_strategies(const Game& game, int player);

// Re-express a profile of `from` in `to` by matching partition content
// and action labels. Throws DomainError when a support strategy has no
// counterpart.
MixedProfile embed_profile(const Game& from, const Game& to, const MixedProfile& m);

}  // namespace coalgame

#endif
