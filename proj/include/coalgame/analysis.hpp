#ifndef COALGAME_ANALYSIS_HPP
#define COALGAME_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coalgame/equilibrium.hpp"
#include "coalgame/game.hpp"

namespace coalgame {

struct CooperationReport {
    Mask coalition = 0;
    bool ex_ante = false;    // every member's support always desires the coalition
    bool ex_post_1 = false;  // every realized partition contains it
    bool ex_post_2 = false;  // the profile is an equilibrium
    bool complete = false;
    Rat max_regret;
    std::optional<std::string> ex_ante_witness;    // offending player/strategy
    std::optional<std::string> ex_post_1_witness;  // offending partition
};

// Requires a verified candidate; its equilibrium status feeds ex post 2.
CooperationReport cooperation_check(const Game& game, const MixedProfile& m,
                                    Mask coalition, const Rat& tolerance = Rat(0));

// Union of realized-distribution supports: the {P*}(K) set.
std::set<Partition> equilibrium_partitions(const Game& game,
                                           const std::vector<MixedProfile>& equilibria);

// At least two equilibrium partitions make the game stochastic.
bool is_stochastic(const Game& game, const std::vector<MixedProfile>& equilibria);

struct TrajectorySample {
    std::vector<Partition> states;
    std::uint64_t seed = 0;
    std::string game_name;
    int k = 0;
};

// I.i.d. sampling of the formation rule under m, one partition per step.
// Deterministic given the seed.
TrajectorySample simulate(const Game& game, const MixedProfile& m, std::int64_t steps,
                          std::uint64_t seed);

enum class StabilityPolicy { kForall, kExists };

struct StabilityVerdict {
    int k = 0;
    bool passed = false;
    bool base_is_equilibrium = false;  // condition 2: embedded base, unchanged domain
    int equilibria_examined = 0;
    // Equilibria of the larger game that make every player at least as
    // well off as the base and someone strictly better (the payoff
    // comparisons that break stability).
    std::vector<std::string> improving_equilibria;
};

struct StabilityReport {
    int k0 = 0;
    int k_star = 0;
    StabilityPolicy policy = StabilityPolicy::kForall;
    std::vector<Rat> base_payoffs;
    std::vector<StabilityVerdict> per_k;
};

// K* sweep: for each k >= k0 the equilibrium set of the k-game (pure
// exhaustive, 2-player support enumeration, re-verified base) is tested
// against the base payoffs; K* is the largest k such that every size
// from k0 up to it passes. Throws PreconditionError when base_eq is not
// an equilibrium of the k0 game.
StabilityReport stability_k_star(std::shared_ptr<const GameSpec> spec, int k0,
                                 const MixedProfile& base_eq, StabilityPolicy policy);

}  // namespace coalgame

#endif
