#ifndef COALGAME_EQUILIBRIUM_HPP
#define COALGAME_EQUILIBRIUM_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coalgame/game.hpp"

namespace coalgame {

// Best deviation payoff minus the current expected payoff; >= 0 at any
// valid profile, exactly 0 for every player at a Nash equilibrium.
Rat regret(const Game& game, const MixedProfile& m, int player);
Rat max_regret(const Game& game, const MixedProfile& m);

// All pure Nash profiles. With reduce, the sweep runs over one
// representative per outcome-equivalence class (sound: equivalent
// strategies are payoff-identical against every opponent profile).
// Throws ResourceError when the profile count exceeds the cap.
std::vector<PureProfile> pure_nash(const Game& game, bool reduce,
                                   std::uint64_t cap = 10'000'000);

struct EliminationRound {
    // Per player, the removed strategies of that round.
    std::vector<std::vector<Strategy>> removed;
};

struct EliminationResult {
    Game game;
    std::vector<EliminationRound> trace;
};

// Iterated simultaneous removal of weakly dominated strategies until
// fixpoint. Simultaneous per round, which keeps the result independent
// of scan order; the trace records every round.
EliminationResult eliminate_weakly_dominated(const Game& game);

enum class SolveMethod { kSupportEnum, kIndifferenceSolve, kVerifiedCandidate };

struct MixedEquilibrium {
    MixedProfile profile;
    Rat max_regret;
    SolveMethod method = SolveMethod::kSupportEnum;
    bool exact = true;
};

// Support enumeration for 2-player games: solves the opponent
// indifference system exactly over rationals for every support pair up
// to max_support and keeps zero-regret distributions. Deduplicated.
// Throws DomainError for games with more or fewer than 2 players and
// ResourceError when a player has more than 30 strategies.
std::vector<MixedEquilibrium> mixed_support_2p(const Game& game, int max_support);

// Damped iterative indifference solving on fixed supports for n >= 2
// players. On convergence the float profile is snapped to nearby
// rationals and re-verified with exact arithmetic; nullopt means
// non-convergence, not nonexistence.
std::optional<MixedEquilibrium> solve_indifference(
    const Game& game, const std::vector<std::vector<int>>& supports, double tol = 1e-9,
    int max_iter = 20'000);

struct VerifyResult {
    bool is_equilibrium = false;
    Rat max_regret;
    std::vector<Rat> per_player_regret;
};

VerifyResult verify_candidate(const Game& game, const MixedProfile& m,
                              const Rat& tolerance = Rat(0));

struct StrongNashWitness {
    Mask coalition = 0;
    PureProfile deviation;       // full profile after the joint deviation
    std::vector<Rat> payoffs;    // payoffs at the deviation
};

struct StrongNashResult {
    bool is_strong = false;
    std::optional<StrongNashWitness> witness;
};

// No coalition of size <= max_coalition has a joint pure deviation
// making every member strictly better off.
StrongNashResult strong_nash_check(const Game& game, const PureProfile& profile,
                                   int max_coalition);

// An equilibrium outcome class: pure equilibria grouped by realized
// partition and payoff vector.
struct OutcomeClass {
    Partition realized;
    std::vector<Rat> payoffs;
    std::vector<PureProfile> profiles;
};

struct EquilibriumReport {
    std::string game_name;
    int k = 0;
    bool reduced = false;
    bool eliminated = false;
    std::vector<PureProfile> pure_equilibria;
    std::vector<OutcomeClass> outcome_classes;
    std::vector<MixedEquilibrium> mixed_equilibria;
    std::set<Partition> equilibrium_partitions;
    Rat tolerance;
    std::vector<std::string> notes;
    std::optional<MixedProfile> candidate;
    std::optional<VerifyResult> candidate_verdict;
};

std::vector<OutcomeClass> group_outcomes(const Game& game,
                                         const std::vector<PureProfile>& equilibria);

}  // namespace coalgame

#endif
