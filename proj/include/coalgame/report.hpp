#ifndef COALGAME_REPORT_HPP
#define COALGAME_REPORT_HPP

#include <string>
#include <vector>

#include "coalgame/analysis.hpp"
#include "coalgame/cooperative.hpp"
#include "coalgame/equilibrium.hpp"
#include "coalgame/game.hpp"

namespace coalgame {

// Renderers emit either stable plain text (golden-file friendly) or
// versioned JSON ("report_version": 1). All rationals print as "p/q".

std::string render_partitions_text(const Game& game);
std::string render_partitions_json(const Game& game);

std::string render_equilibrium_text(const Game& game, const EquilibriumReport& report);
std::string render_equilibrium_json(const Game& game, const EquilibriumReport& report);

std::string render_cooperation_text(const Game& game, const CooperationReport& report);
std::string render_cooperation_json(const Game& game, const CooperationReport& report);

std::string render_stability_text(const GameSpec& spec, const StabilityReport& report);
std::string render_stability_json(const GameSpec& spec, const StabilityReport& report);

// Empirical frequencies with binomial standard errors, next to the exact
// pushforward probabilities of the sampled profile.
std::string render_trajectory_text(const Game& game, const TrajectorySample& sample,
                                   const std::map<Partition, Rat>& expected);
std::string render_trajectory_json(const Game& game, const TrajectorySample& sample,
                                   const std::map<Partition, Rat>& expected);

struct CoopTheoryReport {
    CharacteristicFunction characteristic;
    CoreResult core;
    std::vector<Rat> shapley;
};

std::string render_coop_theory_text(const CoopTheoryReport& report);
std::string render_coop_theory_json(const CoopTheoryReport& report);

// Shared helper: "A: 1/2 on A,B|C1|C2 ..." per-player description.
std::string profile_text(const Game& game, const MixedProfile& m);

}  // namespace coalgame

#endif
