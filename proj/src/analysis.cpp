#include "coalgame/analysis.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "coalgame/errors.hpp"

namespace coalgame {

CooperationReport cooperation_check(const Game& game, const MixedProfile& m,
                                    Mask coalition, const Rat& tolerance) {
    const PlayerSet& ps = game.spec().players();
    if (coalition == 0 || (coalition & ~ps.full_mask()))
        throw DomainError("coalition is not a subset of the player set");

    CooperationReport report;
    report.coalition = coalition;

    report.ex_ante = true;
    for (int i : mask_members(coalition)) {
        for (int s : m.support(i)) {
            const Strategy& strat = game.strategies(i)[s];
            if (!game.partitions()[strat.partition].contains_block(coalition)) {
                report.ex_ante = false;
                report.ex_ante_witness = ps.label(i) + " plays " +
                                         game.strategy_string(i, strat) +
                                         " which does not contain " +
                                         coalition_string(coalition, ps);
                break;
            }
        }
        if (!report.ex_ante) break;
    }

    report.ex_post_1 = true;
    for (const auto& [partition, prob] : realized_distribution(game, m)) {
        if (prob > 0 && !partition.contains_block(coalition)) {
            report.ex_post_1 = false;
            report.ex_post_1_witness = canonical_string(partition, ps);
            break;
        }
    }

    auto verdict = verify_candidate(game, m, tolerance);
    report.max_regret = verdict.max_regret;
    report.ex_post_2 = verdict.is_equilibrium;

    report.complete = report.ex_ante && report.ex_post_1 && report.ex_post_2;
    return report;
}

std::set<Partition> equilibrium_partitions(const Game& game,
                                           const std::vector<MixedProfile>& equilibria) {
    std::set<Partition> out;
    for (const auto& m : equilibria)
        for (const auto& [partition, prob] : realized_distribution(game, m))
            if (prob > 0) out.insert(partition);
    return out;
}

bool is_stochastic(const Game& game, const std::vector<MixedProfile>& equilibria) {
    return equilibrium_partitions(game, equilibria).size() >= 2;
}

TrajectorySample simulate(const Game& game, const MixedProfile& m, std::int64_t steps,
                          std::uint64_t seed) {
    if (steps < 1) throw DomainError("steps must be >= 1");
    int n = game.num_players();
    // Per-player cumulative distribution over the support.
    std::vector<std::vector<int>> support(n);
    std::vector<std::vector<double>> cumulative(n);
    for (int i = 0; i < n; ++i) {
        support[i] = m.support(i);
        double acc = 0;
        for (int s : support[i]) {
            acc += rat_to_double(m.probs(i)[s]);
            cumulative[i].push_back(acc);
        }
        cumulative[i].back() = 1.0;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    TrajectorySample out;
    out.seed = seed;
    out.game_name = game.spec().name();
    out.k = game.k();
    out.states.reserve(static_cast<std::size_t>(steps));
    PureProfile profile(n);
    for (std::int64_t step = 0; step < steps; ++step) {
        for (int i = 0; i < n; ++i) {
            double u = unit(rng);
            std::size_t idx = std::lower_bound(cumulative[i].begin(), cumulative[i].end(), u) -
                              cumulative[i].begin();
            if (idx >= support[i].size()) idx = support[i].size() - 1;
            profile[i] = game.strategies(i)[support[i][idx]];
        }
        out.states.push_back(formation_rule(game, profile));
    }
    return out;
}

namespace {

// True when eq makes every player at least as well off as base and at
// least one strictly better.
bool improves_on(const std::vector<Rat>& eq, const std::vector<Rat>& base) {
    bool strict = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (eq[i] < base[i]) return false;
        if (eq[i] > base[i]) strict = true;
    }
    return strict;
}

}  // namespace

StabilityReport stability_k_star(std::shared_ptr<const GameSpec> spec, int k0,
                                 const MixedProfile& base_eq, StabilityPolicy policy) {
    int n = spec->num_players();
    if (k0 < 1 || k0 > n) throw DomainError("k0 out of range");
    Game base_game = build_game(spec, k0);
    auto base_verdict = verify_candidate(base_game, base_eq);
    if (!base_verdict.is_equilibrium)
        throw PreconditionError("base profile is not an equilibrium of the k0 game (max regret " +
                                rat_to_string(base_verdict.max_regret) + ")");

    StabilityReport report;
    report.k0 = k0;
    report.policy = policy;
    report.base_payoffs = expected_payoff(base_game, base_eq);

    bool chain_alive = true;
    for (int k = k0; k <= n; ++k) {
        Game game_k = build_game(spec, k);
        StabilityVerdict verdict;
        verdict.k = k;

        // Condition 2: the base support embeds verbatim and stays an
        // equilibrium, so its strategy domain is unchanged.
        MixedProfile embedded = embed_profile(base_game, game_k, base_eq);
        verdict.base_is_equilibrium = verify_candidate(game_k, embedded).is_equilibrium;

        // Condition 1 sweep: equilibria of the k-game. At k = k0 the
        // comparison is the base with itself.
        std::vector<std::pair<std::string, std::vector<Rat>>> found;
        if (k > k0) {
            for (const auto& p : pure_nash(game_k, /*reduce=*/true)) {
                std::ostringstream desc;
                desc << canonical_string(formation_rule(game_k, p), spec->players()) << " "
                     << payoff_vector_to_string(outcome_payoff(game_k, p));
                found.emplace_back(desc.str(), outcome_payoff(game_k, p));
            }
            if (n == 2) {
                for (const auto& me : mixed_support_2p(game_k, 4)) {
                    auto eu = expected_payoff(game_k, me.profile);
                    found.emplace_back("mixed " + payoff_vector_to_string(eu), eu);
                }
            }
            found.emplace_back("embedded base", expected_payoff(game_k, embedded));
        } else {
            found.emplace_back("base", report.base_payoffs);
        }
        verdict.equilibria_examined = static_cast<int>(found.size());

        int satisfying = 0;
        for (const auto& [desc, payoffs] : found) {
            if (improves_on(payoffs, report.base_payoffs))
                verdict.improving_equilibria.push_back(desc);
            else
                ++satisfying;
        }
        bool cond1 = policy == StabilityPolicy::kForall
                         ? verdict.improving_equilibria.empty()
                         : satisfying > 0;
        verdict.passed = cond1 && verdict.base_is_equilibrium;
        if (chain_alive && verdict.passed)
            report.k_star = k;
        else
            chain_alive = false;
        report.per_k.push_back(std::move(verdict));
        // Keep reporting one size past the break, then stop.
        if (!chain_alive && k > report.k_star) break;
    }
    return report;
}

}  // namespace coalgame
