#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "coalgame/equilibrium.hpp"
#include "coalgame/errors.hpp"
#include "coalgame/gamespec_io.hpp"

using namespace coalgame;

namespace {

Strategy strat(const Game& g, const std::string& partition, int action = 0) {
    Partition p = parse_partition(partition, g.spec().players());
    int idx = g.partition_index(p);
    REQUIRE(idx >= 0);
    return Strategy{idx, action};
}

MixedProfile two_player_profile(const Game& g, const std::vector<std::pair<Strategy, Rat>>& p1,
                                const std::vector<std::pair<Strategy, Rat>>& p2) {
    std::vector<std::vector<Rat>> probs(2);
    const std::vector<std::pair<Strategy, Rat>>* in[] = {&p1, &p2};
    for (int i = 0; i < 2; ++i) {
        probs[i].assign(g.num_strategies(i), Rat(0));
        for (const auto& [s, w] : *in[i]) {
            const auto& set = g.strategies(i);
            probs[i][std::find(set.begin(), set.end(), s) - set.begin()] += w;
        }
    }
    return MixedProfile(g, std::move(probs));
}

std::set<std::pair<Partition, std::vector<Rat>>> outcome_set(
    const Game& g, const std::vector<PureProfile>& profiles) {
    std::set<std::pair<Partition, std::vector<Rat>>> out;
    for (const auto& p : profiles) out.insert({formation_rule(g, p), outcome_payoff(g, p)});
    return out;
}

}  // namespace

TEST_CASE("regret is zero exactly at known equilibria") {
    auto spec = fixture("bos", {Rat(1, 10), false, Rat(3)});
    Game g = build_game(spec, 1);
    auto m = fixture_reference_profile("bos", g, {Rat(1, 10), false, Rat(3)});
    REQUIRE(m);
    CHECK(max_regret(g, *m) == 0);

    // Perturbed profile has strictly positive regret.
    auto bad = two_player_profile(g, {{strat(g, "1|2", 0), Rat(1, 2)},
                                      {strat(g, "1|2", 1), Rat(1, 2)}},
                                  {{strat(g, "1|2", 0), Rat(1, 3)},
                                   {strat(g, "1|2", 1), Rat(2, 3)}});
    CHECK(max_regret(g, bad) > 0);
}

TEST_CASE("pure Nash: bos k=1 has exactly the two coordination profiles") {
    auto spec = fixture("bos");
    Game g = build_game(spec, 1);
    auto eqs = pure_nash(g, /*reduce=*/true);
    REQUIRE(eqs.size() == 2);
    std::set<std::vector<Rat>> payoffs;
    for (const auto& p : eqs) payoffs.insert(outcome_payoff(g, p));
    CHECK(payoffs == std::set<std::vector<Rat>>{{1, 2}, {2, 1}});
}

TEST_CASE("pure Nash outcome set is reduce-invariant") {
    for (const char* name : {"bos", "staghare"}) {
        auto spec = fixture(name);
        Game g = build_game(spec, 2);
        auto reduced = outcome_set(g, pure_nash(g, true));
        auto full = outcome_set(g, pure_nash(g, false));
        CHECK(reduced == full);
    }
}

TEST_CASE("every pure Nash profile verifies with zero regret") {
    for (const char* name : {"dinner", "lunch", "bos", "staghare"}) {
        auto spec = fixture(name);
        Game g = build_game(spec, 2);
        for (const auto& p : pure_nash(g, true))
            CHECK(max_regret(g, MixedProfile::degenerate(g, p)) == 0);
    }
}

TEST_CASE("dominance elimination is safe: surviving equilibria were equilibria") {
    auto spec = fixture("dinner");
    Game g = build_game(spec, 2);
    auto result = eliminate_weakly_dominated(g);
    CHECK_FALSE(result.trace.empty());
    for (const auto& p : pure_nash(result.game, true))
        CHECK(max_regret(g, MixedProfile::degenerate(g, p)) == 0);
    // Trace accounting: removed + surviving == original.
    for (int i = 0; i < g.num_players(); ++i) {
        int removed = 0;
        for (const auto& round : result.trace)
            removed += static_cast<int>(round.removed[i].size());
        CHECK(removed + result.game.num_strategies(i) == g.num_strategies(i));
    }
}

TEST_CASE("support enumeration finds the bos k=1 mixed equilibrium") {
    auto spec = fixture("bos");
    Game g = build_game(spec, 1);
    auto found = mixed_support_2p(g, 2);
    bool has_mixed = false;
    for (const auto& me : found) {
        CHECK(me.max_regret == 0);
        CHECK(max_regret(g, me.profile) == 0);  // re-verify independently
        if (me.profile.support(0).size() == 2) {
            has_mixed = true;
            const auto& set = g.strategies(0);
            int b = static_cast<int>(std::find(set.begin(), set.end(), strat(g, "1|2", 0)) -
                                     set.begin());
            CHECK(me.profile.probs(0)[b] == Rat(2, 3));
            CHECK(me.profile.probs(1)[b] == Rat(1, 3));
        }
    }
    CHECK(has_mixed);
}

TEST_CASE("joint-support bos equilibrium is epsilon-independent") {
    for (const char* eps : {"0", "1/10", "1", "7/3"}) {
        FixtureParams params;
        params.epsilon = *parse_rational(eps);
        auto spec = fixture("bos", params);
        Game g = build_game(spec, 2);
        Strategy jb = strat(g, "1,2", 0), jo = strat(g, "1,2", 1);
        auto m = two_player_profile(g, {{jb, Rat(2, 3)}, {jo, Rat(1, 3)}},
                                    {{jb, Rat(1, 3)}, {jo, Rat(2, 3)}});
        CHECK(max_regret(g, m) == 0);
    }
}

TEST_CASE("zero-miscoordination variant supports the closed-form joint profile") {
    for (const char* eps : {"0", "1/10", "1"}) {
        FixtureParams params;
        params.epsilon = *parse_rational(eps);
        params.zero_miscoordination = true;
        auto spec = fixture("bos", params);
        Game g = build_game(spec, 2);
        auto m = fixture_reference_profile("bos", g, params);
        REQUIRE(m);
        CHECK(max_regret(g, *m) == 0);
        // Player 2 puts (1+e)/(3+2e) on (joint, B).
        Strategy jb = strat(g, "1,2", 0);
        const auto& set = g.strategies(1);
        int idx = static_cast<int>(std::find(set.begin(), set.end(), jb) - set.begin());
        const Rat& e = params.epsilon;
        CHECK(m->probs(1)[idx] == (1 + e) / (3 + 2 * e));
    }
}

TEST_CASE("indifference solver recovers the lunch uniform equilibrium (n=4)") {
    auto spec = fixture("lunch");
    Game g = build_game(spec, 2);
    auto reference = fixture_reference_profile("lunch", g);
    REQUIRE(reference);
    std::vector<std::vector<int>> supports(4);
    for (int i = 0; i < 4; ++i) supports[i] = reference->support(i);
    auto solved = solve_indifference(g, supports);
    REQUIRE(solved);
    CHECK(solved->exact);
    CHECK(solved->max_regret == 0);
    for (int i = 0; i < 4; ++i)
        for (int s : supports[i]) CHECK(solved->profile.probs(i)[s] == Rat(1, 3));
}

TEST_CASE("verify_candidate reports per-player regrets and honors tolerance") {
    auto spec = fixture("bos");
    Game g = build_game(spec, 1);
    auto near = two_player_profile(g, {{strat(g, "1|2", 0), Rat(13, 20)},
                                       {strat(g, "1|2", 1), Rat(7, 20)}},
                                   {{strat(g, "1|2", 0), Rat(1, 3)},
                                    {strat(g, "1|2", 1), Rat(2, 3)}});
    auto strict = verify_candidate(g, near);
    CHECK_FALSE(strict.is_equilibrium);
    CHECK(strict.max_regret > 0);
    CHECK(strict.per_player_regret.size() == 2);
    auto loose = verify_candidate(g, near, Rat(1, 10));
    CHECK(loose.is_equilibrium);
}

TEST_CASE("strong Nash: joint stag hunt survives, separate hare hunt does not") {
    auto spec = fixture("staghare");
    Game g = build_game(spec, 2);
    PureProfile joint_stag{strat(g, "1,2", 1), strat(g, "1,2", 1)};
    auto strong = strong_nash_check(g, joint_stag, 2);
    CHECK(strong.is_strong);

    PureProfile sep_hare{strat(g, "1|2", 0), strat(g, "1|2", 0)};
    auto weak = strong_nash_check(g, sep_hare, 2);
    CHECK_FALSE(weak.is_strong);
    REQUIRE(weak.witness);
    CHECK(weak.witness->coalition == 0b11);
    CHECK(weak.witness->payoffs == std::vector<Rat>{100, 100});
}

TEST_CASE("equilibria are invariant under a constant payoff shift") {
    FixtureParams params;
    auto base = fixture("staghare");
    // Shift every payoff of player 1 by +17.
    std::vector<PayoffEntry> entries = base->entries();
    for (auto& e : entries) e.payoffs[0] += 17;
    std::vector<Rat> def = base->default_payoff();
    def[0] += 17;
    std::vector<std::vector<std::string>> actions;
    for (int i = 0; i < base->num_players(); ++i) actions.push_back(base->actions(i));
    auto shifted = std::make_shared<GameSpec>(base->players(), actions, entries, def);

    Game g0 = build_game(base, 2), g1 = build_game(shifted, 2);
    CHECK(outcome_set(g0, pure_nash(g0, true)).size() ==
          outcome_set(g1, pure_nash(g1, true)).size());
    for (const auto& p : pure_nash(g0, true))
        CHECK(max_regret(g1, MixedProfile::degenerate(g1, p)) == 0);
}

TEST_CASE("resource caps raise ResourceError") {
    auto spec = fixture("lunch");
    Game g = build_game(spec, 2);
    CHECK_THROWS_AS(pure_nash(g, false, 10), ResourceError);
    CHECK_THROWS_AS(mixed_support_2p(g, 2), DomainError);  // 4 players
}

TEST_CASE("outcome grouping partitions the equilibrium list") {
    auto spec = fixture("staghare");
    Game g = build_game(spec, 2);
    auto eqs = pure_nash(g, true);
    auto classes = group_outcomes(g, eqs);
    std::size_t total = 0;
    for (const auto& cls : classes) {
        total += cls.profiles.size();
        for (const auto& p : cls.profiles) {
            CHECK(formation_rule(g, p) == cls.realized);
            CHECK(outcome_payoff(g, p) == cls.payoffs);
        }
    }
    CHECK(total == eqs.size());
}
