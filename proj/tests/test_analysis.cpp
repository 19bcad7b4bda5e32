#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coalgame/analysis.hpp"
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

}  // namespace

TEST_CASE("dinner: C1,C2 cooperate completely; A,C1 fails ex ante with a witness") {
    auto spec = fixture("dinner");
    Game g = build_game(spec, 2);
    auto m = fixture_reference_profile("dinner", g);
    REQUIRE(m);
    auto c = cooperation_check(g, *m, parse_coalition("C1,C2", spec->players()));
    CHECK(c.ex_ante);
    CHECK(c.ex_post_1);
    CHECK(c.ex_post_2);
    CHECK(c.complete);
    CHECK(c.max_regret == 0);

    auto a = cooperation_check(g, *m, parse_coalition("A,C1", spec->players()));
    CHECK_FALSE(a.complete);
    CHECK_FALSE(a.ex_ante);
    REQUIRE(a.ex_ante_witness);
    CHECK(a.ex_post_2);  // the profile itself is still an equilibrium
}

TEST_CASE("ex ante cooperation implies ex post 1") {
    // Any profile whose supports all desire the block realizes it surely.
    auto spec = fixture("dinner");
    Game g = build_game(spec, 2);
    Mask pair = parse_coalition("A,B", spec->players());
    for (const std::string& other : {std::string("A,B|C1|C2"), std::string("A,B|C1,C2")}) {
        PureProfile p{strat(g, "A,B|C1,C2"), strat(g, other), strat(g, "A,C1|B,C2"),
                      strat(g, "A|B|C1,C2")};
        auto report = cooperation_check(g, MixedProfile::degenerate(g, p), pair);
        CHECK(report.ex_ante);
        CHECK(report.ex_post_1);
    }
}

TEST_CASE("lunch is stochastic with ten equilibrium partitions") {
    auto spec = fixture("lunch");
    Game g = build_game(spec, 2);
    auto m = fixture_reference_profile("lunch", g);
    REQUIRE(m);
    auto parts = equilibrium_partitions(g, {*m});
    CHECK(parts.size() == 10);
    CHECK(is_stochastic(g, {*m}));

    // A degenerate equilibrium alone is not stochastic.
    auto sh_spec = fixture("staghare");
    Game sh = build_game(sh_spec, 2);
    auto pure = fixture_reference_profile("staghare", sh);
    REQUIRE(pure);
    CHECK_FALSE(is_stochastic(sh, {*pure}));
}

TEST_CASE("simulation is seed-deterministic and frequency-consistent") {
    auto spec = fixture("lunch");
    Game g = build_game(spec, 2);
    auto m = fixture_reference_profile("lunch", g);
    REQUIRE(m);

    auto run1 = simulate(g, *m, 100'000, 42);
    auto run2 = simulate(g, *m, 100'000, 42);
    CHECK(run1.states == run2.states);
    auto other_seed = simulate(g, *m, 100'000, 43);
    CHECK(run1.states != other_seed.states);

    std::map<Partition, std::int64_t> counts;
    for (const auto& p : run1.states) ++counts[p];
    double n = 100'000;
    for (const auto& [partition, prob] : realized_distribution(g, *m)) {
        double expected = rat_to_double(prob);
        double freq = counts[partition] / n;
        double se = std::sqrt(expected * (1 - expected) / n);
        CHECK(std::abs(freq - expected) <= 4 * se);
    }
}

TEST_CASE("degenerate profile simulates to a single state") {
    auto spec = fixture("staghare");
    Game g = build_game(spec, 2);
    auto m = fixture_reference_profile("staghare", g);
    REQUIRE(m);
    auto run = simulate(g, *m, 500, 1);
    Partition joint = parse_partition("1,2", spec->players());
    for (const auto& p : run.states) CHECK(p == joint);
    CHECK_THROWS_AS(simulate(g, *m, 0, 1), DomainError);
}

TEST_CASE("K* values for the four worked games") {
    struct Case {
        const char* name;
        int k0;
        int k_star;
    } cases[] = {{"dinner", 2, 4}, {"lunch", 2, 4}, {"staghare", 1, 1}, {"bos", 1, 1}};
    for (const auto& c : cases) {
        auto spec = fixture(c.name);
        Game base = build_game(spec, c.k0);
        auto m = fixture_reference_profile(c.name, base);
        REQUIRE(m);
        auto report = stability_k_star(spec, c.k0, *m, StabilityPolicy::kForall);
        CHECK(report.k0 == c.k0);
        CHECK(report.k_star == c.k_star);
        for (const auto& v : report.per_k) {
            if (v.k > c.k_star) continue;
            CHECK(v.passed);
            CHECK(v.base_is_equilibrium);
        }
    }
}

TEST_CASE("staghare survives enlargement under the exists policy") {
    // Γ(2) keeps (8,8) equilibria that do not improve on the base, so the
    // existential reading extends the chain to k=2.
    auto spec = fixture("staghare");
    Game base = build_game(spec, 1);
    auto m = fixture_reference_profile("staghare", base);
    REQUIRE(m);
    auto report = stability_k_star(spec, 1, *m, StabilityPolicy::kExists);
    CHECK(report.k_star == 2);
}

TEST_CASE("stability requires an equilibrium base") {
    auto spec = fixture("staghare");
    Game base = build_game(spec, 1);
    // (separate, stag) for both is not an equilibrium at k=1.
    PureProfile bad{strat(base, "1|2", 1), strat(base, "1|2", 1)};
    CHECK_THROWS_AS(
        stability_k_star(spec, 1, MixedProfile::degenerate(base, bad), StabilityPolicy::kForall),
        PreconditionError);
}

TEST_CASE("cooperation check rejects coalitions outside the player set") {
    auto spec = fixture("bos");
    Game g = build_game(spec, 1);
    auto m = fixture_reference_profile("bos", g);
    REQUIRE(m);
    CHECK_THROWS_AS(cooperation_check(g, *m, 0), DomainError);
    CHECK_THROWS_AS(cooperation_check(g, *m, 0b100), DomainError);
}
