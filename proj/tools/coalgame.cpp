#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "coalgame/analysis.hpp"
#include "coalgame/cooperative.hpp"
#include "coalgame/equilibrium.hpp"
#include "coalgame/errors.hpp"
#include "coalgame/game.hpp"
#include "coalgame/gamespec_io.hpp"
#include "coalgame/report.hpp"

namespace {

using namespace coalgame;

struct Options {
    std::string fixture_name;
    std::string spec_path;
    int k = -1;  // unset, defaults to min(2, n)
    std::string epsilon = "1/10";
    std::string two_pair = "3";
    bool zero_misc = false;
    std::string policy = "forall";
    std::uint64_t seed = 0;
    std::int64_t steps = 10000;
    std::string format = "text";
    bool reduce = true;
    bool eliminate = false;
    std::string candidate_path;
    std::string coalition;
    std::string convention = "optimistic";
    std::string tolerance = "0";
    int max_support = 4;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Rat parse_rat_flag(const std::string& text, const std::string& flag) {
    auto r = parse_rational(text);
    if (!r) throw ParseError(flag + ": expected a rational like 3 or 1/10, got '" + text + "'");
    return *r;
}

struct Source {
    std::shared_ptr<const GameSpec> spec;
    std::string fixture_name;  // empty for file-based specs
    FixtureParams params;
};

Source load_source(const Options& opt) {
    Source src;
    if (!opt.fixture_name.empty() && !opt.spec_path.empty())
        throw ParseError("give exactly one of --fixture and --spec");
    if (!opt.fixture_name.empty()) {
        src.params.epsilon = parse_rat_flag(opt.epsilon, "--epsilon");
        src.params.lunch_two_pair = parse_rat_flag(opt.two_pair, "--two-pair");
        src.params.zero_miscoordination = opt.zero_misc;
        src.fixture_name = opt.fixture_name;
        src.spec = fixture(opt.fixture_name, src.params);
    } else if (!opt.spec_path.empty()) {
        src.spec = parse_gamespec(read_file(opt.spec_path));
    } else {
        throw ParseError("give one of --fixture and --spec");
    }
    return src;
}

int effective_k(const Options& opt, const GameSpec& spec) {
    if (opt.k != -1) return opt.k;  // build_game validates the range
    return std::min(2, spec.num_players());
}

// Candidate file if given, else the fixture's reference profile, else the
// unique pure equilibrium of the game. PreconditionError when ambiguous.
MixedProfile resolve_profile(const Options& opt, const Source& src, const Game& game) {
    if (!opt.candidate_path.empty())
        return parse_profile(read_file(opt.candidate_path), game);
    if (!src.fixture_name.empty()) {
        auto m = fixture_reference_profile(src.fixture_name, game, src.params);
        if (m) return *m;
    }
    auto pure = pure_nash(game, /*reduce=*/true);
    if (pure.size() == 1) return MixedProfile::degenerate(game, pure[0]);
    std::ostringstream msg;
    msg << "no --candidate given and no unique equilibrium to fall back on ("
        << pure.size() << " pure equilibria found";
    for (std::size_t i = 0; i < pure.size() && i < 8; ++i) {
        msg << "; " << canonical_string(formation_rule(game, pure[i]), game.spec().players())
            << " " << payoff_vector_to_string(outcome_payoff(game, pure[i]));
    }
    msg << ")";
    throw PreconditionError(msg.str());
}

void emit(const std::string& text) { std::cout << text; }

int cmd_partitions(const Options& opt) {
    Source src = load_source(opt);
    Game game = build_game(src.spec, effective_k(opt, *src.spec));
    emit(opt.format == "json" ? render_partitions_json(game) : render_partitions_text(game));
    return 0;
}

int cmd_solve(const Options& opt) {
    Source src = load_source(opt);
    Game game = build_game(src.spec, effective_k(opt, *src.spec));
    Rat tolerance = parse_rat_flag(opt.tolerance, "--tolerance");

    EquilibriumReport report;
    report.game_name = src.spec->name();
    report.k = game.k();
    report.reduced = opt.reduce;
    report.eliminated = opt.eliminate;
    report.tolerance = tolerance;

    Game swept = game;
    if (opt.eliminate) {
        auto result = eliminate_weakly_dominated(game);
        swept = result.game;
        for (std::size_t r = 0; r < result.trace.size(); ++r) {
            int removed = 0;
            for (const auto& per_player : result.trace[r].removed)
                removed += static_cast<int>(per_player.size());
            report.notes.push_back("elimination round " + std::to_string(r + 1) +
                                   " removed " + std::to_string(removed) + " strategies");
        }
    }

    report.pure_equilibria = pure_nash(swept, opt.reduce);
    report.outcome_classes = group_outcomes(swept, report.pure_equilibria);
    if (game.num_players() == 2) {
        for (auto& me : mixed_support_2p(swept, opt.max_support)) {
            bool mixing = false;
            for (int i = 0; i < 2; ++i) mixing |= me.profile.support(i).size() > 1;
            if (mixing) report.mixed_equilibria.push_back(std::move(me));
        }
    }

    std::vector<MixedProfile> all;
    for (const auto& p : report.pure_equilibria)
        all.push_back(MixedProfile::degenerate(swept, p));
    for (const auto& me : report.mixed_equilibria) all.push_back(me.profile);
    report.equilibrium_partitions = equilibrium_partitions(swept, all);

    if (!opt.candidate_path.empty()) {
        MixedProfile candidate = parse_profile(read_file(opt.candidate_path), game);
        report.candidate = candidate;
        report.candidate_verdict = verify_candidate(game, candidate, tolerance);
    }

    if (src.fixture_name == "lunch" && !report.pure_equilibria.empty()) {
        report.notes.push_back(
            "discrepancy: the sweep finds " + std::to_string(report.pure_equilibria.size()) +
            " pure equilibria although this game is usually described as mixed-only");
    }
    if (src.fixture_name == "bos" && !src.params.zero_miscoordination && game.k() >= 2) {
        // The often-quoted symmetric joint profile: both players put
        // probability (1+e)/(3+2e) on B. Exact verification shows it is
        // not an equilibrium of this payoff table.
        const Rat& e = src.params.epsilon;
        Rat pB = (1 + e) / (3 + 2 * e);
        Partition joint = parse_partition("1,2", src.spec->players());
        int pidx = game.partition_index(joint);
        std::vector<std::vector<Rat>> probs(2);
        for (int i = 0; i < 2; ++i) {
            probs[i].assign(game.num_strategies(i), Rat(0));
            const auto& set = game.strategies(i);
            auto at = [&](int action) {
                return std::find(set.begin(), set.end(), Strategy{pidx, action}) - set.begin();
            };
            probs[i][at(0)] = pB;
            probs[i][at(1)] = 1 - pB;
        }
        MixedProfile sym(game, std::move(probs));
        auto verdict = verify_candidate(game, sym);
        if (!verdict.is_equilibrium)
            report.notes.push_back(
                "discrepancy: the symmetric joint profile with B-probability " +
                rat_to_string(pB) + " for both players fails exact verification on this "
                "table (max regret " + rat_to_string(verdict.max_regret) +
                "); see the --zero-misc variant for the game that supports the formula");
    }

    emit(opt.format == "json" ? render_equilibrium_json(swept, report)
                              : render_equilibrium_text(swept, report));
    return 0;
}

int cmd_cooperate(const Options& opt) {
    Source src = load_source(opt);
    if (opt.coalition.empty()) throw ParseError("--coalition is required");
    Game game = build_game(src.spec, effective_k(opt, *src.spec));
    Mask coalition = parse_coalition(opt.coalition, src.spec->players());
    MixedProfile m = resolve_profile(opt, src, game);
    Rat tolerance = parse_rat_flag(opt.tolerance, "--tolerance");
    CooperationReport report = cooperation_check(game, m, coalition, tolerance);
    emit(opt.format == "json" ? render_cooperation_json(game, report)
                              : render_cooperation_text(game, report));
    if (!report.ex_post_2)
        throw PreconditionError("profile is not an equilibrium (max regret " +
                                rat_to_string(report.max_regret) + ")");
    return 0;
}

int cmd_stability(const Options& opt) {
    Source src = load_source(opt);
    int k0 = effective_k(opt, *src.spec);
    Game base_game = build_game(src.spec, k0);
    MixedProfile base = resolve_profile(opt, src, base_game);
    StabilityPolicy policy;
    if (opt.policy == "forall")
        policy = StabilityPolicy::kForall;
    else if (opt.policy == "exists")
        policy = StabilityPolicy::kExists;
    else
        throw ParseError("--policy must be forall or exists");
    StabilityReport report = stability_k_star(src.spec, k0, base, policy);
    emit(opt.format == "json" ? render_stability_json(*src.spec, report)
                              : render_stability_text(*src.spec, report));
    return 0;
}

int cmd_simulate(const Options& opt) {
    Source src = load_source(opt);
    if (opt.steps < 1) throw ParseError("--steps must be >= 1");
    Game game = build_game(src.spec, effective_k(opt, *src.spec));
    MixedProfile m = resolve_profile(opt, src, game);
    auto verdict = verify_candidate(game, m);
    if (!verdict.is_equilibrium)
        throw PreconditionError("profile is not an equilibrium (max regret " +
                                rat_to_string(verdict.max_regret) + ")");
    TrajectorySample sample = simulate(game, m, opt.steps, opt.seed);
    auto expected = realized_distribution(game, m);
    emit(opt.format == "json" ? render_trajectory_json(game, sample, expected)
                              : render_trajectory_text(game, sample, expected));
    return 0;
}

int cmd_coop_theory(const Options& opt) {
    Source src = load_source(opt);
    ValueConvention convention;
    if (opt.convention == "optimistic")
        convention = ValueConvention::kOptimistic;
    else if (opt.convention == "pessimistic")
        convention = ValueConvention::kPessimistic;
    else
        throw ParseError("--convention must be optimistic or pessimistic");
    CoopTheoryReport report{extract_characteristic(*src.spec, convention), {}, {}};
    report.core = core_empty(report.characteristic);
    report.shapley = shapley_value(report.characteristic);
    emit(opt.format == "json" ? render_coop_theory_json(report)
                              : render_coop_theory_text(report));
    return 0;
}

int cmd_fixture(const Options& opt) {
    if (opt.fixture_name.empty()) throw ParseError("--fixture is required");
    Source src = load_source(opt);
    emit(serialize_gamespec(*src.spec));
    return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool uses_k0 = false) {
    cmd->add_option("--fixture", opt.fixture_name,
                    "Built-in game: dinner, lunch, bos, staghare");
    cmd->add_option("--spec", opt.spec_path, "Path to a JSON game-spec document");
    cmd->add_option(uses_k0 ? "--k0" : "--k", opt.k,
                    uses_k0 ? "Base coalition-size bound (default min(2, n))"
                            : "Maximum coalition size (default min(2, n))");
    cmd->add_option("--epsilon", opt.epsilon, "bos joint-outing bonus, rational p/q");
    cmd->add_option("--two-pair", opt.two_pair, "lunch two-pair payoff, rational p/q");
    cmd->add_flag("--zero-misc", opt.zero_misc, "bos variant: joint miscoordination pays 0");
    cmd->add_option("--format", opt.format, "Output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--candidate", opt.candidate_path, "Path to a JSON profile document");
    cmd->add_option("--tolerance", opt.tolerance, "Verification tolerance, rational p/q");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coalition-structure formation games: equilibria, cooperation, stability"};
    app.require_subcommand(1);
    Options opt;

    auto* partitions = app.add_subcommand("partitions", "List the partition family");
    add_common(partitions, opt);

    auto* solve = app.add_subcommand("solve", "Equilibria of the k-game");
    add_common(solve, opt);
    solve->add_option("--reduce", opt.reduce, "Sweep outcome-equivalence representatives");
    solve->add_flag("--eliminate-dominated", opt.eliminate,
                    "Iterated weak-dominance elimination first");
    solve->add_option("--max-support", opt.max_support, "2-player support enumeration cap");

    auto* cooperate = app.add_subcommand("cooperate", "Complete-cooperation check");
    add_common(cooperate, opt);
    cooperate->add_option("--coalition", opt.coalition, "Coalition, e.g. \"C1,C2\"");

    auto* stability = app.add_subcommand("stability", "K* stability sweep");
    add_common(stability, opt, /*uses_k0=*/true);
    stability->add_option("--policy", opt.policy, "forall | exists");

    auto* simulate = app.add_subcommand("simulate", "Sample the formation rule");
    add_common(simulate, opt);
    simulate->add_option("--steps", opt.steps, "Trajectory length");
    simulate->add_option("--seed", opt.seed, "RNG seed");

    auto* coop_theory = app.add_subcommand(
        "coop-theory", "Characteristic function, core, Shapley value");
    add_common(coop_theory, opt);
    coop_theory->add_option("--convention", opt.convention, "optimistic | pessimistic");

    auto* fixture_cmd = app.add_subcommand("fixture", "Dump a built-in game as JSON");
    add_common(fixture_cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (partitions->parsed()) return cmd_partitions(opt);
        if (solve->parsed()) return cmd_solve(opt);
        if (cooperate->parsed()) return cmd_cooperate(opt);
        if (stability->parsed()) return cmd_stability(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (coop_theory->parsed()) return cmd_coop_theory(opt);
        if (fixture_cmd->parsed()) return cmd_fixture(opt);
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
