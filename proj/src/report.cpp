#include "coalgame/report.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace coalgame {

namespace {

using nlohmann::json;

constexpr int kReportVersion = 1;

json base_doc(const char* command) {
    json doc;
    doc["report_version"] = kReportVersion;
    doc["command"] = command;
    return doc;
}

const char* method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::kSupportEnum: return "support-enum";
        case SolveMethod::kIndifferenceSolve: return "indifference";
        case SolveMethod::kVerifiedCandidate: return "candidate";
    }
    return "?";
}

json profile_json(const Game& game, const MixedProfile& m) {
    json out = json::object();
    const PlayerSet& ps = game.spec().players();
    for (int i = 0; i < game.num_players(); ++i) {
        json list = json::array();
        for (int s : m.support(i)) {
            const Strategy& st = game.strategies(i)[s];
            json item;
            item["partition"] = canonical_string(game.partitions()[st.partition], ps);
            item["action"] = game.spec().actions(i)[st.action];
            item["prob"] = rat_to_string(m.probs(i)[s]);
            list.push_back(std::move(item));
        }
        out[ps.label(i)] = std::move(list);
    }
    return out;
}

json pure_profile_json(const Game& game, const PureProfile& p) {
    json out = json::object();
    const PlayerSet& ps = game.spec().players();
    for (int i = 0; i < game.num_players(); ++i)
        out[ps.label(i)] = game.strategy_string(i, p[i]);
    return out;
}

std::string pure_profile_text(const Game& game, const PureProfile& p) {
    const PlayerSet& ps = game.spec().players();
    std::ostringstream out;
    for (int i = 0; i < game.num_players(); ++i) {
        if (i) out << "  ";
        out << ps.label(i) << ":" << game.strategy_string(i, p[i]);
    }
    return out.str();
}

json rat_vector_json(const std::vector<Rat>& v) {
    json out = json::array();
    for (const Rat& r : v) out.push_back(rat_to_string(r));
    return out;
}

}  // namespace

std::string profile_text(const Game& game, const MixedProfile& m) {
    const PlayerSet& ps = game.spec().players();
    std::ostringstream out;
    for (int i = 0; i < game.num_players(); ++i) {
        out << "  " << ps.label(i) << ":";
        for (int s : m.support(i)) {
            const Strategy& st = game.strategies(i)[s];
            out << " " << rat_to_string(m.probs(i)[s]) << " on "
                << game.strategy_string(i, st);
        }
        out << "\n";
    }
    return out.str();
}

std::string render_partitions_text(const Game& game) {
    std::ostringstream out;
    for (const auto& p : game.partitions())
        out << canonical_string(p, game.spec().players()) << "\n";
    out << "count: " << game.partitions().size() << "\n";
    return out.str();
}

std::string render_partitions_json(const Game& game) {
    json doc = base_doc("partitions");
    doc["game"] = game.spec().name();
    doc["k"] = game.k();
    json list = json::array();
    for (const auto& p : game.partitions())
        list.push_back(canonical_string(p, game.spec().players()));
    doc["partitions"] = std::move(list);
    doc["count"] = game.partitions().size();
    return doc.dump(2) + "\n";
}

std::string render_equilibrium_text(const Game& game, const EquilibriumReport& report) {
    std::ostringstream out;
    out << "game: " << report.game_name << "  k=" << report.k;
    if (report.reduced) out << "  [reduced]";
    if (report.eliminated) out << "  [dominance-eliminated]";
    out << "\n";
    out << "pure equilibria: " << report.pure_equilibria.size() << "\n";
    out << "outcome classes: " << report.outcome_classes.size() << "\n";
    for (const auto& cls : report.outcome_classes) {
        out << "  " << canonical_string(cls.realized, game.spec().players()) << "  payoffs "
            << payoff_vector_to_string(cls.payoffs) << "  (" << cls.profiles.size()
            << (cls.profiles.size() == 1 ? " profile)" : " profiles)") << "\n";
        for (const auto& p : cls.profiles) out << "    " << pure_profile_text(game, p) << "\n";
    }
    out << "mixed equilibria: " << report.mixed_equilibria.size() << "\n";
    for (const auto& me : report.mixed_equilibria) {
        out << "  method=" << method_name(me.method) << "  max regret "
            << rat_to_string(me.max_regret) << (me.exact ? "  (exact)" : "  (approx)")
            << "  payoffs " << payoff_vector_to_string(expected_payoff(game, me.profile))
            << "\n";
        out << profile_text(game, me.profile);
    }
    out << "equilibrium partitions: " << report.equilibrium_partitions.size() << "\n";
    for (const auto& p : report.equilibrium_partitions)
        out << "  " << canonical_string(p, game.spec().players()) << "\n";
    if (report.candidate) {
        out << "candidate:\n" << profile_text(game, *report.candidate);
        out << "candidate max regret: " << rat_to_string(report.candidate_verdict->max_regret)
            << (report.candidate_verdict->is_equilibrium ? "  (equilibrium)"
                                                         : "  (NOT an equilibrium)")
            << "\n";
    }
    for (const auto& note : report.notes) out << "note: " << note << "\n";
    return out.str();
}

std::string render_equilibrium_json(const Game& game, const EquilibriumReport& report) {
    json doc = base_doc("solve");
    doc["game"] = report.game_name;
    doc["k"] = report.k;
    doc["reduced"] = report.reduced;
    doc["eliminated"] = report.eliminated;
    json pure = json::array();
    for (const auto& p : report.pure_equilibria) pure.push_back(pure_profile_json(game, p));
    doc["pure_equilibria"] = std::move(pure);
    json classes = json::array();
    for (const auto& cls : report.outcome_classes) {
        json jc;
        jc["realized"] = canonical_string(cls.realized, game.spec().players());
        jc["payoffs"] = rat_vector_json(cls.payoffs);
        jc["num_profiles"] = cls.profiles.size();
        classes.push_back(std::move(jc));
    }
    doc["outcome_classes"] = std::move(classes);
    json mixed = json::array();
    for (const auto& me : report.mixed_equilibria) {
        json jm;
        jm["profile"] = profile_json(game, me.profile);
        jm["max_regret"] = rat_to_string(me.max_regret);
        jm["method"] = method_name(me.method);
        jm["exact"] = me.exact;
        jm["payoffs"] = rat_vector_json(expected_payoff(game, me.profile));
        mixed.push_back(std::move(jm));
    }
    doc["mixed_equilibria"] = std::move(mixed);
    json parts = json::array();
    for (const auto& p : report.equilibrium_partitions)
        parts.push_back(canonical_string(p, game.spec().players()));
    doc["equilibrium_partitions"] = std::move(parts);
    doc["tolerance"] = rat_to_string(report.tolerance);
    doc["notes"] = report.notes;
    if (report.candidate) {
        json jc;
        jc["profile"] = profile_json(game, *report.candidate);
        jc["max_regret"] = rat_to_string(report.candidate_verdict->max_regret);
        jc["is_equilibrium"] = report.candidate_verdict->is_equilibrium;
        jc["per_player_regret"] = rat_vector_json(report.candidate_verdict->per_player_regret);
        doc["candidate"] = std::move(jc);
    }
    return doc.dump(2) + "\n";
}

std::string render_cooperation_text(const Game& game, const CooperationReport& report) {
    const PlayerSet& ps = game.spec().players();
    std::ostringstream out;
    auto flag = [](bool b) { return b ? "true" : "false"; };
    out << "coalition: " << coalition_string(report.coalition, ps) << "\n";
    out << "ex ante (every member always desires it): " << flag(report.ex_ante) << "\n";
    if (report.ex_ante_witness) out << "  witness: " << *report.ex_ante_witness << "\n";
    out << "ex post 1 (every realized partition contains it): " << flag(report.ex_post_1)
        << "\n";
    if (report.ex_post_1_witness)
        out << "  witness partition: " << *report.ex_post_1_witness << "\n";
    out << "ex post 2 (profile is an equilibrium): " << flag(report.ex_post_2)
        << "  (max regret " << rat_to_string(report.max_regret) << ")\n";
    out << "complete cooperation: " << flag(report.complete) << "\n";
    return out.str();
}

std::string render_cooperation_json(const Game& game, const CooperationReport& report) {
    json doc = base_doc("cooperate");
    doc["game"] = game.spec().name();
    doc["k"] = game.k();
    doc["coalition"] = coalition_string(report.coalition, game.spec().players());
    doc["ex_ante"] = report.ex_ante;
    if (report.ex_ante_witness) doc["ex_ante_witness"] = *report.ex_ante_witness;
    doc["ex_post_1"] = report.ex_post_1;
    if (report.ex_post_1_witness) doc["ex_post_1_witness"] = *report.ex_post_1_witness;
    doc["ex_post_2"] = report.ex_post_2;
    doc["max_regret"] = rat_to_string(report.max_regret);
    doc["complete"] = report.complete;
    return doc.dump(2) + "\n";
}

std::string render_stability_text(const GameSpec& spec, const StabilityReport& report) {
    std::ostringstream out;
    out << "game: " << spec.name() << "  k0=" << report.k0 << "  policy="
        << (report.policy == StabilityPolicy::kForall ? "forall" : "exists") << "\n";
    out << "base payoffs: " << payoff_vector_to_string(report.base_payoffs) << "\n";
    for (const auto& v : report.per_k) {
        out << "k=" << v.k << "  base equilibrium: " << (v.base_is_equilibrium ? "yes" : "no")
            << "  equilibria examined: " << v.equilibria_examined
            << "  improving: " << v.improving_equilibria.size() << "  -> "
            << (v.passed ? "pass" : "fail") << "\n";
        for (const auto& desc : v.improving_equilibria) out << "    improves: " << desc << "\n";
    }
    out << "K* = " << report.k_star << "\n";
    return out.str();
}

std::string render_stability_json(const GameSpec& spec, const StabilityReport& report) {
    json doc = base_doc("stability");
    doc["game"] = spec.name();
    doc["k0"] = report.k0;
    doc["policy"] = report.policy == StabilityPolicy::kForall ? "forall" : "exists";
    doc["base_payoffs"] = rat_vector_json(report.base_payoffs);
    json per_k = json::array();
    for (const auto& v : report.per_k) {
        json jv;
        jv["k"] = v.k;
        jv["passed"] = v.passed;
        jv["base_is_equilibrium"] = v.base_is_equilibrium;
        jv["equilibria_examined"] = v.equilibria_examined;
        jv["improving_equilibria"] = v.improving_equilibria;
        per_k.push_back(std::move(jv));
    }
    doc["per_k"] = std::move(per_k);
    doc["k_star"] = report.k_star;
    return doc.dump(2) + "\n";
}

namespace {

struct FrequencyRow {
    std::string partition;
    std::int64_t count = 0;
    double frequency = 0;
    double std_error = 0;
    double expected = 0;
};

std::vector<FrequencyRow> frequency_table(const Game& game, const TrajectorySample& sample,
                                          const std::map<Partition, Rat>& expected) {
    std::map<Partition, std::int64_t> counts;
    for (const auto& p : sample.states) ++counts[p];
    for (const auto& [p, prob] : expected) counts.try_emplace(p, 0);
    double n = static_cast<double>(sample.states.size());
    std::vector<FrequencyRow> rows;
    for (const auto& [p, count] : counts) {
        FrequencyRow row;
        row.partition = canonical_string(p, game.spec().players());
        row.count = count;
        row.frequency = count / n;
        row.std_error = std::sqrt(row.frequency * (1 - row.frequency) / n);
        auto it = expected.find(p);
        row.expected = it == expected.end() ? 0.0 : rat_to_double(it->second);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string render_trajectory_text(const Game& game, const TrajectorySample& sample,
                                   const std::map<Partition, Rat>& expected) {
    std::ostringstream out;
    out << "game: " << sample.game_name << "  k=" << sample.k << "  steps="
        << sample.states.size() << "  seed=" << sample.seed << "\n";
    out << "partition  count  frequency  std-error  expected\n";
    char buf[96];
    for (const auto& row : frequency_table(game, sample, expected)) {
        std::snprintf(buf, sizeof buf, "%lld  %.6f  %.6f  %.6f",
                      static_cast<long long>(row.count), row.frequency, row.std_error,
                      row.expected);
        out << row.partition << "  " << buf << "\n";
    }
    return out.str();
}

std::string render_trajectory_json(const Game& game, const TrajectorySample& sample,
                                   const std::map<Partition, Rat>& expected) {
    json doc = base_doc("simulate");
    doc["game"] = sample.game_name;
    doc["k"] = sample.k;
    doc["steps"] = sample.states.size();
    doc["seed"] = sample.seed;
    json rows = json::array();
    for (const auto& row : frequency_table(game, sample, expected)) {
        json jr;
        jr["partition"] = row.partition;
        jr["count"] = row.count;
        jr["frequency"] = row.frequency;
        jr["std_error"] = row.std_error;
        jr["expected"] = row.expected;
        rows.push_back(std::move(jr));
    }
    doc["frequencies"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string render_coop_theory_text(const CoopTheoryReport& report) {
    const PlayerSet& ps = report.characteristic.players;
    std::ostringstream out;
    out << "convention: "
        << (report.characteristic.convention == ValueConvention::kOptimistic ? "optimistic"
                                                                             : "pessimistic")
        << "\n";
    out << "characteristic function:\n";
    for (const auto& [mask, value] : report.characteristic.values)
        out << "  v(" << coalition_string(mask, ps) << ") = " << rat_to_string(value) << "\n";
    if (report.core.empty) {
        out << "core: empty\n";
        out << "balanced collection exceeding v(N):\n";
        Rat total = 0;
        for (const auto& [mask, weight] : *report.core.balanced_weights) {
            out << "  w(" << coalition_string(mask, ps) << ") = " << rat_to_string(weight)
                << "   (v = " << rat_to_string(report.characteristic.value(mask)) << ")\n";
            total += weight * report.characteristic.value(mask);
        }
        out << "  sum w(S) v(S) = " << rat_to_string(total) << " > v(N) = "
            << rat_to_string(report.characteristic.value(ps.full_mask())) << "\n";
    } else {
        out << "core: nonempty\n";
        out << "core point: " << payoff_vector_to_string(*report.core.core_point) << "\n";
    }
    out << "Shapley value: " << payoff_vector_to_string(report.shapley) << "\n";
    return out.str();
}

std::string render_coop_theory_json(const CoopTheoryReport& report) {
    const PlayerSet& ps = report.characteristic.players;
    json doc = base_doc("coop-theory");
    doc["convention"] = report.characteristic.convention == ValueConvention::kOptimistic
                            ? "optimistic"
                            : "pessimistic";
    json values = json::object();
    for (const auto& [mask, value] : report.characteristic.values)
        values[coalition_string(mask, ps)] = rat_to_string(value);
    doc["characteristic"] = std::move(values);
    doc["core_empty"] = report.core.empty;
    if (report.core.empty) {
        json weights = json::object();
        for (const auto& [mask, weight] : *report.core.balanced_weights)
            weights[coalition_string(mask, ps)] = rat_to_string(weight);
        doc["balanced_weights"] = std::move(weights);
    } else {
        doc["core_point"] = rat_vector_json(*report.core.core_point);
    }
    doc["shapley"] = rat_vector_json(report.shapley);
    return doc.dump(2) + "\n";
}

}  // namespace coalgame
