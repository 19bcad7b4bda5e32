#include "coalgame/gamespec_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "coalgame/errors.hpp"

namespace coalgame {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

Rat parse_rat_value(const json& v, const std::string& where) {
    if (v.is_number_integer())
        return Rat(BigInt(v.get<long long>()));
    if (v.is_string()) {
        auto r = parse_rational(v.get<std::string>());
        if (r) return *r;
    }
    throw ValidationError(where + ": expected an integer or \"p/q\" rational");
}

std::vector<Rat> parse_payoff_vector(const json& v, int n, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        throw ValidationError(where + ": payoff vector must list one value per player");
    std::vector<Rat> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_rat_value(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ValidationError(where + ": unknown key '" + key + "'");
    }
}

}  // namespace

std::shared_ptr<const GameSpec> parse_gamespec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("document root must be an object");
    reject_unknown_keys(doc, {"format_version", "name", "notes", "players", "actions",
                              "entries", "default_payoff"},
                        "document");
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
        doc["format_version"].get<int>() != kFormatVersion)
        throw ValidationError("document: format_version must be the integer " +
                              std::to_string(kFormatVersion));
    if (!doc.contains("players") || !doc["players"].is_array() || doc["players"].empty())
        throw ValidationError("document: players must be a nonempty array");
    std::vector<std::string> labels;
    for (const auto& p : doc["players"]) {
        if (!p.is_string()) throw ValidationError("players: labels must be strings");
        labels.push_back(p.get<std::string>());
    }
    PlayerSet players(labels);
    int n = players.size();

    std::vector<std::vector<std::string>> actions(n, std::vector<std::string>{"-"});
    if (doc.contains("actions")) {
        if (!doc["actions"].is_object())
            throw ValidationError("actions: must map player labels to action lists");
        for (const auto& [label, list] : doc["actions"].items()) {
            int idx = players.index_of(label);
            if (idx < 0) throw ValidationError("actions: unknown player '" + label + "'");
            if (!list.is_array() || list.empty())
                throw ValidationError("actions." + label + ": must be a nonempty array");
            actions[idx].clear();
            for (const auto& a : list) {
                if (!a.is_string())
                    throw ValidationError("actions." + label + ": actions must be strings");
                actions[idx].push_back(a.get<std::string>());
            }
        }
    }

    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw ValidationError("document: entries must be an array");
    std::vector<PayoffEntry> entries;
    for (std::size_t e = 0; e < doc["entries"].size(); ++e) {
        const json& je = doc["entries"][e];
        std::string where = "entries[" + std::to_string(e) + "]";
        if (!je.is_object()) throw ValidationError(where + ": must be an object");
        reject_unknown_keys(je, {"partition", "actions", "payoffs"}, where);
        if (!je.contains("partition") || !je["partition"].is_string())
            throw ValidationError(where + ": partition pattern must be a string");
        PayoffEntry entry;
        std::string pattern = je["partition"].get<std::string>();
        if (pattern != "*") {
            try {
                entry.partition = parse_partition(pattern, players);
            } catch (const ParseError& pe) {
                throw ValidationError(where + ": " + pe.what());
            }
        }
        if (je.contains("actions")) {
            if (!je["actions"].is_array() || static_cast<int>(je["actions"].size()) != n)
                throw ValidationError(where + ": action pattern must list one entry per player");
            std::vector<std::optional<int>> pattern_actions(n);
            for (int i = 0; i < n; ++i) {
                const json& a = je["actions"][i];
                if (!a.is_string())
                    throw ValidationError(where + ": action pattern entries must be strings");
                std::string label = a.get<std::string>();
                if (label == "*") continue;
                auto it = std::find(actions[i].begin(), actions[i].end(), label);
                if (it == actions[i].end())
                    throw ValidationError(where + ": unknown action '" + label +
                                          "' for player " + players.label(i));
                pattern_actions[i] = static_cast<int>(it - actions[i].begin());
            }
            entry.actions = std::move(pattern_actions);
        }
        if (!je.contains("payoffs"))
            throw ValidationError(where + ": payoffs missing");
        entry.payoffs = parse_payoff_vector(je["payoffs"], n, where + ".payoffs");
        entries.push_back(std::move(entry));
    }

    if (!doc.contains("default_payoff"))
        throw ValidationError("document: default_payoff missing");
    std::vector<Rat> default_payoff =
        parse_payoff_vector(doc["default_payoff"], n, "default_payoff");

    std::string name = doc.contains("name") ? doc["name"].get<std::string>() : "";
    std::vector<std::string> notes;
    if (doc.contains("notes")) {
        if (!doc["notes"].is_array())
            throw ValidationError("document: notes must be an array of strings");
        for (const auto& note : doc["notes"]) {
            if (!note.is_string())
                throw ValidationError("notes: entries must be strings");
            notes.push_back(note.get<std::string>());
        }
    }

    return std::make_shared<GameSpec>(std::move(players), std::move(actions),
                                      std::move(entries), std::move(default_payoff),
                                      std::move(name), std::move(notes));
}

std::string serialize_gamespec(const GameSpec& spec) {
    json doc;
    doc["format_version"] = kFormatVersion;
    if (!spec.name().empty()) doc["name"] = spec.name();
    if (!spec.notes().empty()) doc["notes"] = spec.notes();
    doc["players"] = spec.players().labels();
    int n = spec.num_players();
    bool has_actions = false;
    for (int i = 0; i < n; ++i)
        has_actions |= spec.num_actions(i) > 1 || spec.actions(i)[0] != "-";
    if (has_actions) {
        json actions = json::object();
        for (int i = 0; i < n; ++i) actions[spec.players().label(i)] = spec.actions(i);
        doc["actions"] = std::move(actions);
    }
    json entries = json::array();
    for (const auto& entry : spec.entries()) {
        json je;
        je["partition"] = entry.partition
                              ? canonical_string(*entry.partition, spec.players())
                              : std::string("*");
        if (entry.actions) {
            json pattern = json::array();
            for (int i = 0; i < n; ++i) {
                const auto& a = (*entry.actions)[i];
                pattern.push_back(a ? spec.actions(i)[*a] : std::string("*"));
            }
            je["actions"] = std::move(pattern);
        }
        json payoffs = json::array();
        for (const Rat& v : entry.payoffs) payoffs.push_back(rat_to_string(v));
        je["payoffs"] = std::move(payoffs);
        entries.push_back(std::move(je));
    }
    doc["entries"] = std::move(entries);
    json defaults = json::array();
    for (const Rat& v : spec.default_payoff()) defaults.push_back(rat_to_string(v));
    doc["default_payoff"] = std::move(defaults);
    return doc.dump(2) + "\n";
}

namespace {

PayoffEntry make_entry(const PlayerSet& players, const std::string& partition,
                       std::vector<Rat> payoffs) {
    PayoffEntry e;
    e.partition = parse_partition(partition, players);
    e.payoffs = std::move(payoffs);
    return e;
}

PayoffEntry make_action_entry(const PlayerSet& players, const std::string& partition,
                              std::vector<int> action_profile, std::vector<Rat> payoffs) {
    PayoffEntry e = make_entry(players, partition, std::move(payoffs));
    std::vector<std::optional<int>> pattern;
    for (int a : action_profile) pattern.emplace_back(a);
    e.actions = std::move(pattern);
    return e;
}

std::shared_ptr<const GameSpec> dinner_fixture() {
    PlayerSet ps({"A", "B", "C1", "C2"});
    std::vector<PayoffEntry> entries{
        make_entry(ps, "A,B|C1|C2", {10, 10, 3, 3}),
        make_entry(ps, "A,B|C1,C2", {8, 8, 5, 5}),
        make_entry(ps, "A,C1|B,C2", {3, 5, 10, 5}),
        make_entry(ps, "A,C1|B|C2", {3, 3, 10, 3}),
        make_entry(ps, "A,C2|B,C1", {3, 5, 5, 10}),
        make_entry(ps, "A,C2|B|C1", {3, 3, 3, 10}),
    };
    return std::make_shared<GameSpec>(
        ps, std::vector<std::vector<std::string>>{}, std::move(entries),
        std::vector<Rat>{1, 1, 1, 1}, "dinner",
        std::vector<std::string>{
            "Corporate dinner game: A dines with B, C1 and C2 pair up second-best.",
            "Unlisted partitions pay (1,1,1,1)."});
}

std::shared_ptr<const GameSpec> lunch_fixture(const Rat& two_pair) {
    PlayerSet ps({"A", "B", "C", "D"});
    std::vector<PayoffEntry> entries{
        make_entry(ps, "A,B|C|D", {10, 10, 3, 3}),
        make_entry(ps, "A,C|B|D", {10, 3, 10, 3}),
        make_entry(ps, "A,D|B|C", {10, 3, 3, 10}),
        make_entry(ps, "A|B|C,D", {3, 3, 10, 10}),
        make_entry(ps, "A|B,C|D", {3, 10, 10, 3}),
        make_entry(ps, "A|B,D|C", {3, 10, 3, 10}),
        make_entry(ps, "A|B|C|D", {3, 3, 3, 3}),
        make_entry(ps, "A,B|C,D", {two_pair, two_pair, two_pair, two_pair}),
        make_entry(ps, "A,C|B,D", {two_pair, two_pair, two_pair, two_pair}),
        make_entry(ps, "A,D|B,C", {two_pair, two_pair, two_pair, two_pair}),
    };
    return std::make_shared<GameSpec>(
        ps, std::vector<std::vector<std::string>>{}, std::move(entries),
        std::vector<Rat>{0, 0, 0, 0}, "lunch",
        std::vector<std::string>{
            "Office lunch game with four identical players; pairing with anyone pays 10.",
            "Two-pair partitions use the " + rat_to_string(two_pair) +
                " completion; remaining partitions pay 0."});
}

std::shared_ptr<const GameSpec> bos_fixture(const Rat& epsilon, bool zero_misc) {
    PlayerSet ps({"1", "2"});
    std::vector<std::vector<std::string>> actions{{"B", "O"}, {"B", "O"}};
    const int B = 0, O = 1;
    Rat misc = zero_misc ? Rat(0) : epsilon;
    std::vector<PayoffEntry> entries{
        make_action_entry(ps, "1|2", {B, B}, {2, 1}),
        make_action_entry(ps, "1|2", {B, O}, {0, 0}),
        make_action_entry(ps, "1|2", {O, B}, {0, 0}),
        make_action_entry(ps, "1|2", {O, O}, {1, 2}),
        make_action_entry(ps, "1,2", {B, B}, {2 + epsilon, 1 + epsilon}),
        make_action_entry(ps, "1,2", {B, O}, {misc, misc}),
        make_action_entry(ps, "1,2", {O, B}, {misc, misc}),
        make_action_entry(ps, "1,2", {O, O}, {1 + epsilon, 2 + epsilon}),
    };
    std::vector<std::string> notes{
        "Battle-of-the-Sexes over coalition structures; epsilon = " +
            rat_to_string(epsilon) + " bonus when the joint outing is realized.",
        zero_misc ? "Variant: joint miscoordination pays (0,0)."
                  : "Joint miscoordination pays (epsilon,epsilon)."};
    return std::make_shared<GameSpec>(ps, std::move(actions), std::move(entries),
                                      std::vector<Rat>{0, 0},
                                      zero_misc ? "bos-zero" : "bos", std::move(notes));
}

std::shared_ptr<const GameSpec> staghare_fixture() {
    PlayerSet ps({"1", "2"});
    std::vector<std::vector<std::string>> actions{{"hare", "stag"}, {"hare", "stag"}};
    const int H = 0, S = 1;
    std::vector<PayoffEntry> entries{
        make_action_entry(ps, "1|2", {H, H}, {8, 8}),
        make_action_entry(ps, "1|2", {H, S}, {8, 0}),
        make_action_entry(ps, "1|2", {S, H}, {0, 8}),
        make_action_entry(ps, "1|2", {S, S}, {0, 0}),
        make_action_entry(ps, "1,2", {H, H}, {4, 4}),
        make_action_entry(ps, "1,2", {H, S}, {8, 0}),
        make_action_entry(ps, "1,2", {S, H}, {0, 8}),
        make_action_entry(ps, "1,2", {S, S}, {100, 100}),
    };
    return std::make_shared<GameSpec>(
        ps, std::move(actions), std::move(entries), std::vector<Rat>{0, 0}, "staghare",
        std::vector<std::string>{
            "Expanded stag-and-hare game: the (100,100) joint stag hunt needs k=2."});
}

}  // namespace

bool is_fixture_name(const std::string& name) {
    return name == "dinner" || name == "lunch" || name == "bos" || name == "staghare";
}

std::shared_ptr<const GameSpec> fixture(const std::string& name,
                                        const FixtureParams& params) {
    if (name == "dinner") return dinner_fixture();
    if (name == "lunch") return lunch_fixture(params.lunch_two_pair);
    if (name == "bos") {
        if (params.epsilon < 0) throw DomainError("bos fixture needs epsilon >= 0");
        return bos_fixture(params.epsilon, params.zero_miscoordination);
    }
    if (name == "staghare") return staghare_fixture();
    throw DomainError("unknown fixture '" + name + "'");
}

namespace {

MixedProfile profile_from_entries(
    const Game& game,
    const std::vector<std::vector<std::pair<Strategy, Rat>>>& entries) {
    std::vector<std::vector<Rat>> probs(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
        probs[i].assign(game.num_strategies(i), Rat(0));
        for (const auto& [strategy, prob] : entries[i]) {
            const auto& set = game.strategies(i);
            auto it = std::find(set.begin(), set.end(), strategy);
            if (it == set.end()) throw DomainError("reference strategy missing from game");
            probs[i][it - set.begin()] += prob;
        }
    }
    return MixedProfile(game, std::move(probs));
}

Strategy strategy_of(const Game& game, const std::string& partition, int action = 0) {
    Partition p = parse_partition(partition, game.spec().players());
    int idx = game.partition_index(p);
    if (idx < 0) throw DomainError("reference partition outside the game family");
    return Strategy{idx, action};
}

}  // namespace

std::optional<MixedProfile> fixture_reference_profile(const std::string& name,
                                                      const Game& game,
                                                      const FixtureParams& params) {
    const Rat half(1, 2), third(1, 3);
    if (name == "dinner") {
        if (game.k() < 2) return std::nullopt;
        Strategy row1 = strategy_of(game, "A,B|C1|C2");
        Strategy row2 = strategy_of(game, "A,B|C1,C2");
        return profile_from_entries(game, {{{row1, half}, {row2, half}},
                                           {{row1, half}, {row2, half}},
                                           {{row2, Rat(1)}},
                                           {{row2, Rat(1)}}});
    }
    if (name == "lunch") {
        if (game.k() < 2) return std::nullopt;
        auto pairs = [&](const std::string& a, const std::string& b,
                         const std::string& c) {
            return std::vector<std::pair<Strategy, Rat>>{
                {strategy_of(game, a), third},
                {strategy_of(game, b), third},
                {strategy_of(game, c), third}};
        };
        return profile_from_entries(
            game, {pairs("A,B|C|D", "A,C|B|D", "A,D|B|C"),
                   pairs("A,B|C|D", "A|B,C|D", "A|B,D|C"),
                   pairs("A,C|B|D", "A|B,C|D", "A|B|C,D"),
                   pairs("A,D|B|C", "A|B,D|C", "A|B|C,D")});
    }
    if (name == "staghare") {
        const int H = 0, S = 1;
        if (game.k() == 1) {
            Strategy sep_hare = strategy_of(game, "1|2", H);
            return profile_from_entries(game, {{{sep_hare, Rat(1)}}, {{sep_hare, Rat(1)}}});
        }
        Strategy joint_stag = strategy_of(game, "1,2", S);
        return profile_from_entries(game, {{{joint_stag, Rat(1)}}, {{joint_stag, Rat(1)}}});
    }
    if (name == "bos") {
        const int B = 0, O = 1;
        std::string partition = game.k() == 1 ? "1|2" : "1,2";
        Strategy b1 = strategy_of(game, partition, B), o1 = strategy_of(game, partition, O);
        Rat p1B, p2B;
        if (game.k() >= 2 && params.zero_miscoordination) {
            const Rat& e = params.epsilon;
            p1B = (2 + e) / (3 + 2 * e);
            p2B = (1 + e) / (3 + 2 * e);
        } else {
            p1B = Rat(2, 3);
            p2B = Rat(1, 3);
        }
        return profile_from_entries(game, {{{b1, p1B}, {o1, 1 - p1B}},
                                           {{b1, p2B}, {o1, 1 - p2B}}});
    }
    return std::nullopt;
}

MixedProfile parse_profile(const std::string& text, const Game& game) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("profile") || !doc["profile"].is_object())
        throw ValidationError("profile document must contain a 'profile' object");
    reject_unknown_keys(doc, {"profile"}, "document");
    const PlayerSet& ps = game.spec().players();
    std::vector<std::vector<Rat>> probs(game.num_players());
    for (int i = 0; i < game.num_players(); ++i)
        probs[i].assign(game.num_strategies(i), Rat(0));
    for (const auto& [label, list] : doc["profile"].items()) {
        int player = ps.index_of(label);
        if (player < 0) throw ValidationError("profile: unknown player '" + label + "'");
        if (!list.is_array())
            throw ValidationError("profile." + label + ": must be an array");
        for (const auto& item : list) {
            reject_unknown_keys(item, {"partition", "action", "prob"}, "profile." + label);
            if (!item.contains("partition") || !item.contains("prob"))
                throw ValidationError("profile." + label +
                                      ": entries need 'partition' and 'prob'");
            Partition p;
            try {
                p = parse_partition(item["partition"].get<std::string>(), ps);
            } catch (const ParseError& pe) {
                throw ValidationError("profile." + label + ": " + pe.what());
            }
            int pidx = game.partition_index(p);
            if (pidx < 0)
                throw ValidationError("profile." + label +
                                      ": partition outside the game's family");
            int action = 0;
            if (item.contains("action")) {
                const auto& list_a = game.spec().actions(player);
                auto it = std::find(list_a.begin(), list_a.end(),
                                    item["action"].get<std::string>());
                if (it == list_a.end())
                    throw ValidationError("profile." + label + ": unknown action");
                action = static_cast<int>(it - list_a.begin());
            }
            Rat prob = parse_rat_value(item["prob"], "profile." + label + ".prob");
            const auto& set = game.strategies(player);
            auto it = std::find(set.begin(), set.end(), Strategy{pidx, action});
            if (it == set.end())
                throw ValidationError("profile." + label +
                                      ": strategy outside the player's strategy set");
            probs[player][it - set.begin()] += prob;
        }
    }
    return MixedProfile(game, std::move(probs));
}

std::string serialize_profile(const Game& game, const MixedProfile& m) {
    json profile = json::object();
    const PlayerSet& ps = game.spec().players();
    for (int i = 0; i < game.num_players(); ++i) {
        json list = json::array();
        for (int s : m.support(i)) {
            const Strategy& st = game.strategies(i)[s];
            json item;
            item["partition"] = canonical_string(game.partitions()[st.partition], ps);
            if (game.spec().num_actions(i) > 1 || game.spec().actions(i)[0] != "-")
                item["action"] = game.spec().actions(i)[st.action];
            item["prob"] = rat_to_string(m.probs(i)[s]);
            list.push_back(std::move(item));
        }
        profile[ps.label(i)] = std::move(list);
    }
    json doc;
    doc["profile"] = std::move(profile);
    return doc.dump(2) + "\n";
}

}  // namespace coalgame
