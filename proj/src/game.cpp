#include "coalgame/game.hpp"

#include <algorithm>
#include <sstream>

#include "coalgame/errors.hpp"

namespace coalgame {

namespace {

bool actions_match(const std::vector<std::optional<int>>& pattern,
                   const std::vector<int>& profile) {
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (pattern[i] && *pattern[i] != profile[i]) return false;
    return true;
}

// Odometer over per-position ranges; calls fn for every combination.
template <typename Fn>
void for_each_combo(const std::vector<int>& sizes, Fn&& fn) {
    std::vector<int> idx(sizes.size(), 0);
    while (true) {
        fn(idx);
        std::size_t pos = 0;
        while (pos < sizes.size()) {
            if (++idx[pos] < sizes[pos]) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == sizes.size()) return;
    }
}

}  // namespace

GameSpec::GameSpec(PlayerSet players, std::vector<std::vector<std::string>> actions,
                   std::vector<PayoffEntry> entries, std::vector<Rat> default_payoff,
                   std::string name, std::vector<std::string> notes)
    : players_(std::move(players)),
      actions_(std::move(actions)),
      entries_(std::move(entries)),
      default_payoff_(std::move(default_payoff)),
      name_(std::move(name)),
      notes_(std::move(notes)) {
    if (actions_.empty()) actions_.assign(players_.size(), {"-"});
    validate();
}

void GameSpec::validate() const {
    std::vector<std::string> problems;
    int n = players_.size();
    if (static_cast<int>(actions_.size()) != n)
        throw ValidationError("action lists must cover every player");
    for (int i = 0; i < n; ++i) {
        if (actions_[i].empty())
            problems.push_back("player " + players_.label(i) + " has an empty action list");
        std::vector<std::string> sorted = actions_[i];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            problems.push_back("player " + players_.label(i) + " has duplicate actions");
    }
    if (static_cast<int>(default_payoff_.size()) != n)
        problems.push_back("default payoff vector has wrong length");
    for (std::size_t e = 0; e < entries_.size(); ++e) {
        const auto& entry = entries_[e];
        if (static_cast<int>(entry.payoffs.size()) != n)
            problems.push_back("entry " + std::to_string(e) + ": payoff vector has wrong length");
        if (entry.partition && entry.partition->num_players() != n)
            problems.push_back("entry " + std::to_string(e) + ": partition over wrong player set");
        if (entry.actions) {
            if (static_cast<int>(entry.actions->size()) != n) {
                problems.push_back("entry " + std::to_string(e) + ": action pattern has wrong length");
            } else {
                for (int i = 0; i < n; ++i) {
                    const auto& a = (*entry.actions)[i];
                    if (a && (*a < 0 || *a >= num_actions(i)))
                        problems.push_back("entry " + std::to_string(e) +
                                           ": unknown action for player " + players_.label(i));
                }
            }
        }
    }
    if (problems.empty() && n <= 10) {
        // Overlap check by enumeration: at most one concrete and one
        // wildcard entry may match any (partition, action profile) pair.
        std::vector<int> sizes;
        long long combos = 1;
        for (int i = 0; i < n; ++i) {
            sizes.push_back(num_actions(i));
            combos *= num_actions(i);
        }
        if (combos <= 4096) {
            for (const auto& p : enumerate_partitions(n, n)) {
                for_each_combo(sizes, [&](const std::vector<int>& ap) {
                    int concrete = 0, wildcard = 0;
                    for (const auto& entry : entries_) {
                        if (entry.partition && !(*entry.partition == p)) continue;
                        if (entry.actions && !actions_match(*entry.actions, ap)) continue;
                        (entry.partition ? concrete : wildcard)++;
                    }
                    if (concrete > 1 || wildcard > 1)
                        problems.push_back("overlapping payoff entries at partition " +
                                           canonical_string(p, players_));
                });
                if (!problems.empty()) break;
            }
        }
    }
    if (!problems.empty()) {
        std::string msg = "invalid game spec:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ValidationError(msg);
    }
}

const std::vector<Rat>& GameSpec::payoff(const Partition& realized,
                                         const std::vector<int>& action_profile) const {
    const PayoffEntry* wildcard_hit = nullptr;
    for (const auto& entry : entries_) {
        if (entry.actions && !actions_match(*entry.actions, action_profile)) continue;
        if (entry.partition) {
            if (*entry.partition == realized) return entry.payoffs;
        } else if (!wildcard_hit) {
            wildcard_hit = &entry;
        }
    }
    if (wildcard_hit) return wildcard_hit->payoffs;
    return default_payoff_;
}

MixedProfile::MixedProfile(const Game& game, std::vector<std::vector<Rat>> probs)
    : probs_(std::move(probs)) {
    int n = game.num_players();
    if (static_cast<int>(probs_.size()) != n)
        throw ValidationError("mixed profile must cover every player");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(probs_[i].size()) != game.num_strategies(i))
            throw ValidationError("mixed profile has wrong strategy count for player " +
                                  game.spec().players().label(i));
        Rat sum = 0;
        bool has_support = false;
        for (const Rat& p : probs_[i]) {
            if (p < 0) throw ValidationError("negative probability in mixed profile");
            if (p > 0) has_support = true;
            sum += p;
        }
        if (sum != 1) throw ValidationError("probabilities of player " +
                                            game.spec().players().label(i) + " do not sum to 1");
        if (!has_support) throw ValidationError("empty support in mixed profile");
    }
}

MixedProfile MixedProfile::degenerate(const Game& game, const PureProfile& profile) {
    std::vector<std::vector<Rat>> probs(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
        const auto& set = game.strategies(i);
        auto it = std::find(set.begin(), set.end(), profile[i]);
        if (it == set.end()) throw DomainError("strategy outside the player's strategy set");
        probs[i].assign(set.size(), Rat(0));
        probs[i][it - set.begin()] = 1;
    }
    return MixedProfile(game, std::move(probs));
}

std::vector<int> MixedProfile::support(int player) const {
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(probs_[player].size()); ++s)
        if (probs_[player][s] > 0) out.push_back(s);
    return out;
}

int Game::partition_index(const Partition& p) const {
    auto it = partition_index_.find(p);
    return it == partition_index_.end() ? -1 : it->second;
}

Mask Game::desired_block(int player, const Strategy& s) const {
    return partitions_[s.partition].block_of(player);
}

std::string Game::strategy_string(int player, const Strategy& s) const {
    std::string out = canonical_string(partitions_[s.partition], spec_->players());
    if (spec_->num_actions(player) > 1 || spec_->actions(player)[0] != "-")
        out = "(" + out + "; " + spec_->actions(player)[s.action] + ")";
    return out;
}

Game Game::restricted(std::vector<std::vector<Strategy>> strategy_sets) const {
    Game g = *this;
    g.strategy_sets_ = std::move(strategy_sets);
    for (int i = 0; i < num_players(); ++i)
        if (g.strategy_sets_[i].empty())
            throw ValidationError("restricted game would leave a player without strategies");
    return g;
}

Game build_game(std::shared_ptr<const GameSpec> spec, int k) {
    if (!spec) throw DomainError("null game spec");
    int n = spec->num_players();
    if (k < 1 || k > n) throw DomainError("max coalition size must satisfy 1 <= k <= n");
    Game g;
    g.spec_ = std::move(spec);
    g.k_ = k;
    g.partitions_ = enumerate_partitions(n, k);
    for (int p = 0; p < static_cast<int>(g.partitions_.size()); ++p)
        g.partition_index_[g.partitions_[p]] = p;
    g.strategy_sets_.resize(n);
    for (int i = 0; i < n; ++i)
        for (int p = 0; p < static_cast<int>(g.partitions_.size()); ++p)
            for (int a = 0; a < g.spec_->num_actions(i); ++a)
                g.strategy_sets_[i].push_back(Strategy{p, a});
    return g;
}

Partition formation_rule(const Game& game, const PureProfile& profile) {
    int n = game.num_players();
    if (static_cast<int>(profile.size()) != n)
        throw DomainError("profile must have one strategy per player");
    std::vector<Mask> desired(n);
    for (int i = 0; i < n; ++i) desired[i] = game.desired_block(i, profile[i]);
    std::vector<Mask> blocks;
    Mask placed = 0;
    for (int i = 0; i < n; ++i) {
        if (mask_contains(placed, i)) continue;
        Mask b = desired[i];
        bool unanimous = mask_size(b) >= 2;
        if (unanimous)
            for (int j : mask_members(b))
                if (desired[j] != b) { unanimous = false; break; }
        if (unanimous) {
            blocks.push_back(b);
            placed |= b;
        } else {
            blocks.push_back(1ull << i);
            placed |= 1ull << i;
        }
    }
    return Partition::from_blocks(std::move(blocks), n);
}

std::vector<Rat> outcome_payoff(const Game& game, const PureProfile& profile) {
    Partition realized = formation_rule(game, profile);
    std::vector<int> actions(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) actions[i] = profile[i].action;
    return game.spec().payoff(realized, actions);
}

namespace {

// Iterates the product of the per-player supports; fn(profile, prob).
template <typename Fn>
void for_each_support_profile(const Game& game, const MixedProfile& m, Fn&& fn) {
    int n = game.num_players();
    std::vector<std::vector<int>> supports(n);
    for (int i = 0; i < n; ++i) supports[i] = m.support(i);
    std::vector<int> sizes(n);
    for (int i = 0; i < n; ++i) sizes[i] = static_cast<int>(supports[i].size());
    PureProfile profile(n);
    for_each_combo(sizes, [&](const std::vector<int>& idx) {
        Rat prob = 1;
        for (int i = 0; i < n; ++i) {
            int s = supports[i][idx[i]];
            profile[i] = game.strategies(i)[s];
            prob *= m.probs(i)[s];
        }
        fn(profile, prob);
    });
}

}  // namespace

std::vector<Rat> expected_payoff(const Game& game, const MixedProfile& m) {
    std::vector<Rat> total(game.num_players(), Rat(0));
    for_each_support_profile(game, m, [&](const PureProfile& profile, const Rat& prob) {
        const auto u = outcome_payoff(game, profile);
        for (int i = 0; i < game.num_players(); ++i) total[i] += prob * u[i];
    });
    return total;
}

Rat expected_payoff_deviating(const Game& game, const MixedProfile& m, int player,
                              const Strategy& deviation) {
    int n = game.num_players();
    std::vector<std::vector<int>> supports(n);
    std::vector<int> sizes(n);
    for (int i = 0; i < n; ++i) {
        supports[i] = (i == player) ? std::vector<int>{0} : m.support(i);
        sizes[i] = static_cast<int>(supports[i].size());
    }
    Rat total = 0;
    PureProfile profile(n);
    for_each_combo(sizes, [&](const std::vector<int>& idx) {
        Rat prob = 1;
        for (int i = 0; i < n; ++i) {
            if (i == player) {
                profile[i] = deviation;
            } else {
                int s = supports[i][idx[i]];
                profile[i] = game.strategies(i)[s];
                prob *= m.probs(i)[s];
            }
        }
        total += prob * outcome_payoff(game, profile)[player];
    });
    return total;
}

std::map<Partition, Rat> realized_distribution(const Game& game, const MixedProfile& m) {
    std::map<Partition, Rat> out;
    for_each_support_profile(game, m, [&](const PureProfile& profile, const Rat& prob) {
        out[formation_rule(game, profile)] += prob;
    });
    return out;
}

std::vector<Game> nested_family(std::shared_ptr<const GameSpec> spec) {
    std::vector<Game> out;
    int n = spec->num_players();
    for (int k = 1; k <= n; ++k) out.push_back(build_game(spec, k));
    return out;
}

std::vector<std::vector<int>> quotient_strategies(const Game& game, int player) {
    std::map<std::pair<Mask, int>, std::vector<int>> classes;
    const auto& set = game.strategies(player);
    for (int s = 0; s < static_cast<int>(set.size()); ++s) {
        Mask own = game.desired_block(player, set[s]);
        classes[{own, set[s].action}].push_back(s);
    }
    std::vector<std::vector<int>> out;
    out.reserve(classes.size());
    for (auto& [key, members] : classes) out.push_back(std::move(members));
    return out;
}

MixedProfile embed_profile(const Game& from, const Game& to, const MixedProfile& m) {
    if (!(from.spec().players() == to.spec().players()))
        throw DomainError("cannot embed a profile across different player sets");
    int n = from.num_players();
    std::vector<std::vector<Rat>> probs(n);
    for (int i = 0; i < n; ++i) {
        probs[i].assign(to.num_strategies(i), Rat(0));
        for (int s : m.support(i)) {
            const Strategy& src = from.strategies(i)[s];
            const Partition& p = from.partitions()[src.partition];
            int tp = to.partition_index(p);
            if (tp < 0)
                throw DomainError("support partition outside the target game's family");
            Strategy target{tp, src.action};
            const auto& set = to.strategies(i);
            auto it = std::find(set.begin(), set.end(), target);
            if (it == set.end())
                throw DomainError("support strategy missing from the target game");
            probs[i][it - set.begin()] += m.probs(i)[s];
        }
    }
    return MixedProfile(to, std::move(probs));
}

}  // namespace coalgame
