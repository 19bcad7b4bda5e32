#include "coalgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "coalgame/errors.hpp"

namespace coalgame {

namespace {

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

// One representative index per outcome-equivalence class.
std::vector<int> class_representatives(const Game& game, int player) {
    std::vector<int> reps;
    for (const auto& cls : quotient_strategies(game, player)) reps.push_back(cls.front());
    return reps;
}

std::vector<std::vector<int>> sweep_indices(const Game& game, bool reduce) {
    std::vector<std::vector<int>> out(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
        if (reduce) {
            out[i] = class_representatives(game, i);
        } else {
            out[i].resize(game.num_strategies(i));
            for (int s = 0; s < game.num_strategies(i); ++s) out[i][s] = s;
        }
    }
    return out;
}

}  // namespace

Rat regret(const Game& game, const MixedProfile& m, int player) {
    Rat current = expected_payoff(game, m)[player];
    Rat best = current;
    // Equivalent strategies deviate identically; class representatives
    // cover all deviations.
    for (int s : class_representatives(game, player)) {
        Rat u = expected_payoff_deviating(game, m, player, game.strategies(player)[s]);
        if (u > best) best = u;
    }
    return best - current;
}

Rat max_regret(const Game& game, const MixedProfile& m) {
    Rat worst = 0;
    for (int i = 0; i < game.num_players(); ++i) worst = std::max(worst, regret(game, m, i));
    return worst;
}

std::vector<PureProfile> pure_nash(const Game& game, bool reduce, std::uint64_t cap) {
    int n = game.num_players();
    auto indices = sweep_indices(game, reduce);
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= indices[i].size();
        if (total > cap)
            throw ResourceError(
                "pure-profile sweep exceeds the cap of " + std::to_string(cap) +
                " profiles; use the quotient reduction or a smaller k");
    }
    std::vector<int> sizes(n);
    for (int i = 0; i < n; ++i) sizes[i] = static_cast<int>(indices[i].size());

    std::vector<PureProfile> out;
    PureProfile profile(n);
    for_each_combo(sizes, [&](const std::vector<int>& idx) {
        for (int i = 0; i < n; ++i) profile[i] = game.strategies(i)[indices[i][idx[i]]];
        std::vector<Rat> u = outcome_payoff(game, profile);
        for (int i = 0; i < n; ++i) {
            PureProfile dev = profile;
            for (int s : indices[i]) {
                dev[i] = game.strategies(i)[s];
                if (outcome_payoff(game, dev)[i] > u[i]) return;
            }
        }
        out.push_back(profile);
    });
    return out;
}

EliminationResult eliminate_weakly_dominated(const Game& game) {
    EliminationResult result{game, {}};
    int n = game.num_players();
    while (true) {
        const Game& g = result.game;
        // Opponent profiles range over class representatives of the
        // surviving sets; equivalent strategies give identical outcomes.
        EliminationRound round;
        round.removed.resize(n);
        std::vector<std::vector<Strategy>> survivors(n);
        bool removed_any = false;
        for (int i = 0; i < n; ++i) {
            std::vector<std::vector<int>> opp(n);
            std::vector<int> sizes(n);
            for (int j = 0; j < n; ++j) {
                opp[j] = (j == i) ? std::vector<int>{0} : class_representatives(g, j);
                sizes[j] = static_cast<int>(opp[j].size());
            }
            // Payoff rows of every strategy of i against every opponent
            // class profile.
            int num_s = g.num_strategies(i);
            std::vector<std::vector<Rat>> rows(num_s);
            PureProfile profile(n);
            for (int s = 0; s < num_s; ++s) {
                for_each_combo(sizes, [&](const std::vector<int>& idx) {
                    for (int j = 0; j < n; ++j)
                        profile[j] = (j == i) ? g.strategies(i)[s]
                                              : g.strategies(j)[opp[j][idx[j]]];
                    rows[s].push_back(outcome_payoff(g, profile)[i]);
                });
            }
            for (int s = 0; s < num_s; ++s) {
                bool dominated = false;
                for (int t = 0; t < num_s && !dominated; ++t) {
                    if (t == s) continue;
                    bool ge = true, strict = false;
                    for (std::size_t c = 0; c < rows[s].size(); ++c) {
                        if (rows[t][c] < rows[s][c]) { ge = false; break; }
                        if (rows[t][c] > rows[s][c]) strict = true;
                    }
                    dominated = ge && strict;
                }
                if (dominated) {
                    round.removed[i].push_back(g.strategies(i)[s]);
                    removed_any = true;
                } else {
                    survivors[i].push_back(g.strategies(i)[s]);
                }
            }
        }
        if (!removed_any) break;
        result.game = result.game.restricted(std::move(survivors));
        result.trace.push_back(std::move(round));
    }
    return result;
}

namespace {

// Gaussian elimination over rationals; returns the unique solution of
// M x = b or nullopt (singular / inconsistent / underdetermined).
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> M,
                                             std::vector<Rat> b) {
    std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && M[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[r]);
        std::swap(b[piv], b[r]);
        Rat inv = M[r][c];
        for (std::size_t cc = c; cc < cols; ++cc) M[r][cc] /= inv;
        b[r] /= inv;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || M[rr][c] == 0) continue;
            Rat f = M[rr][c];
            for (std::size_t cc = c; cc < cols; ++cc) M[rr][cc] -= f * M[r][cc];
            b[rr] -= f * b[r];
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t rr = r; rr < rows; ++rr)
        if (b[rr] != 0) return std::nullopt;  // inconsistent
    if (pivot_col_of_row.size() != cols) return std::nullopt;  // underdetermined
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
        x[pivot_col_of_row[i]] = b[i];
    return x;
}

// Payoff of (row strategy r, column strategy c) in a 2-player game.
std::vector<Rat> payoff_2p(const Game& game, int r, int c) {
    PureProfile p{game.strategies(0)[r], game.strategies(1)[c]};
    return outcome_payoff(game, p);
}

template <typename Fn>
void for_each_subset(int n, int size, Fn&& fn) {
    std::vector<int> idx(size);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == size) { fn(idx); return; }
        for (int i = start; i <= n - (size - depth); ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

std::vector<MixedEquilibrium> mixed_support_2p(const Game& game, int max_support) {
    if (game.num_players() != 2)
        throw DomainError("support enumeration requires exactly 2 players");
    // Enumerate over quotient classes to keep the support space small.
    std::vector<std::vector<int>> reps{class_representatives(game, 0),
                                       class_representatives(game, 1)};
    for (int i = 0; i < 2; ++i)
        if (static_cast<int>(reps[i].size()) > 30)
            throw ResourceError("more than 30 strategy classes; reduce the game first");
    int cap = std::max(1, max_support);

    std::vector<MixedEquilibrium> found;
    auto try_supports = [&](const std::vector<int>& rs, const std::vector<int>& cs) {
        // Row probabilities x over rs must equalize the column player's
        // payoff across cs; symmetrically for y.
        auto solve_side = [&](const std::vector<int>& own, const std::vector<int>& other,
                              int owner) -> std::optional<std::vector<Rat>> {
            std::size_t m = own.size();
            std::vector<std::vector<Rat>> M;
            std::vector<Rat> b;
            for (std::size_t j = 1; j < other.size(); ++j) {
                std::vector<Rat> row(m);
                for (std::size_t i = 0; i < m; ++i) {
                    auto u0 = owner == 0 ? payoff_2p(game, own[i], other[0])[1]
                                         : payoff_2p(game, other[0], own[i])[0];
                    auto uj = owner == 0 ? payoff_2p(game, own[i], other[j])[1]
                                         : payoff_2p(game, other[j], own[i])[0];
                    row[i] = u0 - uj;
                }
                M.push_back(std::move(row));
                b.push_back(Rat(0));
            }
            M.push_back(std::vector<Rat>(m, Rat(1)));
            b.push_back(Rat(1));
            auto x = solve_linear(std::move(M), std::move(b));
            if (!x) return std::nullopt;
            for (const Rat& v : *x)
                if (v < 0) return std::nullopt;
            return x;
        };
        auto x = solve_side(rs, cs, 0);
        if (!x) return;
        auto y = solve_side(cs, rs, 1);
        if (!y) return;
        std::vector<std::vector<Rat>> probs(2);
        probs[0].assign(game.num_strategies(0), Rat(0));
        probs[1].assign(game.num_strategies(1), Rat(0));
        for (std::size_t i = 0; i < rs.size(); ++i) probs[0][rs[i]] = (*x)[i];
        for (std::size_t j = 0; j < cs.size(); ++j) probs[1][cs[j]] = (*y)[j];
        // Strictly positive supports only; zero entries mean the support
        // pair was not the true one.
        for (int i : rs)
            if (probs[0][i] == 0) return;
        for (int j : cs)
            if (probs[1][j] == 0) return;
        MixedProfile candidate(game, std::move(probs));
        auto verdict = verify_candidate(game, candidate);
        if (!verdict.is_equilibrium) return;
        for (const auto& prior : found)
            if (prior.profile == candidate) return;
        found.push_back(MixedEquilibrium{std::move(candidate), verdict.max_regret,
                                         SolveMethod::kSupportEnum, true});
    };

    int n0 = static_cast<int>(reps[0].size());
    int n1 = static_cast<int>(reps[1].size());
    for (int s0 = 1; s0 <= std::min(cap, n0); ++s0) {
        for (int s1 = 1; s1 <= std::min(cap, n1); ++s1) {
            for_each_subset(n0, s0, [&](const std::vector<int>& ri) {
                std::vector<int> rs(ri.size());
                for (std::size_t i = 0; i < ri.size(); ++i) rs[i] = reps[0][ri[i]];
                for_each_subset(n1, s1, [&](const std::vector<int>& ci) {
                    std::vector<int> cs(ci.size());
                    for (std::size_t j = 0; j < ci.size(); ++j) cs[j] = reps[1][ci[j]];
                    try_supports(rs, cs);
                });
            });
        }
    }
    return found;
}

namespace {

// Squared indifference residual of a support-restricted profile, in
// doubles. Zero exactly at profiles equalizing each player's payoff
// across its support.
struct SupportSystem {
    const Game& game;
    std::vector<std::vector<int>> supports;
    std::vector<int> sizes;
    // payoff[i][flat support combo] for support profiles
    std::vector<std::vector<double>> table;

    explicit SupportSystem(const Game& g, std::vector<std::vector<int>> supp)
        : game(g), supports(std::move(supp)) {
        int n = game.num_players();
        sizes.resize(n);
        for (int i = 0; i < n; ++i) sizes[i] = static_cast<int>(supports[i].size());
        long long combos = 1;
        for (int s : sizes) combos *= s;
        table.assign(n, std::vector<double>(combos));
        PureProfile profile(n);
        long long flat = 0;
        for_each_combo(sizes, [&](const std::vector<int>& idx) {
            for (int i = 0; i < n; ++i)
                profile[i] = game.strategies(i)[supports[i][idx[i]]];
            auto u = outcome_payoff(game, profile);
            for (int i = 0; i < n; ++i) table[i][flat] = rat_to_double(u[i]);
            ++flat;
        });
    }

    // Expected payoff of each support strategy of each player, given
    // probability vectors p (per player over its support).
    std::vector<std::vector<double>> strategy_values(
        const std::vector<std::vector<double>>& p) const {
        int n = game.num_players();
        std::vector<std::vector<double>> values(n);
        for (int i = 0; i < n; ++i) values[i].assign(sizes[i], 0.0);
        long long flat = 0;
        for_each_combo(sizes, [&](const std::vector<int>& idx) {
            double prob = 1.0;
            for (int i = 0; i < n; ++i) prob *= p[i][idx[i]];
            for (int i = 0; i < n; ++i) {
                double others = p[i][idx[i]] > 0 ? prob / p[i][idx[i]] : 0.0;
                if (p[i][idx[i]] == 0.0) {
                    others = 1.0;
                    for (int j = 0; j < n; ++j)
                        if (j != i) others *= p[j][idx[j]];
                }
                values[i][idx[i]] += others * table[i][flat];
            }
            ++flat;
        });
        return values;
    }

    double residual(const std::vector<std::vector<double>>& p) const {
        auto values = strategy_values(p);
        double total = 0;
        for (int i = 0; i < game.num_players(); ++i) {
            double mean = 0;
            for (int s = 0; s < sizes[i]; ++s) mean += p[i][s] * values[i][s];
            for (int s = 0; s < sizes[i]; ++s) {
                double d = values[i][s] - mean;
                total += d * d;
            }
        }
        return total;
    }
};

void project_simplex(std::vector<double>& v) {
    // Euclidean projection onto the probability simplex.
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0, theta = 0;
    int rho = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0) { rho = static_cast<int>(i + 1); theta = t; }
    }
    css = 0;
    (void)rho;
    for (double& x : v) x = std::max(0.0, x - theta);
    double sum = 0;
    for (double x : v) sum += x;
    if (sum <= 0) {
        for (double& x : v) x = 1.0 / static_cast<double>(v.size());
    } else {
        for (double& x : v) x /= sum;
    }
}

}  // namespace

std::optional<MixedEquilibrium> solve_indifference(
    const Game& game, const std::vector<std::vector<int>>& supports, double tol,
    int max_iter) {
    int n = game.num_players();
    if (n < 2) throw DomainError("indifference solving needs at least 2 players");
    if (static_cast<int>(supports.size()) != n)
        throw DomainError("supports must cover every player");
    for (int i = 0; i < n; ++i) {
        if (supports[i].empty()) throw DomainError("empty support for a player");
        for (int s : supports[i])
            if (s < 0 || s >= game.num_strategies(i))
                throw DomainError("support index out of range");
    }

    auto finish = [&](const std::vector<std::vector<Rat>>& support_probs)
        -> std::optional<MixedEquilibrium> {
        std::vector<std::vector<Rat>> probs(n);
        for (int i = 0; i < n; ++i) {
            probs[i].assign(game.num_strategies(i), Rat(0));
            for (std::size_t s = 0; s < supports[i].size(); ++s)
                probs[i][supports[i][s]] = support_probs[i][s];
            for (int s : supports[i])
                if (probs[i][s] == 0) return std::nullopt;  // support must be exact
        }
        MixedProfile profile(game, std::move(probs));
        Rat tolerance = *rational_from_double(tol, 1'000'000'000);
        auto verdict = verify_candidate(game, profile, tolerance);
        if (!verdict.is_equilibrium) return std::nullopt;
        return MixedEquilibrium{std::move(profile), verdict.max_regret,
                                SolveMethod::kIndifferenceSolve,
                                verdict.max_regret == 0};
    };

    // Degenerate supports need no iteration.
    bool all_singleton = true;
    for (int i = 0; i < n; ++i) all_singleton &= supports[i].size() == 1;
    if (all_singleton) {
        std::vector<std::vector<Rat>> probs(n, std::vector<Rat>{Rat(1)});
        return finish(probs);
    }

    // Exact route for 2 players: the indifference system is linear.
    if (n == 2) {
        auto solve_side = [&](int owner) -> std::optional<std::vector<Rat>> {
            const auto& own = supports[owner];
            const auto& other = supports[1 - owner];
            std::vector<std::vector<Rat>> M;
            std::vector<Rat> b;
            for (std::size_t j = 1; j < other.size(); ++j) {
                std::vector<Rat> row(own.size());
                for (std::size_t i = 0; i < own.size(); ++i) {
                    auto at = [&](int so, int st) {
                        PureProfile p(2);
                        p[owner] = game.strategies(owner)[so];
                        p[1 - owner] = game.strategies(1 - owner)[st];
                        return outcome_payoff(game, p)[1 - owner];
                    };
                    row[i] = at(own[i], other[0]) - at(own[i], other[j]);
                }
                M.push_back(std::move(row));
                b.push_back(Rat(0));
            }
            M.push_back(std::vector<Rat>(own.size(), Rat(1)));
            b.push_back(Rat(1));
            auto x = solve_linear(std::move(M), std::move(b));
            if (!x) return std::nullopt;
            for (const Rat& v : *x)
                if (v < 0) return std::nullopt;
            return x;
        };
        auto x = solve_side(0);
        auto y = solve_side(1);
        if (!x || !y) return std::nullopt;
        return finish({*x, *y});
    }

    // n-player route: damped projected gradient descent on the squared
    // indifference residual, then rational snapping and exact
    // re-verification.
    SupportSystem sys(game, supports);
    std::vector<std::vector<double>> p(n);
    for (int i = 0; i < n; ++i)
        p[i].assign(sys.sizes[i], 1.0 / static_cast<double>(sys.sizes[i]));
    double step = 0.1;
    double value = sys.residual(p);
    const double h = 1e-6;
    for (int iter = 0; iter < max_iter && value > 1e-22; ++iter) {
        // Finite-difference gradient.
        std::vector<std::vector<double>> grad(n);
        for (int i = 0; i < n; ++i) {
            grad[i].assign(sys.sizes[i], 0.0);
            for (int s = 0; s < sys.sizes[i]; ++s) {
                auto probe = p;
                probe[i][s] += h;
                grad[i][s] = (sys.residual(probe) - value) / h;
            }
        }
        auto next = p;
        for (int i = 0; i < n; ++i) {
            for (int s = 0; s < sys.sizes[i]; ++s) next[i][s] -= step * grad[i][s];
            project_simplex(next[i]);
        }
        double next_value = sys.residual(next);
        if (next_value < value) {
            p = std::move(next);
            value = next_value;
            step = std::min(step * 1.2, 1.0);
        } else {
            step *= 0.5;
            if (step < 1e-14) break;
        }
    }
    if (value > tol * tol) return std::nullopt;
    // Snap to small-denominator rationals and renormalize exactly.
    std::vector<std::vector<Rat>> support_probs(n);
    for (int i = 0; i < n; ++i) {
        Rat sum = 0;
        for (int s = 0; s < sys.sizes[i]; ++s) {
            auto r = rational_from_double(p[i][s], 1'000'000);
            if (!r || *r < 0) return std::nullopt;
            support_probs[i].push_back(*r);
            sum += *r;
        }
        if (sum == 0) return std::nullopt;
        for (Rat& v : support_probs[i]) v /= sum;
    }
    return finish(support_probs);
}

VerifyResult verify_candidate(const Game& game, const MixedProfile& m,
                              const Rat& tolerance) {
    VerifyResult out;
    out.max_regret = 0;
    for (int i = 0; i < game.num_players(); ++i) {
        Rat r = regret(game, m, i);
        out.per_player_regret.push_back(r);
        out.max_regret = std::max(out.max_regret, r);
    }
    out.is_equilibrium = out.max_regret <= tolerance;
    return out;
}

StrongNashResult strong_nash_check(const Game& game, const PureProfile& profile,
                                   int max_coalition) {
    int n = game.num_players();
    std::vector<Rat> base = outcome_payoff(game, profile);
    StrongNashResult result;
    result.is_strong = true;
    Mask full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    for (Mask coalition = 1; coalition <= full; ++coalition) {
        int size = mask_size(coalition);
        if (size < 1 || size > max_coalition) continue;
        auto members = mask_members(coalition);
        std::vector<int> sizes;
        // Joint deviations over class representatives (sound by
        // outcome equivalence).
        std::vector<std::vector<int>> devs;
        for (int i : members) {
            devs.push_back(class_representatives(game, i));
            sizes.push_back(static_cast<int>(devs.back().size()));
        }
        bool found = false;
        for_each_combo(sizes, [&](const std::vector<int>& idx) {
            if (found) return;
            PureProfile dev = profile;
            for (std::size_t mi = 0; mi < members.size(); ++mi)
                dev[members[mi]] = game.strategies(members[mi])[devs[mi][idx[mi]]];
            auto u = outcome_payoff(game, dev);
            for (int i : members)
                if (u[i] <= base[i]) return;
            found = true;
            result.is_strong = false;
            result.witness = StrongNashWitness{coalition, dev, u};
        });
        if (found) return result;
    }
    return result;
}

std::vector<OutcomeClass> group_outcomes(const Game& game,
                                         const std::vector<PureProfile>& equilibria) {
    std::map<std::pair<Partition, std::vector<Rat>>, std::vector<PureProfile>> groups;
    for (const auto& p : equilibria)
        groups[{formation_rule(game, p), outcome_payoff(game, p)}].push_back(p);
    std::vector<OutcomeClass> out;
    for (auto& [key, profiles] : groups)
        out.push_back(OutcomeClass{key.first, key.second, std::move(profiles)});
    return out;
}

}  // namespace coalgame
