#include "coalgame/cooperative.hpp"

#include <algorithm>
#include <numeric>

#include "coalgame/errors.hpp"
#include "coalgame/linprog.hpp"

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

}  // namespace

const Rat& CharacteristicFunction::value(Mask coalition) const {
    auto it = values.find(coalition);
    if (it == values.end()) throw DomainError("characteristic function is not total");
    return it->second;
}

CharacteristicFunction extract_characteristic(const GameSpec& spec,
                                              ValueConvention convention) {
    int n = spec.num_players();
    if (n > 12) throw ResourceError("characteristic extraction limited to 12 players");
    std::vector<int> action_sizes(n);
    long long combos = 1;
    for (int i = 0; i < n; ++i) {
        action_sizes[i] = spec.num_actions(i);
        combos *= action_sizes[i];
    }
    if (combos > 4096) throw ResourceError("too many action profiles for extraction");

    CharacteristicFunction cf{spec.players(), convention, {}};
    auto partitions = enumerate_partitions(n, n);
    Mask full = spec.players().full_mask();
    for (Mask s = 1; s <= full; ++s) {
        std::optional<Rat> best;
        for (const auto& p : partitions) {
            if (!p.contains_block(s)) continue;
            for_each_combo(action_sizes, [&](const std::vector<int>& actions) {
                const auto& u = spec.payoff(p, actions);
                Rat total = 0;
                for (int i : mask_members(s)) total += u[i];
                if (!best ||
                    (convention == ValueConvention::kOptimistic ? total > *best
                                                                : total < *best))
                    best = total;
            });
        }
        cf.values[s] = *best;
        if (s == full) break;  // avoid wraparound at 64 players
    }
    return cf;
}

CoreResult core_empty(const CharacteristicFunction& cf) {
    int n = cf.players.size();
    if (n > 6) throw ResourceError("exact core check limited to 6 players");
    Mask full = cf.players.full_mask();

    // Feasibility of  { x : x(N) = v(N), x(S) >= v(S) }  in standard
    // form: x_i = p_i - q_i, proper-coalition rows get slacks.
    std::vector<Mask> proper;
    for (Mask s = 1; s < full; ++s) proper.push_back(s);
    std::size_t m = 1 + proper.size();
    std::size_t cols = 2 * n + proper.size();
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(cols, Rat(0)));
    std::vector<Rat> b(m);
    for (int i = 0; i < n; ++i) {
        A[0][i] = 1;
        A[0][n + i] = -1;
    }
    b[0] = cf.value(full);
    for (std::size_t r = 0; r < proper.size(); ++r) {
        for (int i : mask_members(proper[r])) {
            A[r + 1][i] = 1;
            A[r + 1][n + i] = -1;
        }
        A[r + 1][2 * n + r] = -1;  // x(S) - slack = v(S), slack >= 0
        b[r + 1] = cf.value(proper[r]);
    }

    auto lp = lp_feasible(A, b);
    CoreResult out;
    if (lp.feasible) {
        out.empty = false;
        std::vector<Rat> x(n);
        for (int i = 0; i < n; ++i) x[i] = lp.point[i] - lp.point[n + i];
        out.core_point = std::move(x);
        return out;
    }
    out.empty = true;
    // Farkas duals: y_0 for the efficiency row, y_S >= 0 for coalition
    // rows with sum_{S ∋ i} y_S = -y_0 for every i. Normalizing by
    // c = -y_0 > 0 gives the balanced collection.
    Rat c = -lp.farkas[0];
    if (c <= 0) throw DomainError("unexpected certificate normalization");
    std::map<Mask, Rat> weights;
    for (std::size_t r = 0; r < proper.size(); ++r) {
        Rat w = lp.farkas[r + 1] / c;
        if (w != 0) weights[proper[r]] = w;
    }
    out.balanced_weights = std::move(weights);
    return out;
}

std::vector<Rat> shapley_value(const CharacteristicFunction& cf) {
    int n = cf.players.size();
    if (n > 10) throw ResourceError("Shapley permutation sum limited to 10 players");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Rat> total(n, Rat(0));
    BigInt count = 0;
    do {
        Mask prefix = 0;
        Rat prev = 0;  // v(empty) = 0
        for (int i : order) {
            prefix |= (1ull << i);
            const Rat& now = cf.value(prefix);
            total[i] += now - prev;
            prev = now;
        }
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    for (Rat& v : total) v /= Rat(count);
    return total;
}

}  // namespace coalgame
