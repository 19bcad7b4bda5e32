#include "coalgame/linprog.hpp"

#include <cstddef>

#include "coalgame/errors.hpp"

namespace coalgame {

FeasibilityResult lp_feasible(const std::vector<std::vector<Rat>>& A_in,
                              const std::vector<Rat>& b_in) {
    std::size_t m = A_in.size();
    if (b_in.size() != m) throw DomainError("A and b dimension mismatch");
    std::size_t nv = m ? A_in[0].size() : 0;

    // Normalize to b >= 0, then add one artificial per row. Basis starts
    // on the artificials; phase-1 minimizes their sum.
    std::vector<std::vector<Rat>> A = A_in;
    std::vector<Rat> b = b_in;
    std::vector<Rat> row_sign(m, Rat(1));
    for (std::size_t r = 0; r < m; ++r) {
        if (A[r].size() != nv) throw DomainError("ragged constraint matrix");
        if (b[r] < 0) {
            row_sign[r] = -1;
            b[r] = -b[r];
            for (Rat& v : A[r]) v = -v;
        }
    }

    std::size_t total = nv + m;  // structural + artificial columns
    // tableau[r] = row of length total + 1 (rhs last); extra row = cost.
    std::vector<std::vector<Rat>> T(m + 1, std::vector<Rat>(total + 1, Rat(0)));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < nv; ++c) T[r][c] = A[r][c];
        T[r][nv + r] = 1;
        T[r][total] = b[r];
    }
    // Cost row: reduced costs for cost vector (0...0, 1...1) with the
    // artificial basis: z_j - c_j form; start as -sum of constraint rows
    // over structural columns, rhs = -sum b.
    for (std::size_t c = 0; c <= total; ++c) {
        Rat s = 0;
        for (std::size_t r = 0; r < m; ++r) s += T[r][c];
        T[m][c] = -s;
    }
    for (std::size_t r = 0; r < m; ++r) T[m][nv + r] = 0;

    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = nv + r;

    while (true) {
        // Bland: entering column = lowest index with negative reduced cost.
        std::size_t enter = total;
        for (std::size_t c = 0; c < total; ++c) {
            if (T[m][c] < 0) { enter = c; break; }
        }
        if (enter == total) break;  // optimal
        // Ratio test, Bland tie-break on basis index.
        std::size_t leave = m;
        Rat best_ratio = 0;
        for (std::size_t r = 0; r < m; ++r) {
            if (T[r][enter] <= 0) continue;
            Rat ratio = T[r][total] / T[r][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw DomainError("phase-1 objective unbounded; malformed input");
        Rat piv = T[leave][enter];
        for (std::size_t c = 0; c <= total; ++c) T[leave][c] /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            Rat f = T[r][enter];
            for (std::size_t c = 0; c <= total; ++c) T[r][c] -= f * T[leave][c];
        }
        basis[leave] = enter;
    }

    FeasibilityResult out;
    Rat cost = -T[m][total];
    if (cost == 0) {
        out.feasible = true;
        out.point.assign(nv, Rat(0));
        for (std::size_t r = 0; r < m; ++r)
            if (basis[r] < nv) out.point[basis[r]] = T[r][total];
    } else {
        // Duals off the artificial columns: y_r = 1 - redcost(art_r),
        // then undo the row sign normalization.
        out.farkas.assign(m, Rat(0));
        for (std::size_t r = 0; r < m; ++r)
            out.farkas[r] = (Rat(1) - T[m][nv + r]) * row_sign[r];
    }
    return out;
}

}  // namespace coalgame
