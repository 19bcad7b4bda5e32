#ifndef COALGAME_LINPROG_HPP
#define COALGAME_LINPROG_HPP

#include <optional>
#include <vector>

#include "coalgame/rational.hpp"

namespace coalgame {

// Exact feasibility of { z >= 0 : A z = b } by phase-1 simplex with
// Bland's rule. On success `point` holds a feasible z; on infeasibility
// `farkas` holds y with y^T A <= 0 (componentwise) and y^T b > 0.
struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rat> point;
    std::vector<Rat> farkas;
};

FeasibilityResult lp_feasible(const std::vector<std::vector<Rat>>& A,
                              const std::vector<Rat>& b);

}  // namespace coalgame

#endif
