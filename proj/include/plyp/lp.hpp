#pragma once

#include <vector>

#include "plyp/rational.hpp"

namespace plyp {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    RVec x;
    Rat value;
};

// min c.z subject to A z = b, z >= 0. Exact two-phase simplex, Bland's rule.
LPSolution solve_standard(const RMat& a, const RVec& b, const RVec& c);

enum class Rel { Ge, Eq };

struct Constraint {
    RVec a;
    Rat b;
    Rel rel = Rel::Ge;  // a.x >= b  or  a.x == b
};

// max c.x over free x in R^n subject to the constraints.
LPSolution lp_maximize(int n, const std::vector<Constraint>& cons, const RVec& c);

// Any point satisfying the constraints.
std::optional<RVec> lp_feasible_point(int n, const std::vector<Constraint>& cons);

}  // namespace plyp
