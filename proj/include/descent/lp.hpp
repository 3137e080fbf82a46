#pragma once

#include "descent/linalg.hpp"

namespace descent {

// maximize objective . x  subject to  a_le x <= b_le,  a_eq x == b_eq,  x free
struct LinearProgram {
    std::size_t nvars = 0;
    QMatrix a_le;
    QVector b_le;
    QMatrix a_eq;
    QVector b_eq;
    QVector objective;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    QVector x;
};

// exact two-phase simplex with Bland's rule
LpResult solve_lp(const LinearProgram& lp);

bool lp_feasible(LinearProgram lp);

}  // namespace descent
