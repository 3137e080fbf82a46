#include "descent/lp.hpp"

#include <algorithm>

namespace descent {

namespace {

struct Tableau {
    std::vector<QVector> rows;  // constraint rows, last entry is the right hand side
    std::vector<std::size_t> basis;
    std::size_t ncols = 0;      // structural columns (without rhs)
};

void pivot(Tableau& t, std::size_t pr, std::size_t pc) {
    QVector& prow = t.rows[pr];
    Rational inv = 1 / prow[pc];
    for (auto& x : prow) x *= inv;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (r == pr || t.rows[r][pc] == 0) continue;
        Rational f = t.rows[r][pc];
        for (std::size_t c = 0; c <= t.ncols; ++c)
            if (prow[c] != 0) t.rows[r][c] -= f * prow[c];
    }
    t.basis[pr] = pc;
}

// minimize cost . y over the tableau; allowed marks columns that may enter
LpStatus run_simplex(Tableau& t, const QVector& cost, const std::vector<bool>& allowed) {
    while (true) {
        std::size_t enter = t.ncols;
        for (std::size_t j = 0; j < t.ncols && enter == t.ncols; ++j) {
            if (!allowed[j]) continue;
            Rational d = cost[j];
            for (std::size_t r = 0; r < t.rows.size(); ++r)
                if (t.rows[r][j] != 0) d -= cost[t.basis[r]] * t.rows[r][j];
            if (d < 0) enter = j;
        }
        if (enter == t.ncols) return LpStatus::optimal;
        std::size_t leave = t.rows.size();
        Rational best;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (t.rows[r][enter] <= 0) continue;
            Rational ratio = t.rows[r][t.ncols] / t.rows[r][enter];
            if (leave == t.rows.size() || ratio < best || (ratio == best && t.basis[r] < t.basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == t.rows.size()) return LpStatus::unbounded;
        pivot(t, leave, enter);
    }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.nvars;
    const std::size_t mle = lp.a_le.size();
    const std::size_t meq = lp.a_eq.size();
    const std::size_t m = mle + meq;
    // columns: p (n), q (n), slacks (mle), artificials (m)
    const std::size_t art0 = 2 * n + mle;
    Tableau t;
    t.ncols = art0 + m;
    t.rows.assign(m, QVector(t.ncols + 1, Rational(0)));
    t.basis.assign(m, 0);
    for (std::size_t r = 0; r < m; ++r) {
        const QVector& a = r < mle ? lp.a_le[r] : lp.a_eq[r - mle];
        Rational b = r < mle ? lp.b_le[r] : lp.b_eq[r - mle];
        QVector& row = t.rows[r];
        for (std::size_t k = 0; k < n; ++k) {
            row[k] = a[k];
            row[n + k] = -a[k];
        }
        if (r < mle) row[2 * n + r] = 1;
        row[t.ncols] = b;
        if (b < 0)
            for (auto& x : row) x = -x;
        row[art0 + r] = 1;
        t.basis[r] = art0 + r;
    }
    QVector cost1(t.ncols, Rational(0));
    for (std::size_t r = 0; r < m; ++r) cost1[art0 + r] = 1;
    std::vector<bool> allowed(t.ncols, true);
    run_simplex(t, cost1, allowed);
    Rational infeas = 0;
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis[r] >= art0) infeas += t.rows[r][t.ncols];
    LpResult res;
    if (infeas != 0) {
        res.status = LpStatus::infeasible;
        return res;
    }
    // drive artificials out of the basis, dropping redundant rows
    for (std::size_t r = 0; r < t.rows.size();) {
        if (t.basis[r] < art0) {
            ++r;
            continue;
        }
        std::size_t c = 0;
        while (c < art0 && t.rows[r][c] == 0) ++c;
        if (c < art0) {
            pivot(t, r, c);
            ++r;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<long>(r));
            t.basis.erase(t.basis.begin() + static_cast<long>(r));
        }
    }
    for (std::size_t c = art0; c < t.ncols; ++c) allowed[c] = false;
    QVector cost2(t.ncols, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        cost2[k] = -lp.objective[k];
        cost2[n + k] = lp.objective[k];
    }
    LpStatus st = run_simplex(t, cost2, allowed);
    res.status = st;
    if (st != LpStatus::optimal) return res;
    QVector y(t.ncols, Rational(0));
    for (std::size_t r = 0; r < t.rows.size(); ++r) y[t.basis[r]] = t.rows[r][t.ncols];
    res.x.assign(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) res.x[k] = y[k] - y[n + k];
    res.value = dot(lp.objective, res.x);
    return res;
}

bool lp_feasible(LinearProgram lp) {
    lp.objective.assign(lp.nvars, Rational(0));
    return solve_lp(lp).status != LpStatus::infeasible;
}

}  // namespace descent
