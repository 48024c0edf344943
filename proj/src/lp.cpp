#include "plyp/lp.hpp"

#include "plyp/error.hpp"

namespace plyp {

namespace {

struct Tableau {
    int m = 0, ncol = 0;  // ncol excludes rhs
    std::vector<RVec> t;  // m rows, ncol + 1 entries
    RVec obj;             // reduced costs, obj[ncol] = -(objective value)
    std::vector<int> basis;
    std::vector<bool> active;

    void pivot(int r, int c) {
        Rat p = t[r][c];
        RVec& pr = t[r];
        for (int j = 0; j <= ncol; ++j)
            if (sgn(pr[j]) != 0) pr[j] /= p;
        std::vector<int> nz;
        for (int j = 0; j <= ncol; ++j)
            if (sgn(pr[j]) != 0) nz.push_back(j);
        for (int i = 0; i < m; ++i) {
            if (i == r || sgn(t[i][c]) == 0) continue;
            Rat f = t[i][c];
            for (int j : nz) t[i][j] -= f * pr[j];
        }
        if (sgn(obj[c]) != 0) {
            Rat f = obj[c];
            for (int j : nz) obj[j] -= f * pr[j];
        }
        basis[r] = c;
    }

    // Returns false when unbounded. Columns >= limit never enter.
    bool run(int limit) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < limit; ++j)
                if (sgn(obj[j]) < 0) { enter = j; break; }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (int i = 0; i < m; ++i) {
                if (!active[i] || sgn(t[i][enter]) <= 0) continue;
                Rat ratio = t[i][ncol] / t[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LPSolution solve_standard(const RMat& a, const RVec& b, const RVec& c) {
    int m = static_cast<int>(a.size());
    int n = static_cast<int>(c.size());
    Tableau T;
    T.m = m;
    T.ncol = n + m;
    T.t.assign(m, RVec(T.ncol + 1, Rat(0)));
    T.basis.resize(m);
    T.active.assign(m, true);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(a[i].size()) != n) fail(ErrorCode::DimensionMismatch, "lp row size");
        bool flip = sgn(b[i]) < 0;
        for (int j = 0; j < n; ++j) T.t[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
        T.t[i][n + i] = 1;
        T.t[i][T.ncol] = flip ? Rat(-b[i]) : b[i];
        T.basis[i] = n + i;
    }
    // Phase 1: minimize the sum of artificials.
    T.obj.assign(T.ncol + 1, Rat(0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= T.ncol; ++j)
            if (j < n || j == T.ncol) T.obj[j] -= T.t[i][j];
    T.run(n);
    LPSolution sol;
    if (sgn(T.obj[T.ncol]) != 0) {
        sol.status = LPStatus::Infeasible;
        return sol;
    }
    for (int i = 0; i < m; ++i) {
        if (T.basis[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (sgn(T.t[i][j]) != 0) { col = j; break; }
        if (col >= 0)
            T.pivot(i, col);
        else
            T.active[i] = false;
    }
    // Phase 2.
    T.obj.assign(T.ncol + 1, Rat(0));
    for (int j = 0; j < n; ++j) T.obj[j] = c[j];
    for (int i = 0; i < m; ++i) {
        if (!T.active[i]) continue;
        int bj = T.basis[i];
        if (bj >= n || sgn(c[bj]) == 0) continue;
        Rat f = c[bj];
        for (int j = 0; j <= T.ncol; ++j)
            if (sgn(T.t[i][j]) != 0) T.obj[j] -= f * T.t[i][j];
    }
    if (!T.run(n)) {
        sol.status = LPStatus::Unbounded;
        return sol;
    }
    sol.status = LPStatus::Optimal;
    sol.x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (T.active[i] && T.basis[i] < n) sol.x[T.basis[i]] = T.t[i][T.ncol];
    sol.value = -T.obj[T.ncol];
    return sol;
}

LPSolution lp_maximize(int n, const std::vector<Constraint>& cons, const RVec& c) {
    int nslack = 0;
    for (const auto& k : cons) {
        if (static_cast<int>(k.a.size()) != n) fail(ErrorCode::DimensionMismatch, "constraint dimension");
        if (k.rel == Rel::Ge) ++nslack;
    }
    int nv = 2 * n + nslack;
    RMat A;
    RVec b;
    int s = 0;
    for (const auto& k : cons) {
        RVec row(nv, Rat(0));
        for (int j = 0; j < n; ++j) {
            row[j] = k.a[j];
            row[n + j] = -k.a[j];
        }
        if (k.rel == Rel::Ge) row[2 * n + s++] = -1;
        A.push_back(std::move(row));
        b.push_back(k.b);
    }
    RVec cs(nv, Rat(0));
    for (int j = 0; j < n; ++j) {
        cs[j] = -c[j];
        cs[n + j] = c[j];
    }
    LPSolution st = solve_standard(A, b, cs);
    LPSolution out;
    out.status = st.status;
    if (st.status != LPStatus::Optimal) return out;
    out.x.assign(n, Rat(0));
    for (int j = 0; j < n; ++j) out.x[j] = st.x[j] - st.x[n + j];
    out.value = -st.value;
    return out;
}

std::optional<RVec> lp_feasible_point(int n, const std::vector<Constraint>& cons) {
    LPSolution s = lp_maximize(n, cons, zeros(n));
    if (s.status != LPStatus::Optimal) return std::nullopt;
    return s.x;
}

}  // namespace plyp
