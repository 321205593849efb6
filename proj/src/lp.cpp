#include "ptopo/lp.hpp"

namespace ptopo {

namespace {

// Dense tableau with an explicit basis. Columns of basic variables are
// kept as unit vectors; the objective row holds reduced costs.
struct Tableau {
    size_t m, n; // constraints, structural+artificial columns
    RatMat rows; // m x (n+1), last column = rhs
    RatVec obj;  // n+1 reduced-cost row, last = -objective value
    std::vector<size_t> basis;

    void pivot(size_t r, size_t c) {
        Rat inv = 1 / rows[r][c];
        for (size_t j = 0; j <= n; ++j) rows[r][j] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[r][j];
        }
        if (obj[c] != 0) {
            Rat f = obj[c];
            for (size_t j = 0; j <= n; ++j) obj[j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    // Bland's rule: entering = lowest-index negative reduced cost,
    // leaving = lowest basic index among ratio-test minimizers.
    LpStatus iterate(size_t col_limit) {
        for (;;) {
            size_t enter = n;
            for (size_t j = 0; j < col_limit; ++j)
                if (obj[j] < 0) { enter = j; break; }
            if (enter == n) return LpStatus::Optimal;
            size_t leave = m;
            Rat best_ratio = 0;
            for (size_t i = 0; i < m; ++i) {
                if (rows[i][enter] <= 0) continue;
                Rat ratio = rows[i][n] / rows[i][enter];
                if (leave == m || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }
};

} // namespace

LpResult lp_solve(const RatMat& a, const RatVec& b, const RatVec& c) {
    size_t m = a.size();
    size_t n = m ? a[0].size() : c.size();
    Tableau t;
    t.m = m;
    t.n = n + m; // artificials appended
    t.rows.assign(m, RatVec(t.n + 1, Rat(0)));
    t.basis.resize(m);
    for (size_t i = 0; i < m; ++i) {
        int sgn = (b[i] < 0) ? -1 : 1;
        for (size_t j = 0; j < n; ++j) t.rows[i][j] = sgn * a[i][j];
        t.rows[i][t.n] = sgn * b[i];
        t.rows[i][n + i] = 1;
        t.basis[i] = n + i;
    }
    // phase 1: minimize the sum of artificials
    t.obj.assign(t.n + 1, Rat(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= t.n; ++j)
            if (j < n || j == t.n) t.obj[j] -= t.rows[i][j];
    LpStatus st = t.iterate(n); // artificials never re-enter
    (void)st;                   // phase 1 objective is bounded below by 0
    if (-t.obj[t.n] != 0) return {LpStatus::Infeasible, {}, 0};

    // drive remaining artificials out of the basis or drop their rows
    for (size_t i = 0; i < t.m;) {
        if (t.basis[i] < n) { ++i; continue; }
        size_t piv = n;
        for (size_t j = 0; j < n; ++j)
            if (t.rows[i][j] != 0) { piv = j; break; }
        if (piv < n) {
            t.pivot(i, piv);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + i);
            t.basis.erase(t.basis.begin() + i);
            --t.m;
        }
    }
    size_t mm = t.m;

    // phase 2 objective: reduced costs of c against the current basis
    t.obj.assign(t.n + 1, Rat(0));
    for (size_t j = 0; j < n; ++j) t.obj[j] = c[j];
    for (size_t i = 0; i < mm; ++i) {
        Rat cb = c[t.basis[i]];
        if (cb == 0) continue;
        for (size_t j = 0; j <= t.n; ++j) t.obj[j] -= cb * t.rows[i][j];
    }
    st = t.iterate(n);
    if (st == LpStatus::Unbounded) return {LpStatus::Unbounded, {}, 0};

    LpResult res;
    res.status = LpStatus::Optimal;
    res.x.assign(n, Rat(0));
    for (size_t i = 0; i < mm; ++i)
        if (t.basis[i] < n) res.x[t.basis[i]] = t.rows[i][t.n];
    res.value = 0;
    for (size_t j = 0; j < n; ++j)
        if (res.x[j] != 0) res.value += c[j] * res.x[j];
    return res;
}

bool lp_feasible(const RatMat& a, const RatVec& b) {
    RatVec c(a.empty() ? 0 : a[0].size(), Rat(0));
    return lp_solve(a, b, c).status == LpStatus::Optimal;
}

bool simplex_pair_meets_in_face(const std::vector<RatPoint>& pa,
                                const std::vector<RatPoint>& pb,
                                const std::vector<RatPoint>& shared) {
    size_t na = pa.size(), nb = pb.size();
    size_t dim = pa[0].size();
    size_t nvars = na + nb;
    // sum lambda_i pa_i - sum mu_j pb_j = 0, sum lambda = 1, sum mu = 1
    RatMat a(dim + 2, RatVec(nvars, Rat(0)));
    RatVec b(dim + 2, Rat(0));
    for (size_t d = 0; d < dim; ++d) {
        for (size_t i = 0; i < na; ++i) a[d][i] = pa[i][d];
        for (size_t j = 0; j < nb; ++j) a[d][na + j] = -pb[j][d];
    }
    for (size_t i = 0; i < na; ++i) a[dim][i] = 1;
    for (size_t j = 0; j < nb; ++j) a[dim + 1][na + j] = 1;
    b[dim] = 1;
    b[dim + 1] = 1;
    if (!lp_feasible(a, b)) return true; // disjoint: common face is empty
    if (shared.empty()) return false;

    // functionals (alpha, beta) with alpha.s + beta = 0 on all shared points
    RatMat cond;
    for (const auto& s : shared) {
        RatVec row = s;
        row.push_back(Rat(1));
        cond.push_back(std::move(row));
    }
    for (const auto& h : nullspace(cond)) {
        // h = (alpha_0..alpha_{dim-1}, beta); optimize over the intersection
        RatVec c(nvars, Rat(0));
        for (size_t i = 0; i < na; ++i) {
            Rat v = h[dim];
            for (size_t d = 0; d < dim; ++d) v += h[d] * pa[i][d];
            c[i] = v;
        }
        LpResult lo = lp_solve(a, b, c);
        if (lo.status != LpStatus::Optimal || lo.value != 0) return false;
        RatVec cneg(nvars, Rat(0));
        for (size_t i = 0; i < na; ++i) cneg[i] = -c[i];
        LpResult hi = lp_solve(a, b, cneg);
        if (hi.status != LpStatus::Optimal || hi.value != 0) return false;
    }
    return true;
}

} // namespace ptopo
