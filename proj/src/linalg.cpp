#include "ptopo/linalg.hpp"

namespace ptopo {

RatMat rat_identity(size_t n) {
    RatMat m(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatVec mat_vec(const RatMat& a, const RatVec& x) {
    RatVec y(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
    return y;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    RatMat c(m, RatVec(n, Rat(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j)
                if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RatMat transpose(const RatMat& a) {
    if (a.empty()) return {};
    RatMat t(a[0].size(), RatVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

RatVec vsub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec vadd(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec vscale(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

namespace {

// Row echelon; returns rank. When det != nullptr the matrix must be
// square and the determinant is accumulated.
size_t echelon(RatMat& a, Rat* det) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    Rat sign = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) { std::swap(a[p], a[r]); sign = -sign; }
        for (size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    if (det) {
        if (r < rows) *det = 0;
        else {
            Rat d = sign;
            for (size_t i = 0; i < rows; ++i) d *= a[i][i];
            *det = d;
        }
    }
    return r;
}

} // namespace

size_t rat_rank(RatMat a) { return echelon(a, nullptr); }

Rat rat_det(RatMat a) {
    if (a.empty()) return Rat(1);
    Rat d;
    echelon(a, &d);
    return d;
}

std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    size_t r = 0;
    std::vector<size_t> pivot_col;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = 1 / a[r][c];
        for (size_t j = c; j <= cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][cols];
    return x;
}

std::vector<RatVec> nullspace(RatMat a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    size_t r = 0;
    std::vector<long> pivot_of_col(cols, -1);
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = 1 / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    std::vector<RatVec> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        RatVec v(cols, Rat(0));
        v[c] = 1;
        for (size_t cc = 0; cc < cols; ++cc)
            if (pivot_of_col[cc] >= 0) v[cc] = -a[static_cast<size_t>(pivot_of_col[cc])][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

size_t affine_rank(const std::vector<RatPoint>& pts) {
    if (pts.size() <= 1) return 0;
    RatMat edges;
    for (size_t i = 1; i < pts.size(); ++i) edges.push_back(vsub(pts[i], pts[0]));
    return rat_rank(edges);
}

RatMat edge_gram(const std::vector<RatPoint>& pts) {
    size_t k = pts.size() - 1;
    RatMat g(k, RatVec(k));
    std::vector<RatVec> e;
    for (size_t i = 1; i < pts.size(); ++i) e.push_back(vsub(pts[i], pts[0]));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i; j < k; ++j) g[i][j] = g[j][i] = dot(e[i], e[j]);
    return g;
}

std::optional<RatVec> barycentric_coords(const std::vector<RatPoint>& pts, const RatPoint& x) {
    // lambda solves: sum lambda_i (p_i - p_0) = x - p_0  over edge Gram system
    size_t k = pts.size() - 1;
    std::vector<RatVec> e;
    for (size_t i = 1; i < pts.size(); ++i) e.push_back(vsub(pts[i], pts[0]));
    RatVec rhs_full = vsub(x, pts[0]);
    RatMat g = edge_gram(pts);
    RatVec rhs(k);
    for (size_t i = 0; i < k; ++i) rhs[i] = dot(e[i], rhs_full);
    auto sol = solve_linear(g, rhs);
    if (!sol) return std::nullopt;
    // residual check: x must actually lie in the affine hull
    RatVec rec = rhs_full;
    for (size_t i = 0; i < k; ++i) rec = vsub(rec, vscale((*sol)[i], e[i]));
    for (const Rat& v : rec)
        if (v != 0) return std::nullopt;
    RatVec lambda(k + 1);
    Rat rest = 1;
    for (size_t i = 0; i < k; ++i) { lambda[i + 1] = (*sol)[i]; rest -= (*sol)[i]; }
    lambda[0] = rest;
    return lambda;
}

Rat dist2_point_hull(const std::vector<RatPoint>& pts, const RatPoint& x) {
    size_t n = pts.size();
    Rat best = -1;
    // Enumerate faces; small simplices only.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<RatPoint> face;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) face.push_back(pts[i]);
        size_t k = face.size() - 1;
        std::vector<RatVec> e;
        for (size_t i = 1; i < face.size(); ++i) e.push_back(vsub(face[i], face[0]));
        RatVec rhs_full = vsub(x, face[0]);
        RatMat g = edge_gram(face);
        RatVec rhs(k);
        for (size_t i = 0; i < k; ++i) rhs[i] = dot(e[i], rhs_full);
        auto sol = solve_linear(g, rhs);
        if (!sol) continue; // degenerate subset; a subset of it covers the same hull
        bool inside = true;
        Rat s = 0;
        for (size_t i = 0; i < k; ++i) {
            if ((*sol)[i] < 0) { inside = false; break; }
            s += (*sol)[i];
        }
        if (!inside || s > 1) continue;
        RatVec diff = rhs_full;
        for (size_t i = 0; i < k; ++i) diff = vsub(diff, vscale((*sol)[i], e[i]));
        Rat d2 = dot(diff, diff);
        if (best < 0 || d2 < best) best = d2;
    }
    return best;
}

} // namespace ptopo
