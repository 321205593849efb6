#include "ptopo/volume.hpp"

namespace ptopo {

Real simplex_volume(const std::vector<RatPoint>& pts) {
    size_t k = pts.size() - 1;
    if (k == 0) return Real(1); // 0-dimensional Hausdorff measure of a point
    Rat g = rat_det(edge_gram(pts));
    if (g == 0) return Real(0);
    Real v = sqrt(to_real(g));
    Int fact = 1;
    for (size_t i = 2; i <= k; ++i) fact *= static_cast<long>(i);
    return v / Real(fact);
}

Real simplex_volume(const SimplicialComplex& k, int d, size_t i) {
    return simplex_volume(k.simplex_points(d, i));
}

RatVec Chart::apply(const RatPoint& x) const {
    require_input(contains(x), "chart does not contain the point's affine hull");
    return mat_vec(gram_inv_t, vsub(x, origin));
}

bool Chart::contains(const RatPoint& x) const {
    RatVec t = mat_vec(gram_inv_t, vsub(x, origin));
    RatVec rec = vsub(x, origin);
    for (size_t i = 0; i < basis.size(); ++i) rec = vsub(rec, vscale(t[i], basis[i]));
    for (const Rat& v : rec)
        if (v != 0) return false;
    return true;
}

Chart chart_of(const std::vector<RatPoint>& pts) {
    Chart c;
    c.origin = pts[0];
    for (size_t i = 1; i < pts.size(); ++i) c.basis.push_back(vsub(pts[i], pts[0]));
    size_t k = c.basis.size();
    RatMat g = edge_gram(pts);
    require_input(rat_rank(g) == k, "chart reference simplex is degenerate");
    // (E^T E)^{-1} E^T computed column by column
    RatMat et(k, RatVec(pts[0].size()));
    for (size_t i = 0; i < k; ++i) et[i] = c.basis[i];
    RatMat ginv(k, RatVec(k, Rat(0)));
    for (size_t col = 0; col < k; ++col) {
        RatVec e(k, Rat(0));
        e[col] = 1;
        auto s = solve_linear(g, e);
        require_internal(s.has_value(), "gram inverse");
        for (size_t r = 0; r < k; ++r) ginv[r][col] = (*s)[r];
    }
    c.gram_inv_t = mat_mul(ginv, et);
    return c;
}

Rat chart_volume(const std::vector<RatPoint>& pts, const Chart& chart) {
    size_t k = pts.size() - 1;
    require_input(k == chart.dim(), "chart dimension does not match simplex dimension");
    std::vector<RatVec> mapped;
    for (const auto& p : pts) mapped.push_back(chart.apply(p));
    RatMat edges;
    for (size_t i = 1; i <= k; ++i) edges.push_back(vsub(mapped[i], mapped[0]));
    Rat d = rat_det(edges);
    if (d < 0) d = -d;
    Int fact = 1;
    for (size_t i = 2; i <= k; ++i) fact *= static_cast<long>(i);
    return d / Rat(fact);
}

} // namespace ptopo
