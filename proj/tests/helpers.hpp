#pragma once

// Shared test utilities, including the independent oracles used to
// freeze expected values: a minimal textbook Smith reduction, a fan
// (non-barycenter) volume decomposition, and simple enumerators.

#include "ptopo/complex.hpp"
#include "ptopo/homology.hpp"
#include "ptopo/polytope.hpp"
#include "ptopo/volume.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace testutil {

using namespace ptopo;

// --- minimal dense Smith reduction, independent of the library path ---
inline std::vector<long> mini_smith(std::vector<std::vector<long>> a) {
    size_t m = a.size(), n = m ? a[0].size() : 0;
    std::vector<long> diag;
    size_t t = 0;
    while (t < m && t < n) {
        size_t pr = m, pc = n;
        long best = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pr == m || std::abs(a[i][j]) < best)) {
                    best = std::abs(a[i][j]);
                    pr = i;
                    pc = j;
                }
        if (pr == m) break;
        std::swap(a[pr], a[t]);
        for (size_t i = 0; i < m; ++i) std::swap(a[i][pc], a[i][t]);
        bool again = false;
        for (size_t i = t + 1; i < m; ++i)
            if (a[i][t] % a[t][t] != 0) {
                long q = a[i][t] / a[t][t];
                for (size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                again = true;
            }
        for (size_t j = t + 1; j < n; ++j)
            if (a[t][j] % a[t][t] != 0) {
                long q = a[t][j] / a[t][t];
                for (size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                again = true;
            }
        if (again) continue;
        for (size_t i = t + 1; i < m; ++i) {
            long q = a[i][t] / a[t][t];
            for (size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        }
        for (size_t j = t + 1; j < n; ++j) {
            long q = a[t][j] / a[t][t];
            for (size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        }
        bool fold = false;
        for (size_t i = t + 1; i < m && !fold; ++i)
            for (size_t j = t + 1; j < n; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    for (size_t jj = t; jj < n; ++jj) a[t][jj] += a[i][jj];
                    fold = true;
                    break;
                }
        if (fold) continue;
        diag.push_back(std::abs(a[t][t]));
        ++t;
    }
    return diag;
}

// homology of a small complex from hand-assembled boundary matrices
struct MiniGroups {
    std::vector<size_t> betti;
    std::vector<std::vector<long>> torsion;
};

inline MiniGroups mini_homology(const std::vector<size_t>& dims,
                                const std::vector<std::vector<std::vector<long>>>& boundary) {
    // boundary[d]: dims[d-1] x dims[d]
    size_t n = dims.size();
    std::vector<size_t> rank(n + 1, 0);
    std::vector<std::vector<long>> tors(n + 1);
    for (size_t d = 1; d < n; ++d) {
        if (dims[d] == 0 || dims[d - 1] == 0) continue;
        auto diag = mini_smith(boundary[d]);
        size_t r = 0;
        for (long v : diag)
            if (v != 0) {
                ++r;
                if (std::abs(v) > 1) tors[d].push_back(std::abs(v));
            }
        rank[d] = r;
    }
    MiniGroups g;
    for (size_t d = 0; d < n; ++d) {
        g.betti.push_back(dims[d] - rank[d] - rank[d + 1]);
        std::sort(tors[d + 1].begin(), tors[d + 1].end());
        g.torsion.push_back(tors[d + 1]);
    }
    return g;
}

inline std::vector<std::vector<long>> boundary_dense_long(const SimplicialComplex& k, int d) {
    std::vector<std::vector<long>> m(k.count(d - 1), std::vector<long>(k.count(d), 0));
    for (size_t i = 0; i < k.count(d); ++i)
        for (auto [f, sign] : k.facets(d, i)) m[f][i] += sign;
    return m;
}

inline MiniGroups mini_homology_of(const SimplicialComplex& k) {
    std::vector<size_t> dims;
    for (int d = 0; d <= k.dim(); ++d) dims.push_back(k.count(d));
    std::vector<std::vector<std::vector<long>>> bnd(dims.size());
    for (int d = 1; d <= k.dim(); ++d) bnd[d] = boundary_dense_long(k, d);
    return mini_homology(dims, bnd);
}

// --- independent volume oracle: fan decomposition from the first point ---
inline Rat fan_volume(const Polytope& p, const Chart& chart) {
    size_t d = p.dim();
    if (d == 0) return Rat(0);
    // recursive fan: cone the first listed point over the simplices of
    // each facet not containing it
    std::function<std::vector<std::vector<size_t>>(const std::vector<size_t>&)> fan =
        [&](const std::vector<size_t>& ids) -> std::vector<std::vector<size_t>> {
        std::vector<RatPoint> pts;
        for (size_t i : ids) pts.push_back(p.points[i]);
        Polytope q = Polytope::from_points(pts, false);
        size_t qd = q.dim();
        if (ids.size() == qd + 1) return {ids};
        FaceLattice lat = enumerate_faces(q);
        std::vector<std::vector<size_t>> out;
        for (const auto& facet : lat.by_dim[qd - 1]) {
            if (std::find(facet.point_ids.begin(), facet.point_ids.end(), size_t(0)) !=
                facet.point_ids.end())
                continue;
            std::vector<size_t> fids;
            for (size_t loc : facet.point_ids) fids.push_back(ids[loc]);
            for (auto s : fan(fids)) {
                s.push_back(ids[0]);
                out.push_back(s);
            }
        }
        return out;
    };
    std::vector<size_t> all(p.points.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    Rat total = 0;
    for (const auto& s : fan(all)) {
        std::vector<RatPoint> pts;
        for (size_t i : s) pts.push_back(p.points[i]);
        if (pts.size() == d + 1) total += chart_volume(pts, chart);
    }
    return total;
}

// random rational in [-range, range] with denominator <= maxden
inline Rat random_rat(std::mt19937_64& rng, long range = 4, long maxden = 8) {
    long den = 1 + static_cast<long>(rng() % static_cast<uint64_t>(maxden));
    long num = static_cast<long>(rng() % static_cast<uint64_t>(2 * range * den + 1)) - range * den;
    return Rat(num, den);
}

inline RatPoint random_point(std::mt19937_64& rng, size_t dim, long range = 4, long maxden = 8) {
    RatPoint p(dim);
    for (auto& c : p) c = random_rat(rng, range, maxden);
    return p;
}

// canonical form of a triangulation: sorted list of sorted point tuples
inline std::vector<std::vector<RatPoint>> canon_pieces(const PolytopeTriangulation& t) {
    std::vector<std::vector<RatPoint>> out;
    for (size_t i = 0; i < t.pieces.size(); ++i) {
        auto pts = t.piece_points(i);
        std::sort(pts.begin(), pts.end());
        out.push_back(pts);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::set<std::vector<RatPoint>> simplex_coordinate_set(const SimplicialComplex& k) {
    std::set<std::vector<RatPoint>> out;
    for (int d = 0; d <= k.dim(); ++d)
        for (size_t i = 0; i < k.count(d); ++i) {
            auto pts = k.simplex_points(d, i);
            std::sort(pts.begin(), pts.end());
            out.insert(pts);
        }
    return out;
}

} // namespace testutil
