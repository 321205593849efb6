#include "ptopo/subdivision.hpp"

#include <algorithm>
#include <functional>

namespace ptopo {

namespace {

RatPoint barycenter_point(const SimplicialComplex& k, int d, size_t i) {
    RatPoint b(k.ambient_dim(), Rat(0));
    const auto& verts = k.simplex(d, i).verts;
    for (VertexId v : verts) b = vadd(b, k.point(v));
    Rat w = Rat(1) / Rat(static_cast<long>(verts.size()));
    return vscale(w, b);
}

} // namespace

BarycentricResult barycentric_subdivision(const SimplicialComplex& k) {
    BarycentricResult out;
    int n = k.dim();
    // vertex per source simplex
    std::vector<std::vector<VertexId>> vid(n + 1);
    std::vector<RatPoint> coords;
    for (int d = 0; d <= n; ++d) {
        vid[d].resize(k.count(d));
        for (size_t i = 0; i < k.count(d); ++i) {
            vid[d][i] = static_cast<VertexId>(coords.size());
            coords.push_back(barycenter_point(k, d, i));
            out.vertex_source.push_back({d, i});
        }
    }
    // top simplices: flags ending at maximal simplices; faces close over
    // all shorter flags automatically
    std::vector<VertexList> gens;
    VertexList flag;
    std::function<void(int, size_t)> descend = [&](int d, size_t i) {
        flag.push_back(vid[d][i]);
        if (d == 0) {
            VertexList g = flag;
            std::reverse(g.begin(), g.end());
            gens.push_back(g);
        } else {
            for (auto [f, sign] : k.facets(d, i)) {
                (void)sign;
                descend(d - 1, f);
            }
        }
        flag.pop_back();
    };
    for (auto [d, i] : k.maximal_simplices()) descend(d, i);
    out.complex = SimplicialComplex::from_simplices(k.ambient_dim(), std::move(coords), gens);
    return out;
}

SimplicialComplex full_subcomplex_complement(const SimplicialComplex& k, int j) {
    require_input(j >= 0 && j < k.dim(), "skeleton index out of range");
    BarycentricResult bs = barycentric_subdivision(k);
    const SimplicialComplex& b = bs.complex;

    auto in_skeleton = [&](VertexId v) { return bs.vertex_source[v].first <= j; };

    // fullness check: every Bs(K)-simplex spanned by vertices of
    // Bs(K^j) must itself belong to Bs(K^j). Equivalent count form:
    // the number of spanned simplices equals the size of Bs(K^j),
    // computed independently from the skeleton.
    size_t spanned = 0;
    for (int d = 0; d <= b.dim(); ++d)
        for (const auto& s : b.simplices(d)) {
            bool all_in = true;
            for (VertexId v : s.verts)
                if (!in_skeleton(v)) { all_in = false; break; }
            if (all_in) ++spanned;
        }
    size_t skel_size = barycentric_subdivision(k.skeleton(j)).complex.total_count();
    require_internal(spanned == skel_size,
                     "barycentric subdivision of the skeleton is not a full subcomplex");

    std::vector<std::pair<int, size_t>> keep;
    for (int d = 0; d <= b.dim(); ++d)
        for (size_t i = 0; i < b.count(d); ++i) {
            bool disjoint = true;
            for (VertexId v : b.simplex(d, i).verts)
                if (in_skeleton(v)) { disjoint = false; break; }
            if (disjoint) keep.push_back({d, i});
        }
    require_input(!keep.empty(), "complement of the subdivided skeleton is empty");
    return b.subcomplex(keep);
}

SimplicialComplex dual_skeleton(const SimplicialComplex& k, int d) {
    require_input(k.is_closed_manifold(),
                  "dual skeleton requires a closed manifold triangulation (link check failed)");
    int n = k.dim();
    require_input(d >= 0 && d < n, "dual skeleton dimension out of range");
    return full_subcomplex_complement(k, n - d - 1);
}

} // namespace ptopo
