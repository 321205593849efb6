#include "ptopo/fixtures.hpp"

#include "ptopo/subdivision.hpp"

#include <algorithm>
#include <functional>

namespace ptopo {
namespace fixtures {

SimplicialComplex circle() {
    std::vector<RatPoint> pts{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    return SimplicialComplex::from_simplices(2, pts, {{0, 1}, {1, 2}, {0, 2}});
}

SimplicialComplex sphere(int n) {
    require_input(n >= 1, "sphere dimension must be positive");
    std::vector<VertexList> tops;
    int verts = n + 2;
    for (int drop = 0; drop < verts; ++drop) {
        VertexList f;
        for (int v = 0; v < verts; ++v)
            if (v != drop) f.push_back(v);
        tops.push_back(f);
    }
    return abstract_complex(verts, tops);
}

SimplicialComplex torus7() {
    std::vector<VertexList> tops;
    for (int i = 0; i < 7; ++i) {
        tops.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tops.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return abstract_complex(7, tops);
}

SimplicialComplex rp2() {
    // search the 20 triangles of K6 for a 10-triangle closed surface:
    // every edge in exactly two triangles. chi = 6 - 15 + 10 = 1.
    std::vector<VertexList> tris;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) tris.push_back({a, b, c});
    auto edge_id = [](int a, int b) { return a * 6 + b; };
    std::vector<int> edge_use(36, 0);
    std::vector<int> chosen;
    std::function<bool(size_t, size_t)> search = [&](size_t next, size_t count) -> bool {
        if (count == 10) {
            for (int a = 0; a < 6; ++a)
                for (int b = a + 1; b < 6; ++b)
                    if (edge_use[edge_id(a, b)] != 2) return false;
            return true;
        }
        if (next == tris.size()) return false;
        // bound: remaining triangles must suffice
        if (tris.size() - next < 10 - count) return false;
        const auto& t = tris[next];
        int e0 = edge_id(t[0], t[1]), e1 = edge_id(t[0], t[2]), e2 = edge_id(t[1], t[2]);
        if (edge_use[e0] < 2 && edge_use[e1] < 2 && edge_use[e2] < 2) {
            ++edge_use[e0];
            ++edge_use[e1];
            ++edge_use[e2];
            chosen.push_back(static_cast<int>(next));
            if (search(next + 1, count + 1)) return true;
            chosen.pop_back();
            --edge_use[e0];
            --edge_use[e1];
            --edge_use[e2];
        }
        return search(next + 1, count);
    };
    bool ok = search(0, 0);
    require_internal(ok, "projective plane search failed");
    std::vector<VertexList> tops;
    for (int idx : chosen) tops.push_back(tris[idx]);
    return abstract_complex(6, tops);
}

SimplicialComplex klein_bottle() {
    // grid [0,w] x [0,h]; identify (x,h)~(x,0) and (w,y)~(0,h-y)
    auto attempt = [&](int w, int h) -> SimplicialComplex {
        int nx = w + 1, ny = h + 1;
        auto raw = [&](int x, int y) { return y * nx + x; };
        // quotient labels
        std::vector<int> label(nx * ny, -1);
        int next = 0;
        std::vector<int> canon(nx * ny);
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x) {
                int cx = x, cy = y;
                if (cy == h) cy = 0;
                if (cx == w) {
                    cx = 0;
                    cy = (h - cy) % h;
                }
                canon[raw(x, y)] = raw(cx, cy);
            }
        for (int i = 0; i < nx * ny; ++i)
            if (canon[i] == i) label[i] = next++;
        for (int i = 0; i < nx * ny; ++i) label[i] = label[canon[i]];
        std::vector<VertexList> tops;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                int a = label[raw(x, y)], b = label[raw(x + 1, y)];
                int c = label[raw(x + 1, y + 1)], d = label[raw(x, y + 1)];
                tops.push_back({a, b, c});
                tops.push_back({a, c, d});
            }
        return abstract_complex(next, tops);
    };
    for (auto [w, h] : {std::pair{3, 3}, {4, 3}, {3, 4}, {4, 4}, {5, 4}}) {
        try {
            SimplicialComplex k = attempt(w, h);
            if (k.is_closed_manifold() &&
                k.count(0) - k.count(1) + k.count(2) == 0)
                return k;
        } catch (const Error&) {
            continue;
        }
    }
    fail_internal("no valid Klein bottle grid found");
}

namespace {

struct BsQuotient {
    SimplicialComplex quotient;
    SimplicialComplex cover;       // the barycentric subdivision upstairs
    std::vector<VertexId> orbit;   // cover vertex -> quotient vertex
};

// quotient of the barycentric subdivision of K by a vertex permutation
// generating Z_order, assuming g sigma and sigma are disjoint for all
// simplices (then the flag quotient is simplicial)
BsQuotient bs_quotient_full(const SimplicialComplex& k, const std::vector<VertexId>& perm,
                            int order) {
    BarycentricResult bs = barycentric_subdivision(k);
    const SimplicialComplex& b = bs.complex;
    // permutation acts on cells of K, hence on Bs vertices
    size_t nv = b.coord_count();
    std::vector<VertexId> act(nv);
    for (size_t v = 0; v < nv; ++v) {
        auto [d, idx] = bs.vertex_source[v];
        VertexList mapped;
        for (VertexId w : k.simplex(d, idx).verts) mapped.push_back(perm[w]);
        auto [s, sign] = Simplex::canonical(mapped);
        require_internal(sign != 0, "group action degenerates a simplex");
        auto target = k.find(s);
        require_internal(target.has_value(), "group action does not preserve the complex");
        // locate the Bs vertex of the image cell
        act[v] = -1;
        for (size_t u = 0; u < nv; ++u)
            if (bs.vertex_source[u] == std::make_pair(d, *target)) {
                act[v] = static_cast<VertexId>(u);
                break;
            }
        require_internal(act[v] >= 0, "missing barycenter for image cell");
    }
    // orbit labels
    std::vector<VertexId> orbit(nv, -1);
    int next = 0;
    for (size_t v = 0; v < nv; ++v) {
        if (orbit[v] >= 0) continue;
        size_t cur = v;
        for (int t = 0; t < order; ++t) {
            require_internal(orbit[cur] < 0 || orbit[cur] == next, "orbit collision");
            orbit[cur] = next;
            cur = static_cast<size_t>(act[cur]);
        }
        require_internal(cur == v, "permutation order mismatch");
        ++next;
    }
    BsQuotient out;
    out.quotient = relabel_quotient(b, orbit, next, order);
    out.cover = std::move(bs.complex);
    out.orbit = std::move(orbit);
    return out;
}

SimplicialComplex bs_quotient(const SimplicialComplex& k, const std::vector<VertexId>& perm,
                              int order) {
    return bs_quotient_full(k, perm, order).quotient;
}

} // namespace

SimplicialComplex lens_3_1() {
    static SimplicialComplex cached = [] {
        // join of two hexagons: tetrahedra {a_i, a_{i+1}} * {b_j, b_{j+1}}
        int n = 6;
        std::vector<VertexList> tops;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                tops.push_back({i, (i + 1) % n, n + j, n + (j + 1) % n});
        SimplicialComplex join = abstract_complex(2 * n, tops);
        // free Z_3 action: rotate both hexagons by two steps
        std::vector<VertexId> perm(2 * n);
        for (int i = 0; i < n; ++i) {
            perm[i] = (i + 2) % n;
            perm[n + i] = n + (i + 2) % n;
        }
        return bs_quotient(join, perm, 3);
    }();
    return cached;
}

namespace {

const BsQuotient& rp4_data() {
    static BsQuotient cached = [] {
        // boundary of the 5-dimensional cross-polytope: vertices +-e_i,
        // facets = sign patterns
        std::vector<RatPoint> pts;
        for (int i = 0; i < 5; ++i) {
            RatPoint p(5, Rat(0)), q(5, Rat(0));
            p[i] = 1;
            q[i] = -1;
            pts.push_back(p);
            pts.push_back(q); // vertex 2i = +e_i, 2i+1 = -e_i
        }
        std::vector<VertexList> tops;
        for (int signs = 0; signs < 32; ++signs) {
            VertexList f;
            for (int i = 0; i < 5; ++i) f.push_back(2 * i + ((signs >> i) & 1));
            tops.push_back(f);
        }
        SimplicialComplex cross = SimplicialComplex::from_simplices(5, pts, tops);
        std::vector<VertexId> antipodal(10);
        for (int i = 0; i < 5; ++i) {
            antipodal[2 * i] = 2 * i + 1;
            antipodal[2 * i + 1] = 2 * i;
        }
        return bs_quotient_full(cross, antipodal, 2);
    }();
    return cached;
}

} // namespace

SimplicialComplex rp4() { return rp4_data().quotient; }

Cochain rp4_generator(const SimplicialComplex& rp4_complex) {
    const BsQuotient& data = rp4_data();
    const SimplicialComplex& q = data.quotient;
    const SimplicialComplex& cover = data.cover;
    require_input(rp4_complex.count(0) == q.count(0) && rp4_complex.count(1) == q.count(1),
                  "complex is not the cached quotient");
    // deck cocycle of the double cover: fix one lift per quotient
    // vertex; an edge reads 1 when its lift from the chosen endpoint
    // lands on the other sheet
    static std::vector<Int> values = [&] {
        std::vector<VertexId> rep(q.count(0), -1);
        for (size_t v = 0; v < cover.count(0); ++v) {
            VertexId o = data.orbit[v];
            if (rep[o] < 0) rep[o] = static_cast<VertexId>(v);
        }
        std::vector<Int> vals(q.count(1), Int(0));
        std::vector<char> seen(q.count(1), 0);
        for (size_t e = 0; e < cover.count(1); ++e) {
            const auto& ev = cover.simplex(1, e).verts;
            VertexId ou = data.orbit[ev[0]], ov = data.orbit[ev[1]];
            auto qi = q.find_ids({ou, ov});
            require_internal(qi.has_value(), "cover edge has no quotient image");
            bool u_rep = ev[0] == rep[ou], v_rep = ev[1] == rep[ov];
            if (!u_rep && !v_rep) continue; // the other lift of this edge
            if (seen[*qi]) continue;
            seen[*qi] = 1;
            vals[*qi] = (u_rep && v_rep) ? 0 : 1;
        }
        for (char s : seen) require_internal(s, "quotient edge without a chosen lift");
        return vals;
    }();
    Cochain c = zero_cochain(rp4_complex, 1, Ring::Zp(2));
    c.values = values;
    require_internal(is_cocycle(c), "deck cochain is not a cocycle");
    return c;
}

SimplicialComplex annulus() {
    std::vector<RatPoint> pts{
        {Rat(2), Rat(0)},  {Rat(0), Rat(2)},  {Rat(-2), Rat(-2)},
        {Rat(1), Rat(0)},  {Rat(0), Rat(1)},  {Rat(-1), Rat(-1)},
    };
    std::vector<VertexList> tops{{0, 1, 4}, {0, 4, 3}, {1, 2, 5}, {1, 5, 4}, {2, 0, 3}, {2, 3, 5}};
    return SimplicialComplex::from_simplices(2, pts, tops);
}

SimplicialComplex disk_hexagon() {
    std::vector<RatPoint> pts{{Rat(0), Rat(0)}};
    std::vector<std::pair<long, long>> ring{{2, 0}, {1, 2}, {-1, 2}, {-2, 0}, {-1, -2}, {1, -2}};
    for (auto [x, y] : ring) pts.push_back({Rat(x), Rat(y)});
    std::vector<VertexList> tops;
    for (int i = 0; i < 6; ++i) tops.push_back({0, 1 + i, 1 + (i + 1) % 6});
    return SimplicialComplex::from_simplices(2, pts, tops);
}

SimplicialComplex unit_square() {
    std::vector<RatPoint> pts{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    return SimplicialComplex::from_simplices(2, pts, {{0, 1, 2}, {0, 2, 3}});
}

SimplicialComplex grid_square(int n) {
    require_input(n >= 1, "grid size must be positive");
    std::vector<RatPoint> pts;
    for (int y = 0; y <= n; ++y)
        for (int x = 0; x <= n; ++x) pts.push_back({Rat(x), Rat(y)});
    auto id = [&](int x, int y) { return y * (n + 1) + x; };
    std::vector<VertexList> tops;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            tops.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
            tops.push_back({id(x, y), id(x + 1, y + 1), id(x, y + 1)});
        }
    return SimplicialComplex::from_simplices(2, pts, tops);
}

SimplicialComplex unit_cube_complex() {
    std::vector<RatPoint> pts;
    for (int z = 0; z <= 1; ++z)
        for (int y = 0; y <= 1; ++y)
            for (int x = 0; x <= 1; ++x) pts.push_back({Rat(x), Rat(y), Rat(z)});
    auto id = [&](int x, int y, int z) { return (z * 2 + y) * 2 + x; };
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<VertexList> tops;
    for (auto& perm : perms) {
        int pos[3] = {0, 0, 0};
        VertexList tet{static_cast<VertexId>(id(0, 0, 0))};
        for (int step = 0; step < 3; ++step) {
            pos[perm[step]] = 1;
            tet.push_back(static_cast<VertexId>(id(pos[0], pos[1], pos[2])));
        }
        tops.push_back(tet);
    }
    return SimplicialComplex::from_simplices(3, pts, tops);
}

} // namespace fixtures
} // namespace ptopo
