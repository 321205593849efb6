#include "ptopo/polytope.hpp"

#include "ptopo/io_json.hpp"
#include "ptopo/lp.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

namespace ptopo {

namespace {

size_t poly_point_guard() {
    if (const char* s = std::getenv("PTOPO_MAX_POLY_POINTS")) return std::strtoul(s, nullptr, 10);
    return 64;
}
size_t poly_dim_guard() {
    if (const char* s = std::getenv("PTOPO_MAX_POLY_DIM")) return std::strtoul(s, nullptr, 10);
    return 6;
}

// is x a convex combination of pts?
bool in_hull(const std::vector<RatPoint>& pts, const RatPoint& x) {
    if (pts.empty()) return false;
    size_t n = pts.size(), dim = x.size();
    RatMat a(dim + 1, RatVec(n, Rat(0)));
    RatVec b(dim + 1, Rat(0));
    for (size_t d = 0; d < dim; ++d) {
        for (size_t i = 0; i < n; ++i) a[d][i] = pts[i][d];
        b[d] = x[d];
    }
    for (size_t i = 0; i < n; ++i) a[dim][i] = 1;
    b[dim] = 1;
    return lp_feasible(a, b);
}

} // namespace

Polytope Polytope::from_points(std::vector<RatPoint> pts, bool verify_extremal) {
    require_input(!pts.empty(), "empty polytope");
    for (const auto& p : pts)
        require_input(p.size() == pts[0].size(), "polytope points of mixed arity");
    if (pts.size() > poly_point_guard()) fail_guard("polytope exceeds the extremal point guard");
    Polytope p;
    p.points = std::move(pts);
    if (p.dim() > poly_dim_guard()) fail_guard("polytope exceeds the dimension guard");
    if (verify_extremal) {
        for (size_t i = 0; i < p.points.size(); ++i) {
            std::vector<RatPoint> others;
            for (size_t j = 0; j < p.points.size(); ++j)
                if (j != i) others.push_back(p.points[j]);
            for (size_t j = 0; j < p.points.size(); ++j)
                if (j != i)
                    require_input(p.points[j] != p.points[i], "duplicate polytope point");
            require_input(!in_hull(others, p.points[i]),
                          "point " + std::to_string(i) + " is not extremal");
        }
    }
    return p;
}

Polytope Polytope::hull_of(std::vector<RatPoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<RatPoint> keep;
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<RatPoint> others;
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!in_hull(others, pts[i])) keep.push_back(pts[i]);
    }
    return from_points(std::move(keep), false);
}

std::string Polytope::to_json() const {
    nlohmann::json j;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : p) row.push_back(rat_str(c));
        arr.push_back(row);
    }
    j["points"] = arr;
    return j.dump(2);
}

Polytope Polytope::from_json(const std::string& text) {
    nlohmann::json j = parse_json(text);
    require_input(j.contains("points"), "polytope JSON needs points");
    std::vector<RatPoint> pts;
    for (const auto& row : j["points"]) {
        RatPoint p;
        for (const auto& c : row) p.push_back(parse_rat(c.get<std::string>()));
        pts.push_back(std::move(p));
    }
    return from_points(std::move(pts));
}

const Face* FaceLattice::find(const std::vector<size_t>& ids) const {
    for (const auto& level : by_dim)
        for (const auto& f : level)
            if (f.point_ids == ids) return &f;
    return nullptr;
}

std::vector<const Face*> FaceLattice::facets_of(const Face& f) const {
    std::vector<const Face*> out;
    if (f.dim == 0) return out;
    for (const auto& g : by_dim[f.dim - 1])
        if (std::includes(f.point_ids.begin(), f.point_ids.end(), g.point_ids.begin(),
                          g.point_ids.end()))
            out.push_back(&g);
    return out;
}

FaceLattice enumerate_faces(const Polytope& p) {
    size_t n = p.points.size();
    require_input(n > 0, "empty polytope");
    size_t d = p.dim();
    FaceLattice lat;
    lat.by_dim.assign(d + 1, {});

    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    if (d == 0) {
        lat.by_dim[0].push_back({all, 0});
        return lat;
    }

    // facets: subsets of size d spanning a supporting hyperplane
    std::set<std::vector<size_t>> facet_sets;
    std::vector<size_t> combo(d);
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t chosen) {
        if (chosen == d) {
            // hyperplane through the chosen points within aff(P)
            std::vector<RatPoint> sel;
            for (size_t i = 0; i < d; ++i) sel.push_back(p.points[combo[i]]);
            if (affine_rank(sel) != d - 1) return;
            // functional: vanishes on sel, sign-definite on the rest
            RatMat cond;
            for (const auto& s : sel) {
                RatVec row = s;
                row.push_back(Rat(1));
                cond.push_back(row);
            }
            auto funcs = nullspace(cond);
            // pick a functional nonzero somewhere on P
            for (const auto& h : funcs) {
                int side = 0;
                bool supporting = true;
                std::vector<size_t> on;
                for (size_t i = 0; i < n; ++i) {
                    Rat v = Rat(h.back());
                    for (size_t c = 0; c < p.points[i].size(); ++c)
                        v += h[c] * p.points[i][c];
                    if (v == 0) {
                        on.push_back(i);
                    } else if (v > 0) {
                        if (side < 0) { supporting = false; break; }
                        side = 1;
                    } else {
                        if (side > 0) { supporting = false; break; }
                        side = -1;
                    }
                }
                if (!supporting || side == 0) continue;
                std::vector<RatPoint> onpts;
                for (size_t i : on) onpts.push_back(p.points[i]);
                if (affine_rank(onpts) != d - 1) continue;
                facet_sets.insert(on);
            }
            return;
        }
        for (size_t i = start; i + (d - chosen) <= n; ++i) {
            combo[chosen] = i;
            rec(i + 1, chosen + 1);
        }
    };
    rec(0, 0);

    // intersection closure gives every proper face
    std::set<std::vector<size_t>> faces(facet_sets.begin(), facet_sets.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<size_t>> snapshot(faces.begin(), faces.end());
        for (size_t a = 0; a < snapshot.size(); ++a)
            for (size_t b = a + 1; b < snapshot.size(); ++b) {
                std::vector<size_t> inter;
                std::set_intersection(snapshot[a].begin(), snapshot[a].end(),
                                      snapshot[b].begin(), snapshot[b].end(),
                                      std::back_inserter(inter));
                if (inter.empty()) continue;
                if (faces.insert(inter).second) grew = true;
            }
    }

    for (const auto& ids : faces) {
        std::vector<RatPoint> pts;
        for (size_t i : ids) pts.push_back(p.points[i]);
        int fd = static_cast<int>(affine_rank(pts));
        lat.by_dim[fd].push_back({ids, fd});
    }
    lat.by_dim[d].push_back({all, static_cast<int>(d)});
    for (auto& level : lat.by_dim)
        std::sort(level.begin(), level.end(),
                  [](const Face& x, const Face& y) { return x.point_ids < y.point_ids; });
    return lat;
}

RatPoint barycenter(const std::vector<RatPoint>& pts) {
    require_input(!pts.empty(), "barycenter of an empty set");
    RatPoint b(pts[0].size(), Rat(0));
    for (const auto& p : pts) b = vadd(b, p);
    return vscale(Rat(1) / Rat(static_cast<long>(pts.size())), b);
}

std::vector<Halfspace> hull_equations(const Polytope& p) {
    RatMat cond;
    for (const auto& s : p.points) {
        RatVec row = s;
        row.push_back(Rat(1));
        cond.push_back(row);
    }
    std::vector<Halfspace> out;
    for (const auto& h : nullspace(cond)) {
        Halfspace hs;
        hs.a.assign(h.begin(), h.end() - 1);
        hs.b = h.back();
        out.push_back(hs);
    }
    return out;
}

std::vector<Halfspace> facet_halfspaces(const Polytope& p, const FaceLattice& lat) {
    std::vector<Halfspace> out;
    size_t d = p.dim();
    if (d == 0) return out;
    RatPoint inner = barycenter(p.points);
    for (const auto& f : lat.by_dim[d - 1]) {
        RatMat cond;
        for (size_t i : f.point_ids) {
            RatVec row = p.points[i];
            row.push_back(Rat(1));
            cond.push_back(row);
        }
        bool placed = false;
        for (const auto& h : nullspace(cond)) {
            Halfspace hs;
            hs.a.assign(h.begin(), h.end() - 1);
            hs.b = h.back();
            Rat v = hs.eval(inner);
            if (v == 0) continue; // functional vanishes on aff(P) too
            if (v < 0) {
                for (auto& c : hs.a) c = -c;
                hs.b = -hs.b;
            }
            out.push_back(hs);
            placed = true;
            break;
        }
        require_internal(placed, "no supporting functional for facet");
    }
    return out;
}

bool point_in_polytope(const Polytope& p, const RatPoint& x) { return in_hull(p.points, x); }

Polytope clip_polytope(const Polytope& p, const FaceLattice& lat, const Halfspace& h) {
    std::vector<RatPoint> keep;
    std::vector<Rat> val(p.points.size());
    for (size_t i = 0; i < p.points.size(); ++i) {
        val[i] = h.eval(p.points[i]);
        if (val[i] >= 0) keep.push_back(p.points[i]);
    }
    if (p.dim() >= 1)
        for (const auto& e : lat.by_dim[1]) {
            size_t u = e.point_ids[0], v = e.point_ids[1];
            if ((val[u] > 0 && val[v] < 0) || (val[u] < 0 && val[v] > 0)) {
                Rat t = val[u] / (val[u] - val[v]);
                RatPoint x = vadd(p.points[u], vscale(t, vsub(p.points[v], p.points[u])));
                keep.push_back(std::move(x));
            }
        }
    if (keep.empty()) return Polytope{};
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    return Polytope::from_points(std::move(keep), false);
}

std::vector<RatPoint> PolytopeTriangulation::piece_points(size_t i) const {
    std::vector<RatPoint> out;
    for (size_t v : pieces[i]) out.push_back(vertices[v]);
    return out;
}

std::string PolytopeTriangulation::to_json() const {
    nlohmann::json j;
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& p : vertices) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : p) row.push_back(rat_str(c));
        verts.push_back(row);
    }
    j["vertices"] = verts;
    nlohmann::json prov = nlohmann::json::array();
    for (const auto& pr : provenance) {
        nlohmann::json row;
        if (pr.extremal) {
            row["extremal"] = true;
        } else {
            row["extremal"] = false;
            row["barycenter_of"] = pr.barycenter_of;
        }
        prov.push_back(row);
    }
    j["provenance"] = prov;
    j["simplices"] = pieces;
    return j.dump(2);
}

PolytopeTriangulation triangulate_polytope(const Polytope& p) {
    PolytopeTriangulation t;
    t.source = p;
    t.vertices = p.points;
    t.provenance.assign(p.points.size(), {true, {}});
    size_t d = p.dim();
    if (d == 0) {
        t.pieces.push_back({0});
        return t;
    }
    FaceLattice lat = enumerate_faces(p);
    // decomposition per face, faces processed by (dim, lexicographic ids)
    std::map<std::vector<size_t>, std::vector<std::vector<size_t>>> decomp;
    for (const auto& f : lat.by_dim[0]) decomp[f.point_ids] = {{f.point_ids[0]}};
    if (d >= 1)
        for (const auto& f : lat.by_dim[1])
            decomp[f.point_ids] = {{f.point_ids[0], f.point_ids[1]}};
    for (size_t k = 2; k <= d; ++k) {
        for (const auto& f : lat.by_dim[k]) {
            if (f.point_ids.size() == k + 1) {
                // the face is itself a simplex: keep it whole
                decomp[f.point_ids] = {f.point_ids};
                continue;
            }
            std::vector<RatPoint> fpts;
            for (size_t i : f.point_ids) fpts.push_back(p.points[i]);
            size_t bid = t.vertices.size();
            t.vertices.push_back(barycenter(fpts));
            t.provenance.push_back({false, f.point_ids});
            std::vector<std::vector<size_t>> mine;
            for (const Face* g : lat.facets_of(f))
                for (const auto& piece : decomp.at(g->point_ids)) {
                    std::vector<size_t> cone = piece;
                    cone.push_back(bid);
                    mine.push_back(std::move(cone));
                }
            decomp[f.point_ids] = std::move(mine);
        }
    }
    std::vector<size_t> all(p.points.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    t.pieces = decomp.at(all);
    return t;
}

PolytopeTriangulation glue_triangulations(const PolytopeTriangulation& t1,
                                          const PolytopeTriangulation& t2) {
    const Polytope& p1 = t1.source;
    const Polytope& p2 = t2.source;
    require_input(p1.ambient() == p2.ambient(), "gluing polytopes of different ambient dimension");
    size_t dim = static_cast<size_t>(p1.ambient());

    // shared extremal points, matched by exact coordinates
    std::vector<size_t> c1, c2;
    for (size_t i = 0; i < p1.points.size(); ++i)
        for (size_t j = 0; j < p2.points.size(); ++j)
            if (p1.points[i] == p2.points[j]) {
                c1.push_back(i);
                c2.push_back(j);
            }
    std::sort(c1.begin(), c1.end());
    std::sort(c2.begin(), c2.end());

    (void)dim;
    std::vector<RatPoint> shared_pts;
    if (!c1.empty()) {
        FaceLattice l1 = enumerate_faces(p1);
        FaceLattice l2 = enumerate_faces(p2);
        require_input(l1.find(c1) != nullptr && l2.find(c2) != nullptr,
                      "shared points do not form a face of both polytopes");
        for (size_t i : c1) shared_pts.push_back(p1.points[i]);
    }
    // with the shared set a face of both, the intersection equals that
    // face's hull iff it stays inside the face's affine hull
    require_input(simplex_pair_meets_in_face(p1.points, p2.points, shared_pts),
                  "polytopes do not intersect in a common face");

    PolytopeTriangulation out;
    out.source = Polytope::hull_of([&] {
        std::vector<RatPoint> pts = p1.points;
        pts.insert(pts.end(), p2.points.begin(), p2.points.end());
        return pts;
    }());
    std::map<RatPoint, size_t> vid;
    auto add_vertex = [&](const RatPoint& x, const PolytopeTriangulation::Provenance& pr) {
        auto it = vid.find(x);
        if (it != vid.end()) return it->second;
        size_t id = out.vertices.size();
        out.vertices.push_back(x);
        out.provenance.push_back(pr);
        vid[x] = id;
        return id;
    };
    auto append = [&](const PolytopeTriangulation& t) {
        std::vector<size_t> remap(t.vertices.size());
        for (size_t i = 0; i < t.vertices.size(); ++i)
            remap[i] = add_vertex(t.vertices[i], t.provenance[i]);
        for (const auto& piece : t.pieces) {
            std::vector<size_t> np;
            for (size_t v : piece) np.push_back(remap[v]);
            out.pieces.push_back(np);
        }
    };
    append(t1);
    append(t2);
    return out;
}

} // namespace ptopo
