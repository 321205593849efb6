#include "ptopo/refine.hpp"

#include <algorithm>
#include <map>

namespace ptopo {

namespace {

RatVec normalize_projective(const Halfspace& h) {
    RatVec v = h.a;
    v.push_back(h.b);
    for (const Rat& c : v)
        if (c != 0) {
            Rat inv = 1 / c;
            for (Rat& x : v) x *= inv;
            return v;
        }
    return v;
}

std::vector<Halfspace> dedup_hyperplanes(std::vector<Halfspace> hs) {
    std::vector<Halfspace> out;
    std::set<RatVec> seen;
    for (auto& h : hs) {
        RatVec key = normalize_projective(h);
        bool zero = true;
        for (const Rat& c : key)
            if (c != 0) zero = false;
        if (zero) continue;
        if (seen.insert(key).second) out.push_back(std::move(h));
    }
    return out;
}

} // namespace

std::vector<Polytope> halfspace_split(const Polytope& t, const std::vector<Halfspace>& hyperplanes) {
    std::vector<Polytope> parts{t};
    for (const Halfspace& h : dedup_hyperplanes(hyperplanes)) {
        std::vector<Polytope> next;
        for (const Polytope& q : parts) {
            bool all_ge = true, all_le = true;
            for (const auto& x : q.points) {
                Rat v = h.eval(x);
                if (v < 0) all_ge = false;
                if (v > 0) all_le = false;
            }
            if (all_ge || all_le) {
                next.push_back(q);
                continue;
            }
            FaceLattice lat = enumerate_faces(q);
            Halfspace neg{h.a, h.b};
            for (auto& c : neg.a) c = -c;
            neg.b = -neg.b;
            Polytope qp = clip_polytope(q, lat, h);
            Polytope qm = clip_polytope(q, lat, neg);
            if (!qp.points.empty() && qp.dim() == q.dim()) next.push_back(std::move(qp));
            if (!qm.points.empty() && qm.dim() == q.dim()) next.push_back(std::move(qm));
        }
        parts = std::move(next);
    }
    return parts;
}

namespace {

using CellKey = std::pair<int, size_t>;
using PointTuple = std::vector<RatPoint>; // sorted vertex coordinates

// is x inside the simplex spanned by pts (barycentric all >= 0)?
bool in_simplex(const std::vector<RatPoint>& pts, const RatPoint& x) {
    auto lam = barycentric_coords(pts, x);
    if (!lam) return false;
    for (const auto& l : *lam)
        if (l < 0) return false;
    return true;
}

struct PieceTask {
    Polytope piece;              // m-dimensional clipped polytope
    std::vector<RatPoint> carrier; // vertex points of the original carrier top simplex
};

struct PolyData {
    std::vector<Halfspace> eqs;    // hull equations
    std::vector<Halfspace> facets; // supporting halfspaces
    Chart chart;
    Rat volume = 0;
};

PolyData analyze_polytope(const Polytope& p) {
    PolyData d;
    d.eqs = hull_equations(p);
    FaceLattice lat = enumerate_faces(p);
    d.facets = facet_halfspaces(p, lat);
    // chart from a maximal affinely independent subset
    std::vector<RatPoint> frame{p.points[0]};
    for (const auto& x : p.points) {
        std::vector<RatPoint> cand = frame;
        cand.push_back(x);
        if (affine_rank(cand) == cand.size() - 1) frame = cand;
        if (frame.size() == p.dim() + 1) break;
    }
    d.chart = chart_of(frame);
    PolytopeTriangulation tri = triangulate_polytope(p);
    for (size_t i = 0; i < tri.pieces.size(); ++i) {
        auto pts = tri.piece_points(i);
        if (pts.size() == p.dim() + 1) d.volume += chart_volume(pts, d.chart);
    }
    return d;
}

bool point_in_polydata(const PolyData& d, const RatPoint& x) {
    for (const auto& e : d.eqs)
        if (e.eval(x) != 0) return false;
    for (const auto& f : d.facets)
        if (f.eval(x) < 0) return false;
    return true;
}

// m-volume of the part of the complex's m-skeleton inside the polytope
Rat embedded_volume(const SimplicialComplex& cur, const PolyData& pd, size_t m) {
    Rat total = 0;
    for (size_t i = 0; i < cur.count(static_cast<int>(m)); ++i) {
        auto pts = cur.simplex_points(static_cast<int>(m), i);
        bool inside = true;
        for (const auto& x : pts)
            if (!point_in_polydata(pd, x)) { inside = false; break; }
        if (inside) total += chart_volume(pts, pd.chart);
    }
    return total;
}

// halfspace description of a simplex: hull equations as pairs plus the
// facet supports
std::vector<Halfspace> simplex_halfspaces(const std::vector<RatPoint>& tpts) {
    Polytope tp = Polytope::from_points(tpts, false);
    std::vector<Halfspace> hs;
    for (const Halfspace& e : hull_equations(tp)) {
        hs.push_back(e);
        Halfspace neg = e;
        for (auto& c : neg.a) c = -c;
        neg.b = -neg.b;
        hs.push_back(neg);
    }
    FaceLattice lat = enumerate_faces(tp);
    for (const Halfspace& f : facet_halfspaces(tp, lat)) hs.push_back(f);
    return hs;
}

Polytope clip_by(const Polytope& p, const Halfspace& h) {
    if (p.points.empty()) return p;
    FaceLattice lat = enumerate_faces(p);
    return clip_polytope(p, lat, h);
}

// convex cells of `cell` outside the simplex described by `hs`
std::vector<Polytope> subtract_simplex(const Polytope& cell, const std::vector<Halfspace>& hs) {
    std::vector<Polytope> out;
    Polytope rest = cell;
    for (const Halfspace& h : hs) {
        if (rest.points.empty()) break;
        bool any_neg = false, any_pos = false;
        for (const auto& x : rest.points) {
            Rat v = h.eval(x);
            if (v < 0) any_neg = true;
            if (v > 0) any_pos = true;
        }
        if (!any_neg) continue; // inside this halfspace
        if (!any_pos) {
            out.push_back(rest); // entirely on the outside (up to boundary)
            rest.points.clear();
            break;
        }
        Halfspace neg = h;
        for (auto& c : neg.a) c = -c;
        neg.b = -neg.b;
        Polytope outside = clip_by(rest, neg);
        if (!outside.points.empty()) out.push_back(outside);
        rest = clip_by(rest, h);
    }
    return out; // whatever survives every halfspace lies inside and drops
}

struct Engine {
    SimplicialComplex cur;
    RefineReport report;

    void run(const SimplicialComplex& k, const std::vector<Polytope>& polys) {
        cur = k;
        report.frontier_sizes.assign(static_cast<size_t>(k.dim()) + 1, 0);
        require_input(k.is_pure(), "refinement requires a pure complex");
        int n = k.dim();

        // initial intersection pass against the input triangulation
        std::vector<PieceTask> tasks;
        auto tops = k.maximal_simplices();
        for (size_t pi = 0; pi < polys.size(); ++pi) {
            const Polytope& p = polys[pi];
            require_input(p.ambient() == k.ambient_dim(),
                          "polytope ambient dimension does not match the complex");
            size_t m = p.dim();
            require_input(static_cast<int>(m) <= n,
                          "polytope dimension exceeds the complex dimension");
            // exact containment: remove every top simplex from P; a
            // surviving m-dimensional cell lies outside the complex
            std::vector<Polytope> leftovers{p};
            std::set<std::vector<RatPoint>> piece_keys;
            for (auto [td, ti] : tops) {
                auto tpts = k.simplex_points(td, ti);
                std::vector<Halfspace> hs = simplex_halfspaces(tpts);
                // the clipped piece P cap T
                Polytope piece = p;
                for (const Halfspace& h : hs) {
                    piece = clip_by(piece, h);
                    if (piece.points.empty()) break;
                }
                if (!piece.points.empty()) {
                    report.affected_tops.insert({td, ti});
                    if (piece.dim() == m) {
                        std::vector<RatPoint> key = piece.points;
                        std::sort(key.begin(), key.end());
                        if (piece_keys.insert(key).second) tasks.push_back({piece, tpts});
                    }
                }
                std::vector<Polytope> next;
                for (const Polytope& cell : leftovers)
                    for (Polytope& piece_out : subtract_simplex(cell, hs))
                        if (piece_out.dim() == m) next.push_back(std::move(piece_out));
                leftovers = std::move(next);
            }
            if (!leftovers.empty()) {
                RatPoint witness = barycenter(leftovers.front().points);
                std::string where = " (offending point:";
                for (const auto& c : witness) where += " " + rat_str(c);
                where += ")";
                fail_input("polytope " + std::to_string(pi) +
                           " is not contained in the complex" + where);
            }
        }

        for (const PieceTask& task : tasks) {
            process_piece(task);
            ++report.pieces_processed;
        }
        report.complex = cur;
    }

    void process_piece(const PieceTask& task) {
        size_t m = task.piece.dim();
        PolyData pd = analyze_polytope(task.piece);
        report.piece_hyperplanes.push_back(2 * pd.eqs.size() + pd.facets.size());
        if (embedded_volume(cur, pd, m) == pd.volume) return; // already a union of m-simplices

        int n = cur.dim();
        // carriers: current tops inside the original carrier simplex
        std::vector<CellKey> carriers;
        for (auto [td, ti] : cur.maximal_simplices()) {
            bool inside = true;
            for (const auto& x : cur.simplex_points(td, ti))
                if (!in_simplex(task.carrier, x)) { inside = false; break; }
            if (inside) carriers.push_back({td, ti});
        }
        require_internal(!carriers.empty(), "refinement piece lost its carrier");

        std::vector<Halfspace> hyper = pd.eqs;
        hyper.insert(hyper.end(), pd.facets.begin(), pd.facets.end());

        // subdivision per current cell: lists of simplices as point tuples
        std::map<CellKey, std::vector<PointTuple>> sub;
        std::set<CellKey> touched;

        for (CellKey c : carriers) {
            auto cpts = cur.simplex_points(c.first, c.second);
            Polytope cpoly = Polytope::from_points(cpts, false);
            std::vector<Polytope> parts = halfspace_split(cpoly, hyper);
            if (parts.size() == 1 && parts[0].points.size() == cpts.size()) continue;
            std::vector<PolytopeTriangulation> tris;
            for (const auto& part : parts) tris.push_back(triangulate_polytope(part));
            // pieces of the carrier itself
            std::vector<PointTuple> mine;
            for (const auto& tri : tris)
                for (size_t q = 0; q < tri.pieces.size(); ++q) {
                    PointTuple pts = tri.piece_points(q);
                    if (pts.size() != static_cast<size_t>(c.first) + 1) continue;
                    std::sort(pts.begin(), pts.end());
                    mine.push_back(std::move(pts));
                }
            std::sort(mine.begin(), mine.end());
            sub[c] = mine;
            touched.insert(c);
            // induced subdivisions of every proper face of the carrier
            const auto& cverts = cur.simplex(c.first, c.second).verts;
            for (unsigned mask = 1; mask + 1 < (1u << cverts.size()); ++mask) {
                VertexList fv;
                for (size_t b = 0; b < cverts.size(); ++b)
                    if (mask & (1u << b)) fv.push_back(cverts[b]);
                auto fidx = cur.find_ids(fv);
                require_internal(fidx.has_value(), "face closure in refinement");
                CellKey f{static_cast<int>(fv.size()) - 1, *fidx};
                std::vector<RatPoint> fpts;
                for (VertexId v : fv) fpts.push_back(cur.point(v));
                std::vector<PointTuple> fsub;
                std::set<PointTuple> seen;
                for (const auto& tri : tris)
                    for (size_t q = 0; q < tri.pieces.size(); ++q) {
                        // faces of top pieces contained in f
                        const auto& piece = tri.pieces[q];
                        size_t want = fv.size();
                        std::vector<size_t> inside;
                        for (size_t v : piece)
                            if (in_simplex(fpts, tri.vertices[v])) inside.push_back(v);
                        std::sort(inside.begin(), inside.end());
                        inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
                        if (inside.size() < want) continue;
                        std::vector<char> pick(inside.size(), 0);
                        std::fill(pick.end() - static_cast<long>(want), pick.end(), 1);
                        do {
                            PointTuple cand;
                            for (size_t a = 0; a < inside.size(); ++a)
                                if (pick[a]) cand.push_back(tri.vertices[inside[a]]);
                            if (affine_rank(cand) != want - 1) continue;
                            std::sort(cand.begin(), cand.end());
                            seen.insert(cand);
                        } while (std::next_permutation(pick.begin(), pick.end()));
                    }
                fsub.assign(seen.begin(), seen.end());
                bool trivial = fsub.size() == 1 && fsub[0] == [&] {
                    PointTuple t = fpts;
                    std::sort(t.begin(), t.end());
                    return t;
                }();
                if (trivial) continue;
                auto it = sub.find(f);
                if (it != sub.end()) {
                    require_internal(it->second == fsub,
                                     "incompatible face subdivision between carriers");
                } else {
                    sub[f] = fsub;
                    touched.insert(f);
                }
            }
        }
        if (touched.empty()) return;

        // compatibility propagation: cone any simplex with a touched facet
        std::set<CellKey> carrier_set(carriers.begin(), carriers.end());
        for (int j = 1; j <= n; ++j) {
            for (size_t i = 0; i < cur.count(j); ++i) {
                CellKey s{j, i};
                if (touched.count(s)) continue;
                bool hit = false;
                for (auto [f, sign] : cur.facets(j, i)) {
                    (void)sign;
                    if (touched.count({j - 1, f})) { hit = true; break; }
                }
                if (!hit) continue;
                if (static_cast<size_t>(j) < report.frontier_sizes.size())
                    report.frontier_sizes[j] += 1;
                auto spts = cur.simplex_points(j, i);
                RatPoint b = barycenter(spts);
                std::vector<PointTuple> mine;
                for (auto [f, sign] : cur.facets(j, i)) {
                    (void)sign;
                    CellKey fk{j - 1, f};
                    auto it = sub.find(fk);
                    if (it != sub.end()) {
                        for (const auto& piece : it->second) {
                            PointTuple cone = piece;
                            cone.push_back(b);
                            std::sort(cone.begin(), cone.end());
                            mine.push_back(std::move(cone));
                        }
                    } else {
                        PointTuple cone = cur.simplex_points(j - 1, f);
                        cone.push_back(b);
                        std::sort(cone.begin(), cone.end());
                        mine.push_back(std::move(cone));
                    }
                }
                std::sort(mine.begin(), mine.end());
                sub[s] = std::move(mine);
                touched.insert(s);
            }
        }

        // assemble the refined complex
        ComplexBuilder builder(cur.ambient_dim());
        for (auto [td, ti] : cur.maximal_simplices()) {
            CellKey key{td, ti};
            auto it = sub.find(key);
            if (it == sub.end()) {
                VertexList ids;
                for (const auto& x : cur.simplex_points(td, ti)) ids.push_back(builder.add_vertex(x));
                builder.add_simplex(ids);
            } else {
                for (const auto& piece : it->second) {
                    VertexList ids;
                    for (const auto& x : piece) ids.push_back(builder.add_vertex(x));
                    builder.add_simplex(ids);
                }
            }
        }
        cur = builder.build(false);
    }
};

} // namespace

RefineReport refine_to_embed(const SimplicialComplex& k, const std::vector<Polytope>& polys) {
    Engine e;
    e.run(k, polys);
    return std::move(e.report);
}

RefineReport refine_in_polyhedron(const SimplicialComplex& k, const std::vector<Polytope>& polys) {
    require_input(k.is_closed_manifold(),
                  "polyhedron refinement requires a closed PL manifold triangulation");
    Engine e;
    e.run(k, polys);
    return std::move(e.report);
}

} // namespace ptopo
