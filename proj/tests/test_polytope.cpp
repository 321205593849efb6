#include "helpers.hpp"

#include "ptopo/fixtures.hpp"
#include "ptopo/lp.hpp"

#include <doctest.h>

using namespace ptopo;
using namespace testutil;

namespace {

Polytope unit_square_poly() {
    return Polytope::from_points(
        {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
}

Polytope unit_cube_poly() {
    std::vector<RatPoint> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({Rat(i & 1), Rat((i >> 1) & 1), Rat((i >> 2) & 1)});
    return Polytope::from_points(pts);
}

// random polytope with at most max_pts extremal points in R^d
Polytope random_polytope(std::mt19937_64& rng, size_t d, size_t max_pts) {
    for (;;) {
        std::vector<RatPoint> pts;
        size_t n = d + 1 + rng() % (max_pts - d);
        for (size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, d, 3, 4));
        Polytope p = Polytope::hull_of(pts);
        if (p.dim() == d && p.points.size() >= d + 1) return p;
    }
}

bool triangulation_valid(const PolytopeTriangulation& t) {
    for (size_t a = 0; a < t.pieces.size(); ++a)
        for (size_t b = a + 1; b < t.pieces.size(); ++b) {
            auto pa = t.piece_points(a);
            auto pb = t.piece_points(b);
            std::vector<RatPoint> shared;
            for (const auto& x : pa)
                for (const auto& y : pb)
                    if (x == y) shared.push_back(x);
            if (!simplex_pair_meets_in_face(pa, pb, shared)) return false;
        }
    return true;
}

} // namespace

TEST_CASE("face lattice counts") {
    FaceLattice sq = enumerate_faces(unit_square_poly());
    CHECK(sq.by_dim[0].size() == 4);
    CHECK(sq.by_dim[1].size() == 4);
    CHECK(sq.by_dim[2].size() == 1);

    FaceLattice cube = enumerate_faces(unit_cube_poly());
    CHECK(cube.by_dim[0].size() == 8);
    CHECK(cube.by_dim[1].size() == 12);
    CHECK(cube.by_dim[2].size() == 6);
    CHECK(cube.by_dim[3].size() == 1);

    // d-simplex: C(d+1, k+1) faces per dimension
    for (size_t d = 2; d <= 4; ++d) {
        std::vector<RatPoint> pts{RatPoint(d, Rat(0))};
        for (size_t i = 0; i < d; ++i) {
            RatPoint e(d, Rat(0));
            e[i] = 1;
            pts.push_back(e);
        }
        FaceLattice lat = enumerate_faces(Polytope::from_points(pts));
        auto binom = [](size_t n, size_t k) {
            size_t r = 1;
            for (size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
            return r;
        };
        for (size_t k = 0; k < d; ++k) CHECK(lat.by_dim[k].size() == binom(d + 1, k + 1));
    }
}

TEST_CASE("barycenters") {
    CHECK(barycenter({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}) == RatPoint{Rat(1, 2), Rat(0)});
    CHECK(barycenter(unit_square_poly().points) == RatPoint{Rat(1, 2), Rat(1, 2)});
    RatPoint e0{Rat(1), Rat(0), Rat(0)}, e1{Rat(0), Rat(1), Rat(0)}, e2{Rat(0), Rat(0), Rat(1)};
    CHECK(barycenter({e0, e1, e2}) == RatPoint{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
}

TEST_CASE("extremality is validated") {
    CHECK_THROWS_AS(Polytope::from_points({{Rat(0), Rat(0)},
                                           {Rat(2), Rat(0)},
                                           {Rat(0), Rat(2)},
                                           {Rat(1, 2), Rat(1, 2)}}),
                    Error);
}

TEST_CASE("triangulation examples") {
    // a simplex stays whole
    std::vector<RatPoint> tri{{Rat(0), Rat(0)}, {Rat(3), Rat(0)}, {Rat(0), Rat(2)}};
    PolytopeTriangulation t0 = triangulate_polytope(Polytope::from_points(tri));
    CHECK(t0.pieces.size() == 1);

    PolytopeTriangulation tsq = triangulate_polytope(unit_square_poly());
    CHECK(tsq.pieces.size() == 4);
    CHECK(triangulation_valid(tsq));
    // provenance: one added barycenter of the whole square
    size_t added = 0;
    for (const auto& p : tsq.provenance)
        if (!p.extremal) ++added;
    CHECK(added == 1);

    PolytopeTriangulation tc = triangulate_polytope(unit_cube_poly());
    CHECK(tc.pieces.size() == 24);
    CHECK(triangulation_valid(tc));
    // exact volume partition of the unit cube
    Chart chart = chart_of({tc.source.points[0], tc.source.points[1], tc.source.points[2],
                            tc.source.points[4]});
    Rat sum = 0;
    for (size_t i = 0; i < tc.pieces.size(); ++i) sum += chart_volume(tc.piece_points(i), chart);
    CHECK(sum == 1);
}

TEST_CASE("triangulation partitions random polytopes exactly (fan oracle)") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        size_t d = 2 + trial % 3;
        Polytope p = random_polytope(rng, d, d + 5);
        PolytopeTriangulation t = triangulate_polytope(p);
        // chart from an independent frame
        std::vector<RatPoint> frame{p.points[0]};
        for (const auto& x : p.points) {
            auto cand = frame;
            cand.push_back(x);
            if (affine_rank(cand) == cand.size() - 1) frame = cand;
            if (frame.size() == d + 1) break;
        }
        Chart chart = chart_of(frame);
        Rat sum = 0;
        for (size_t i = 0; i < t.pieces.size(); ++i) {
            auto pts = t.piece_points(i);
            if (pts.size() == d + 1) sum += chart_volume(pts, chart);
        }
        CHECK(sum == fan_volume(p, chart));
        CHECK(triangulation_valid(t));
    }
}

TEST_CASE("sampled points land in one piece, two only on shared faces") {
    std::mt19937_64 rng(311);
    for (const Polytope& p : {unit_square_poly(), unit_cube_poly()}) {
        PolytopeTriangulation t = triangulate_polytope(p);
        for (int s = 0; s < 1000; ++s) {
            // random rational convex combination
            RatPoint x(p.points[0].size(), Rat(0));
            Rat total = 0;
            std::vector<Rat> w;
            for (size_t i = 0; i < p.points.size(); ++i) {
                Rat v(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 4));
                w.push_back(v);
                total += v;
            }
            for (size_t i = 0; i < p.points.size(); ++i)
                x = vadd(x, vscale(w[i] / total, p.points[i]));
            size_t containing = 0;
            bool all_boundary = true;
            for (size_t i = 0; i < t.pieces.size(); ++i) {
                auto pts = t.piece_points(i);
                auto lam = barycentric_coords(pts, x);
                if (!lam) continue;
                bool in = true, interior = true;
                for (const auto& l : *lam) {
                    if (l < 0) in = false;
                    if (l == 0) interior = false;
                }
                if (!in) continue;
                ++containing;
                if (interior) all_boundary = false;
            }
            CHECK(containing >= 1);
            if (containing >= 2) CHECK(all_boundary); // only on shared faces
        }
    }
}

TEST_CASE("affine equivariance of the triangulation") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        size_t d = 2 + trial % 2;
        Polytope p = random_polytope(rng, d, d + 4);
        // random invertible rational affine map
        RatMat a;
        do {
            a.assign(d, RatVec(d));
            for (auto& row : a)
                for (auto& v : row) v = random_rat(rng, 2, 3);
        } while (rat_det(a) == 0);
        RatVec b(d);
        for (auto& v : b) v = random_rat(rng, 2, 3);

        std::vector<RatPoint> mapped;
        for (const auto& x : p.points) mapped.push_back(vadd(mat_vec(a, x), b));
        Polytope ap = Polytope::from_points(mapped, false);

        PolytopeTriangulation t1 = triangulate_polytope(ap);
        PolytopeTriangulation t0 = triangulate_polytope(p);
        // apply A to t0
        PolytopeTriangulation t0m = t0;
        for (auto& v : t0m.vertices) v = vadd(mat_vec(a, v), b);
        CHECK(canon_pieces(t1) == canon_pieces(t0m));
    }
}

TEST_CASE("determinism of triangulation") {
    Polytope p = unit_cube_poly();
    PolytopeTriangulation a = triangulate_polytope(p);
    PolytopeTriangulation b = triangulate_polytope(p);
    CHECK(a.pieces == b.pieces);
    CHECK(a.vertices == b.vertices);
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("gluing two squares along an edge") {
    Polytope s1 = unit_square_poly();
    Polytope s2 = Polytope::from_points(
        {{Rat(1), Rat(0)}, {Rat(2), Rat(0)}, {Rat(2), Rat(1)}, {Rat(1), Rat(1)}});
    PolytopeTriangulation g = glue_triangulations(triangulate_polytope(s1), triangulate_polytope(s2));
    CHECK(g.pieces.size() == 8);
    CHECK(triangulation_valid(g));
}

TEST_CASE("gluing two cubes along a square face") {
    Polytope c1 = unit_cube_poly();
    std::vector<RatPoint> shifted;
    for (const auto& x : c1.points) shifted.push_back({x[0] + 1, x[1], x[2]});
    Polytope c2 = Polytope::from_points(shifted);
    PolytopeTriangulation g = glue_triangulations(triangulate_polytope(c1), triangulate_polytope(c2));
    CHECK(g.pieces.size() == 48);
    CHECK(triangulation_valid(g));
}

TEST_CASE("gluing disjoint polytopes") {
    Polytope s1 = unit_square_poly();
    Polytope s2 = Polytope::from_points(
        {{Rat(3), Rat(0)}, {Rat(4), Rat(0)}, {Rat(4), Rat(1)}, {Rat(3), Rat(1)}});
    PolytopeTriangulation g = glue_triangulations(triangulate_polytope(s1), triangulate_polytope(s2));
    CHECK(g.pieces.size() == 8);
    CHECK(triangulation_valid(g));
}

TEST_CASE("gluing rejects overlapping polytopes") {
    Polytope s1 = unit_square_poly();
    Polytope s2 = Polytope::from_points(
        {{Rat(1, 2), Rat(0)}, {Rat(3, 2), Rat(0)}, {Rat(3, 2), Rat(1)}, {Rat(1, 2), Rat(1)}});
    CHECK_THROWS_AS(glue_triangulations(triangulate_polytope(s1), triangulate_polytope(s2)), Error);
}

TEST_CASE("degenerate polytope triangulates to the point") {
    Polytope pt = Polytope::from_points({{Rat(2), Rat(3)}});
    PolytopeTriangulation t = triangulate_polytope(pt);
    CHECK(t.pieces.size() == 1);
    CHECK(t.pieces[0].size() == 1);
}

TEST_CASE("polytope guards") {
    // dimension guard (default 6) triggers on a 7-dimensional simplex
    std::vector<RatPoint> pts{RatPoint(7, Rat(0))};
    for (int i = 0; i < 7; ++i) {
        RatPoint e(7, Rat(0));
        e[i] = 1;
        pts.push_back(e);
    }
    CHECK_THROWS_AS(Polytope::from_points(pts), Error);
}
