// Acceptance suite: runs every criterion at its stated tolerance and
// prints one pass/fail line per criterion.

#include "helpers.hpp"

#include "ptopo/chain.hpp"
#include "ptopo/deform.hpp"
#include "ptopo/fixtures.hpp"
#include "ptopo/flatnorm.hpp"
#include "ptopo/homology.hpp"
#include "ptopo/io_json.hpp"
#include "ptopo/lp.hpp"
#include "ptopo/refine.hpp"
#include "ptopo/steenrod.hpp"
#include "ptopo/subdivision.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ptopo;
using namespace testutil;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name << " ("
         << std::fixed;
    line.precision(1);
    line << secs << " s)";
    if (!detail.empty()) line << " -- " << detail;
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
}

Chain random_chain(const SimplicialComplex& k, int dim, std::mt19937_64& rng, size_t terms,
                   long range) {
    Chain c = zero_chain(k, dim);
    for (size_t t = 0; t < terms && k.count(dim) > 0; ++t)
        c.add(rng() % k.count(dim),
              Int(static_cast<long>(rng() % static_cast<uint64_t>(2 * range + 1)) - range));
    return c;
}

Polytope random_polytope(std::mt19937_64& rng, size_t d, size_t max_pts) {
    for (;;) {
        std::vector<RatPoint> pts;
        size_t n = d + 1 + rng() % (max_pts - d);
        for (size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, d, 3, 4));
        Polytope p = Polytope::hull_of(pts);
        if (p.dim() == d && p.points.size() >= d + 1 && p.points.size() <= max_pts) return p;
    }
}

SimplicialComplex leg_triangle(const Rat& a, const Rat& b) {
    std::vector<RatPoint> pts{{Rat(0), Rat(0)}, {a, Rat(0)}, {Rat(0), b}};
    return SimplicialComplex::from_simplices(2, pts, {{0, 1, 2}});
}

bool pieces_pairwise_ok(const PolytopeTriangulation& t) {
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

// ---- criterion bodies ----

bool c1_boundary_soundness(std::string& detail) {
    std::mt19937_64 rng(1001);
    std::vector<SimplicialComplex> hosts;
    for (const SimplicialComplex& base :
         {fixtures::circle(), fixtures::sphere(2), fixtures::torus7(), fixtures::rp2(),
          fixtures::klein_bottle()}) {
        hosts.push_back(base);
        hosts.push_back(barycentric(base));
        hosts.push_back(barycentric(barycentric(base)));
    }
    size_t done = 0;
    while (done < 1000) {
        const SimplicialComplex& k = hosts[rng() % hosts.size()];
        int dim = 1 + static_cast<int>(rng() % static_cast<uint64_t>(k.dim()));
        Chain c = random_chain(k, dim, rng, 8, 5);
        if (c.dim < 1) continue;
        if (c.dim == 1) {
            // boundary of a 1-chain is a 0-chain; dd needs dim >= 2
            c = random_chain(k, 2, rng, 8, 5);
        }
        if (!boundary(boundary(c)).is_zero()) {
            detail = "nonzero double boundary found";
            return false;
        }
        ++done;
    }
    detail = "1000 chains over " + std::to_string(hosts.size()) + " refinements";
    return true;
}

bool c2_triangulation_counts_and_partition(std::string& detail) {
    std::vector<RatPoint> tri{{Rat(0), Rat(0)}, {Rat(3), Rat(0)}, {Rat(0), Rat(2)}};
    if (triangulate_polytope(Polytope::from_points(tri)).pieces.size() != 1) {
        detail = "simplex did not stay whole";
        return false;
    }
    Polytope square = Polytope::from_points(
        {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
    if (triangulate_polytope(square).pieces.size() != 4) {
        detail = "square != 4 pieces";
        return false;
    }
    std::vector<RatPoint> cpts;
    for (int i = 0; i < 8; ++i) cpts.push_back({Rat(i & 1), Rat((i >> 1) & 1), Rat((i >> 2) & 1)});
    if (triangulate_polytope(Polytope::from_points(cpts)).pieces.size() != 24) {
        detail = "cube != 24 pieces";
        return false;
    }
    std::mt19937_64 rng(1002);
    for (int trial = 0; trial < 50; ++trial) {
        size_t d = 2 + trial % 3; // dimensions 2..4
        Polytope p = random_polytope(rng, d, 12);
        PolytopeTriangulation t = triangulate_polytope(p);
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
        if (sum != fan_volume(p, chart)) {
            detail = "partition identity failed on trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "counts 1/4/24 and 50 exact partitions";
    return true;
}

bool c3_affine_equivariance(std::string& detail) {
    std::mt19937_64 rng(1003);
    std::vector<Polytope> polys;
    for (int i = 0; i < 10; ++i) polys.push_back(random_polytope(rng, 2 + i % 2, 8));
    int maps = 0;
    while (maps < 100) {
        const Polytope& p = polys[maps % polys.size()];
        size_t d = p.points[0].size();
        RatMat a(d, RatVec(d));
        for (auto& row : a)
            for (auto& v : row) v = random_rat(rng, 2, 3);
        if (rat_det(a) == 0) continue;
        RatVec b(d);
        for (auto& v : b) v = random_rat(rng, 2, 3);
        std::vector<RatPoint> mapped;
        for (const auto& x : p.points) mapped.push_back(vadd(mat_vec(a, x), b));
        PolytopeTriangulation t1 = triangulate_polytope(Polytope::from_points(mapped, false));
        PolytopeTriangulation t0 = triangulate_polytope(p);
        for (auto& v : t0.vertices) v = vadd(mat_vec(a, v), b);
        if (canon_pieces(t1) != canon_pieces(t0)) {
            detail = "equivariance failed on map " + std::to_string(maps);
            return false;
        }
        ++maps;
    }
    detail = "100 maps x 10 polytopes, exact set equality";
    return true;
}

bool c4_gluing_validity(std::string& detail) {
    std::mt19937_64 rng(1004);
    int done = 0;
    while (done < 50) {
        size_t d = 2 + rng() % 2;
        Polytope p1 = random_polytope(rng, d, d == 2 ? 7 : 8);
        FaceLattice lat = enumerate_faces(p1);
        if (lat.by_dim[d - 1].empty()) continue;
        const Face& f = lat.by_dim[d - 1][rng() % lat.by_dim[d - 1].size()];
        // supporting functional of the chosen facet
        auto halfspaces = facet_halfspaces(p1, lat);
        const Halfspace* hf = nullptr;
        for (size_t fi = 0; fi < lat.by_dim[d - 1].size(); ++fi)
            if (lat.by_dim[d - 1][fi].point_ids == f.point_ids) hf = &halfspaces[fi];
        if (!hf) continue;
        std::vector<RatPoint> pts2;
        for (size_t i : f.point_ids) pts2.push_back(p1.points[i]);
        size_t extra = 1 + rng() % 3;
        for (size_t e = 0; e < extra; ++e) {
            RatPoint q = random_point(rng, d, 3, 4);
            if (hf->eval(q) < 0) pts2.push_back(q); // strictly on the far side
        }
        Polytope p2 = Polytope::hull_of(pts2);
        if (p2.dim() != d) continue;
        PolytopeTriangulation g;
        try {
            g = glue_triangulations(triangulate_polytope(p1), triangulate_polytope(p2));
        } catch (const Error&) {
            continue; // the pair did not meet in a common face; resample
        }
        if (!pieces_pairwise_ok(g)) {
            detail = "invalid glue on pair " + std::to_string(done);
            return false;
        }
        ++done;
    }
    detail = "50 face-sharing pairs, all pairwise intersections are faces";
    return true;
}

bool c5_refine_embedding(std::string& detail) {
    std::mt19937_64 rng(1005);
    std::vector<SimplicialComplex> hosts{fixtures::unit_square(), fixtures::grid_square(2),
                                         fixtures::grid_square(3)};
    int done = 0;
    while (done < 30) {
        size_t which = static_cast<size_t>(done) % hosts.size();
        const SimplicialComplex& host = hosts[which];
        Rat w(static_cast<long>(which) + 1); // host side lengths are 1, 2, 3
        Polytope p;
        if (done % 2 == 0) {
            // a segment
            RatPoint a = {Rat(1 + static_cast<long>(rng() % 14), 16) * w,
                          Rat(1 + static_cast<long>(rng() % 14), 16) * w};
            RatPoint b = {Rat(1 + static_cast<long>(rng() % 14), 16) * w,
                          Rat(1 + static_cast<long>(rng() % 14), 16) * w};
            if (a == b) continue;
            p = Polytope::from_points({a, b}, false);
        } else {
            // a triangle
            std::vector<RatPoint> pts;
            for (int i = 0; i < 3; ++i)
                pts.push_back({Rat(1 + static_cast<long>(rng() % 14), 16) * w,
                               Rat(1 + static_cast<long>(rng() % 14), 16) * w});
            if (affine_rank(pts) != 2) continue;
            p = Polytope::from_points(pts, false);
        }
        RefineReport r;
        try {
            r = refine_to_embed(host, {p});
        } catch (const Error&) {
            continue; // sampled outside the host region
        }
        size_t m = p.dim();
        // membership agreement on 1000 rational samples
        FaceLattice lat = enumerate_faces(p);
        auto eqs = hull_equations(p);
        auto facets = facet_halfspaces(p, lat);
        auto inside_poly = [&](const RatPoint& x) {
            for (const auto& e : eqs)
                if (e.eval(x) != 0) return false;
            for (const auto& fh : facets)
                if (fh.eval(x) < 0) return false;
            return true;
        };
        std::vector<size_t> inside_simplices;
        for (size_t i = 0; i < r.complex.count(static_cast<int>(m)); ++i) {
            auto pts = r.complex.simplex_points(static_cast<int>(m), i);
            bool in = true;
            for (const auto& x : pts)
                if (!inside_poly(x)) { in = false; break; }
            if (in) inside_simplices.push_back(i);
        }
        for (int s = 0; s < 1000; ++s) {
            // random rational point in p
            RatPoint x(p.points[0].size(), Rat(0));
            Rat total = 0;
            std::vector<Rat> ws;
            for (size_t i = 0; i < p.points.size(); ++i) {
                Rat v(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 3));
                ws.push_back(v);
                total += v;
            }
            for (size_t i = 0; i < p.points.size(); ++i)
                x = vadd(x, vscale(ws[i] / total, p.points[i]));
            bool covered = false;
            for (size_t i : inside_simplices) {
                auto pts = r.complex.simplex_points(static_cast<int>(m), i);
                auto lam = barycentric_coords(pts, x);
                if (!lam) continue;
                bool nonneg = true;
                for (const auto& l : *lam)
                    if (l < 0) { nonneg = false; break; }
                if (nonneg) { covered = true; break; }
            }
            if (!covered) {
                detail = "sample not covered on instance " + std::to_string(done);
                return false;
            }
        }
        // exact area identity
        std::vector<RatPoint> frame{p.points[0]};
        for (const auto& x : p.points) {
            auto cand = frame;
            cand.push_back(x);
            if (affine_rank(cand) == cand.size() - 1) frame = cand;
            if (frame.size() == m + 1) break;
        }
        Chart chart = chart_of(frame);
        Rat sum = 0;
        for (size_t i : inside_simplices)
            sum += chart_volume(r.complex.simplex_points(static_cast<int>(m), i), chart);
        if (sum != fan_volume(p, chart)) {
            detail = "embedded volume mismatch on instance " + std::to_string(done);
            return false;
        }
        // locality audit: input simplices disjoint from every affected top
        // must appear verbatim
        auto out = simplex_coordinate_set(r.complex);
        for (auto [td, ti] : host.maximal_simplices()) {
            auto tpts = host.simplex_points(td, ti);
            bool meets = false;
            for (const auto& key : r.affected_tops) {
                auto apts = host.simplex_points(key.first, key.second);
                if (!simplex_pair_meets_in_face(tpts, apts, {})) { meets = true; break; }
            }
            if (!meets) {
                auto sorted = tpts;
                std::sort(sorted.begin(), sorted.end());
                if (!out.count(sorted)) {
                    detail = "locality violated on instance " + std::to_string(done);
                    return false;
                }
            }
        }
        ++done;
    }
    detail = "30 instances, 1000 samples each, locality clean";
    return true;
}

bool c6_homology_fixtures(std::string& detail) {
    struct Expect {
        const char* name;
        SimplicialComplex k;
        // integral groups: free ranks and torsion lists per dim
        std::vector<size_t> betti;
        std::vector<std::vector<long>> torsion;
        std::map<uint64_t, std::vector<size_t>> field_dims;
    };
    std::vector<Expect> table;
    table.push_back({"S1", fixtures::circle(), {1, 1}, {{}, {}},
                     {{2, {1, 1}}, {3, {1, 1}}, {5, {1, 1}}}});
    table.push_back({"S2", fixtures::sphere(2), {1, 0, 1}, {{}, {}, {}},
                     {{2, {1, 0, 1}}, {3, {1, 0, 1}}, {5, {1, 0, 1}}}});
    table.push_back({"T2", fixtures::torus7(), {1, 2, 1}, {{}, {}, {}},
                     {{2, {1, 2, 1}}, {3, {1, 2, 1}}, {5, {1, 2, 1}}}});
    table.push_back({"RP2", fixtures::rp2(), {1, 0, 0}, {{}, {2}, {}},
                     {{2, {1, 1, 1}}, {3, {1, 0, 0}}, {5, {1, 0, 0}}}});
    table.push_back({"Klein", fixtures::klein_bottle(), {1, 1, 0}, {{}, {2}, {}},
                     {{2, {1, 2, 1}}, {3, {1, 1, 0}}, {5, {1, 1, 0}}}});
    table.push_back({"L(3,1)", fixtures::lens_3_1(), {1, 0, 0, 1}, {{}, {3}, {}, {}},
                     {{2, {1, 0, 0, 1}}, {3, {1, 1, 1, 1}}, {5, {1, 0, 0, 1}}}});
    for (const auto& e : table) {
        HomologyGroups hz = homology(e.k, Ring::Z());
        for (size_t d = 0; d < e.betti.size(); ++d) {
            if (hz.at(d).free_rank != e.betti[d]) {
                detail = std::string(e.name) + ": betti mismatch at dim " + std::to_string(d);
                return false;
            }
            std::vector<long> tors;
            for (const auto& t : hz.at(d).torsion) tors.push_back(t.convert_to<long>());
            std::sort(tors.begin(), tors.end());
            if (tors != e.torsion[d]) {
                detail = std::string(e.name) + ": torsion mismatch at dim " + std::to_string(d);
                return false;
            }
        }
        for (const auto& [p, dims] : e.field_dims) {
            HomologyGroups hp = homology(e.k, Ring::Zp(p));
            for (size_t d = 0; d < dims.size(); ++d)
                if (hp.at(d).free_rank != dims[d]) {
                    detail = std::string(e.name) + ": Z" + std::to_string(p) +
                             " dim mismatch at " + std::to_string(d);
                    return false;
                }
            // universal coefficients cross-check
            auto count_p = [&](const GroupSummary& g) {
                size_t c = 0;
                for (const auto& t : g.torsion)
                    if (t % static_cast<long>(p) == 0) ++c;
                return c;
            };
            for (size_t d = 0; d < dims.size(); ++d) {
                size_t expect = hz.at(d).free_rank + count_p(hz.at(d)) +
                                (d > 0 ? count_p(hz.at(d - 1)) : 0);
                if (hp.at(d).free_rank != expect) {
                    detail = std::string(e.name) + ": UCT failed at dim " + std::to_string(d);
                    return false;
                }
            }
        }
    }
    detail = "6 fixtures x {Z, Z2, Z3, Z5} + UCT";
    return true;
}

bool c7_dual_complement(std::string& detail) {
    auto euler = [](const SimplicialComplex& k) {
        long chi = 0;
        for (int d = 0; d <= k.dim(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k.count(d));
        return chi;
    };
    // tetrahedron boundary: complement of Bs(K^0) is the subdivided dual
    // graph of the 4 faces: beta1 = 3, chi = -2
    SimplicialComplex s2 = fixtures::sphere(2);
    SimplicialComplex dual = full_subcomplex_complement(s2, 0);
    HomologyGroups h = homology(dual, Ring::Z());
    if (!(euler(dual) == -2 && h.at(0).free_rank == 1 && h.at(1).free_rank == 3)) {
        detail = "tetrahedron dual graph mismatch";
        return false;
    }
    if (dual.count(0) != 10 || dual.count(1) != 12) {
        detail = "tetrahedron dual graph counts";
        return false;
    }
    // 7-vertex torus, k=0 and k=1
    SimplicialComplex t7 = fixtures::torus7();
    SimplicialComplex td = dual_skeleton(t7, 1); // complement of Bs(K^0)
    HomologyGroups th = homology(td, Ring::Z());
    if (!(euler(td) == -7 && th.at(0).free_rank == 1 && th.at(1).free_rank == 8)) {
        detail = "torus k=0 dual mismatch";
        return false;
    }
    SimplicialComplex td0 = dual_skeleton(t7, 0); // complement of Bs(K^1)
    if (!(td0.dim() == 0 && td0.count(0) == 14)) {
        detail = "torus k=1 dual mismatch";
        return false;
    }
    // boundary of the 4-simplex, k=0 and k=1
    SimplicialComplex s3 = fixtures::sphere(3);
    SimplicialComplex d2 = dual_skeleton(s3, 2);
    HomologyGroups h2 = homology(d2, Ring::Z());
    if (!(h2.at(0).free_rank == 1 && h2.at(1).free_rank == 0 && h2.at(2).free_rank == 4)) {
        detail = "S3 k=0 dual mismatch";
        return false;
    }
    SimplicialComplex d1 = dual_skeleton(s3, 1);
    HomologyGroups h1 = homology(d1, Ring::Z());
    if (!(h1.at(0).free_rank == 1 && h1.at(1).free_rank == 6)) {
        detail = "S3 k=1 dual mismatch";
        return false;
    }
    detail = "tetrahedron beta1=3 chi=-2; torus and S3 checks exact";
    return true;
}

bool c8_flat_norm(std::string& detail) {
    std::mt19937_64 rng(1008);
    // 40-case LP vs brute force
    std::vector<SimplicialComplex> hosts;
    hosts.push_back(fixtures::unit_square());
    hosts.push_back(fixtures::annulus());
    hosts.push_back(leg_triangle(Rat(1, 2), Rat(1, 2)));
    hosts.push_back(leg_triangle(Rat(6), Rat(5)));
    hosts.push_back(fixtures::grid_square(2));
    int done = 0;
    while (done < 40) {
        const SimplicialComplex& k = hosts[done % hosts.size()];
        Chain t = random_chain(k, 1, rng, 4, 2);
        FlatDecomposition lp = flat_norm_lp(t);
        FlatDecomposition bf = flat_norm_bruteforce(t, 2);
        if (!lp.integral) {
            detail = "non-integral LP vertex in the suite at case " + std::to_string(done);
            return false;
        }
        if (lp.objective_exact != bf.objective_exact) {
            detail = "LP/brute-force mismatch at case " + std::to_string(done);
            return false;
        }
        ++done;
    }
    // crossover of F(boundary of leg triangle with legs s): area s^2/2
    // vs perimeter (2 + sqrt 2) s, crossing at s* = 2 (2 + sqrt 2)
    auto area_wins = [&](const Rat& s) {
        SimplicialComplex k = leg_triangle(s, s);
        Chain c2 = zero_chain(k, 2);
        c2.add(0, 1);
        FlatDecomposition d = flat_norm_lp(boundary(c2));
        return !d.s_terms.empty();
    };
    Rat lo = 1, hi = 20;
    for (int it = 0; it < 16; ++it) {
        Rat mid = (lo + hi) / 2;
        if (area_wins(mid))
            lo = mid;
        else
            hi = mid;
    }
    double found = ((lo + hi) / 2).convert_to<double>();
    double target = 2 * (2 + std::sqrt(2.0));
    if (std::fabs(found - target) / target > 0.01) {
        detail = "crossover " + std::to_string(found) + " vs " + std::to_string(target);
        return false;
    }
    // 500 random chains: F(T) <= M(T) and F(boundary S) <= M(S)
    for (int trial = 0; trial < 250; ++trial) {
        const SimplicialComplex& k = hosts[trial % 2 == 0 ? 0 : 1];
        Chain t = random_chain(k, 1, rng, 5, 2);
        if (flat_norm_lp(t, false).value > mass(t) * Real(1 + 1e-12)) {
            detail = "F(T) > M(T)";
            return false;
        }
        Chain s = random_chain(k, 2, rng, 3, 2);
        if (s.is_zero()) continue;
        if (flat_norm_lp(boundary(s), false).value > mass(s) * Real(1 + 1e-12)) {
            detail = "F(dS) > M(S)";
            return false;
        }
    }
    detail = "40 LP=BF cases, crossover within 1%, 500 bounds";
    return true;
}

bool c9_steenrod_algebra(std::string& detail) {
    if (!adem_reduce(element_of({1, 1}, 2)).terms.empty()) {
        detail = "Sq1 Sq1 != 0";
        return false;
    }
    SteenrodElement s12 = adem_reduce(element_of({1, 2}, 2));
    if (s12.terms.size() != 1 || s12.terms.begin()->first != SqWord{3}) {
        detail = "Sq1 Sq2 != Sq3";
        return false;
    }
    SteenrodElement s22 = adem_reduce(element_of({2, 2}, 2));
    if (s22.terms.size() != 1 || s22.terms.begin()->first != SqWord{3, 1}) {
        detail = "Sq2 Sq2 != Sq3 Sq1";
        return false;
    }
    // admissible dimensions: library vs composition filter
    for (int d = 0; d <= 12; ++d) {
        std::vector<SqWord> oracle;
        SqWord acc;
        std::function<void(int)> rec = [&](int remaining) {
            if (remaining == 0) {
                if (word_admissible(acc, 2)) oracle.push_back(acc);
                return;
            }
            for (int i = 1; i <= remaining; ++i) {
                acc.push_back(i);
                rec(remaining - i);
                acc.pop_back();
            }
        };
        rec(d);
        std::sort(oracle.begin(), oracle.end());
        if (admissible_basis(d, 2) != oracle) {
            detail = "admissible count mismatch at degree " + std::to_string(d);
            return false;
        }
    }
    // confluence on 500 random words
    std::mt19937_64 rng(1009);
    for (int trial = 0; trial < 500; ++trial) {
        SqWord w;
        size_t len = 1 + rng() % 4;
        for (size_t i = 0; i < len; ++i) w.push_back(1 + static_cast<int>(rng() % 8));
        if (word_degree(w, 2) > 24) continue;
        SteenrodElement a = adem_reduce(element_of(w, 2), RewriteOrder::Leftmost);
        SteenrodElement b = adem_reduce(element_of(w, 2), RewriteOrder::Rightmost);
        SteenrodElement c = adem_reduce(element_of(w, 2), RewriteOrder::Random, &rng);
        if (!(a == b && a == c)) {
            detail = "confluence failed on " + word_str(w, 2);
            return false;
        }
        for (const auto& [word, coeff] : a.terms) {
            (void)coeff;
            if (!word_admissible(word, 2)) {
                detail = "inadmissible output for " + word_str(w, 2);
                return false;
            }
        }
    }
    detail = "Adem identities, dims<=12, 500-word confluence";
    return true;
}

bool c10_cochain_operations(std::string& detail) {
    // axioms (1) and (2) on every mod-2 fixture class
    for (const SimplicialComplex& k :
         {fixtures::circle(), fixtures::sphere(2), fixtures::torus7(), fixtures::rp2(),
          fixtures::klein_bottle()}) {
        CohomologyResult c = cohomology(k, Ring::Zp(2));
        for (size_t d = 0; d < c.generators.size(); ++d)
            for (const auto& g : c.generators[d]) {
                Cochain s0 = sq_on_cochain(0, g);
                if (!(s0.values == g.values)) {
                    detail = "Sq0 != id";
                    return false;
                }
                if (d >= 1) {
                    Cochain top = sq_on_cochain(static_cast<int>(d), g);
                    if (!cohomologous(top, cup_product(g, g))) {
                        detail = "top square is not the cup square";
                        return false;
                    }
                }
            }
    }
    // Sq^1 = beta_2 on the projective plane
    {
        SimplicialComplex rp2 = fixtures::rp2();
        CohomologyResult c = cohomology(rp2, Ring::Zp(2));
        const Cochain& x = c.generators[1][0];
        if (!cohomologous(sq_on_cochain(1, x), bockstein(x, 2))) {
            detail = "Sq1 != beta2 on RP2";
            return false;
        }
        if (is_coboundary(sq_on_cochain(1, x))) {
            detail = "Sq1 x vanished on RP2";
            return false;
        }
    }
    // Cartan on the product of two projective planes
    {
        SimplicialComplex rp2 = fixtures::rp2();
        SimplicialComplex prod = product_complex(rp2, rp2);
        CohomologyResult c = cohomology(rp2, Ring::Zp(2));
        const Cochain& x = c.generators[1][0];
        SimplicialMap proj1, proj2;
        proj1.src = proj2.src = &prod;
        proj1.dst = proj2.dst = &rp2;
        size_t nl = rp2.coord_count();
        for (size_t v = 0; v < prod.coord_count(); ++v) {
            proj1.vmap.push_back(static_cast<VertexId>(v / nl));
            proj2.vmap.push_back(static_cast<VertexId>(v % nl));
        }
        Cochain a = pullback(proj1, x);
        Cochain b = pullback(proj2, x);
        Cochain ab = cup_product(a, b);
        for (int kk = 0; kk <= 2; ++kk) {
            Cochain lhs = sq_on_cochain(kk, ab);
            Cochain rhs = zero_cochain(prod, ab.deg + kk, Ring::Zp(2));
            for (const auto& term : cartan_expand(kk, a.deg, b.deg))
                rhs = add(rhs,
                          cup_product(sq_on_cochain(term.left, a), sq_on_cochain(term.right, b)));
            if (!cohomologous(lhs, rhs)) {
                detail = "Cartan failed at k=" + std::to_string(kk);
                return false;
            }
        }
    }
    // beta_3 on the lens space is nonzero; beta_p on the torus vanishes
    {
        SimplicialComplex lens = fixtures::lens_3_1();
        CohomologyResult c = cohomology(lens, Ring::Zp(3));
        Cochain beta = bockstein(c.generators[1][0], 3);
        if (is_coboundary(beta)) {
            detail = "beta_3 vanished on L(3,1)";
            return false;
        }
        SimplicialComplex t = fixtures::torus7();
        for (uint64_t p : {2ull, 3ull, 5ull}) {
            CohomologyResult ct = cohomology(t, Ring::Zp(p));
            for (const auto& g : ct.generators[1])
                if (!is_coboundary(bockstein(g, p))) {
                    detail = "beta_p nonzero on the torus";
                    return false;
                }
        }
    }
    detail = "axioms, Sq1=beta2, Cartan, lens beta3, torus beta_p";
    return true;
}

bool c11_deformation_numerics(std::string& detail) {
    // psi slope bound on 10^4-point grids for 20 parameter sets
    std::mt19937_64 rng(1011);
    std::uniform_real_distribution<double> u(0, 1);
    for (int set = 0; set < 20; ++set) {
        double eta = 0.3 + u(rng);
        double da = eta * (0.02 + 0.08 * u(rng)); // 3 da < eta guaranteed
        double mu = u(rng);
        ProfileParams p{mu, da, eta};
        double bound = p.slope_bound() + 1e-6;
        size_t grid = 10000;
        double tmax = eta * 1.2;
        double prev = smooth_profile(p, 0);
        for (size_t i = 1; i <= grid; ++i) {
            double t1 = tmax * static_cast<double>(i) / grid;
            double cur = smooth_profile(p, t1);
            double slope = (cur - prev) / (tmax / grid);
            if (slope > bound) {
                detail = "slope bound violated on set " + std::to_string(set);
                return false;
            }
            prev = cur;
        }
    }
    // mass contraction experiment
    ProfileParams p{1.0, 0.1, 1.0};
    std::vector<double> gammas{0.5, 0.25, 0.125};
    for (auto [m, k] : {std::pair{2, 0}, {2, 1}, {3, 1}}) {
        MassContractionResult r = mass_contraction_experiment(m, k, gammas, p, 0.0);
        for (size_t i = 0; i < gammas.size(); ++i)
            if (r.measured[i] > r.bounds[i]) {
                detail = "measured ratio exceeds the bound";
                return false;
            }
        double expect = m - k;
        if (std::fabs(r.fitted_exponent - expect) / expect > 0.05) {
            detail = "exponent fit off for (m,k)=(" + std::to_string(m) + "," + std::to_string(k) +
                     ")";
            return false;
        }
    }
    detail = "20 slope grids, 3 contraction fits";
    return true;
}

bool c12_cli_determinism(std::string& detail) {
#ifndef PTOPO_CLI_PATH
    detail = "CLI path not configured";
    return false;
#else
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ptopo_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto file = [&](const std::string& n) { return (dir / n).string(); };

    // inputs
    write_file(file("square.json"), fixtures::unit_square().to_json());
    write_file(file("rp2.json"), fixtures::rp2().to_json());
    write_file(file("torus.json"), fixtures::torus7().to_json());
    write_file(file("annulus.json"), fixtures::annulus().to_json());
    write_file(file("cube.json"), [] {
        std::string cube = R"({"points":[)";
        for (int i = 0; i < 8; ++i)
            cube += std::string(i ? "," : "") + "[\"" + std::to_string(i & 1) + "\",\"" +
                    std::to_string((i >> 1) & 1) + "\",\"" + std::to_string((i >> 2) & 1) + "\"]";
        return cube + "]}";
    }());
    write_file(file("seg.json"), R"({"points":[["1/4","0"],["3/4","0"]]})");
    write_file(file("chain.json"),
               R"({"dim":1,"terms":[{"simplex":[3,4],"coeff":"1"},{"simplex":[4,5],"coeff":"1"},{"simplex":[3,5],"coeff":"-1"}]})");

    std::vector<std::pair<std::string, std::string>> commands = {
        {"tri", "tri IN/cube.json -o OUT/tri.json"},
        {"subdivide", "subdivide IN/square.json -o OUT/sub.json"},
        {"dual", "dual IN/torus.json -d 1 -o OUT/dual.json"},
        {"refine", "refine IN/square.json -p IN/seg.json -o OUT/refined.json"},
        {"homology", "homology IN/rp2.json --coeff z2 -o OUT/hom.json"},
        {"flatnorm", "flatnorm IN/annulus.json IN/chain.json -o OUT/fn.json --csv OUT/fn.csv"},
        {"reduce", "steenrod reduce --p 2 --word 2,2 -o OUT/red.json"},
        {"apply", "steenrod apply IN/rp2.json --i 1 --mod 2 --class 1:0 -o OUT/sq.json"},
        {"bockstein", "bockstein IN/rp2.json --p 2 --class 1:0 -o OUT/bk.json"},
        {"profile", "profile psi --mu 0.5 --delta-a 0.05 --eta 1 --points 64 --csv OUT/prof.csv"},
        {"squash", "experiment squash --gamma 0.5,0.25 --m 2 --k 0 -o OUT/squash.json"},
    };

    std::vector<std::map<std::string, std::string>> artifacts(3);
    for (int run = 0; run < 3; ++run) {
        fs::path outdir = dir / ("run" + std::to_string(run));
        fs::create_directories(outdir);
        for (const auto& [name, tmpl] : commands) {
            std::string cmd = tmpl;
            auto replace_all = [&](const std::string& from, const std::string& to) {
                size_t pos = 0;
                while ((pos = cmd.find(from, pos)) != std::string::npos) {
                    cmd.replace(pos, from.size(), to);
                    pos += to.size();
                }
            };
            replace_all("IN", dir.string());
            replace_all("OUT", outdir.string());
            std::string full = std::string(PTOPO_CLI_PATH) + " --seed 7 " + cmd + " > /dev/null 2>&1";
            int rc = WEXITSTATUS(std::system(full.c_str()));
            if (rc != 0) {
                detail = "command failed: " + name + " rc=" + std::to_string(rc);
                return false;
            }
        }
        for (const auto& entry : fs::directory_iterator(outdir)) {
            std::string fname = entry.path().filename().string();
            if (fname.find(".manifest.json") != std::string::npos) continue; // carries timing
            artifacts[run][fname] = read_file(entry.path().string());
        }
    }
    if (artifacts[0].empty()) {
        detail = "no artifacts produced";
        return false;
    }
    for (int run = 1; run < 3; ++run)
        if (artifacts[run] != artifacts[0]) {
            detail = "artifacts differ between runs";
            return false;
        }
    detail = std::to_string(artifacts[0].size()) + " artifacts byte-identical across 3 runs";
    return true;
#endif
}

} // namespace

int main() {
    criterion(1, "boundary soundness dd=0 on randomized refinements", c1_boundary_soundness);
    criterion(2, "polytope triangulation counts and exact partition", c2_triangulation_counts_and_partition);
    criterion(3, "affine equivariance of the triangulation", c3_affine_equivariance);
    criterion(4, "gluing validity on face-sharing pairs", c4_gluing_validity);
    criterion(5, "skeleton embedding with locality", c5_refine_embedding);
    criterion(6, "homology fixtures over Z, Z2, Z3, Z5", c6_homology_fixtures);
    criterion(7, "dual complement desk-scale checks", c7_dual_complement);
    criterion(8, "flat norm LP vs brute force and bounds", c8_flat_norm);
    criterion(9, "Steenrod algebra rewriting", c9_steenrod_algebra);
    criterion(10, "cochain-level operations", c10_cochain_operations);
    criterion(11, "deformation numerics", c11_deformation_numerics);
    criterion(12, "CLI determinism", c12_cli_determinism);
    if (failures == 0)
        std::cout << "all criteria passed" << std::endl;
    else
        std::cout << failures << " criterion(s) failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
