#pragma once

#include "ptopo/complex.hpp"
#include "ptopo/linalg.hpp"
#include "ptopo/volume.hpp"

#include <string>
#include <vector>

namespace ptopo {

/// Affine functional a.x + b; halfspace = { h >= 0 }.
struct Halfspace {
    RatVec a;
    Rat b = 0;
    Rat eval(const RatPoint& x) const { return dot(a, x) + b; }
};

/// V-representation convex polytope: exactly the extremal points.
struct Polytope {
    std::vector<RatPoint> points;

    int ambient() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
    size_t dim() const { return affine_rank(points); }

    /// Validates the extremality invariant (no listed point is a convex
    /// combination of the others).
    static Polytope from_points(std::vector<RatPoint> pts, bool verify_extremal = true);
    /// Drop non-extremal points, then construct.
    static Polytope hull_of(std::vector<RatPoint> pts);

    std::string to_json() const;
    static Polytope from_json(const std::string& text);
};

struct Face {
    std::vector<size_t> point_ids; // sorted indices into Polytope::points
    int dim = 0;
};

struct FaceLattice {
    std::vector<std::vector<Face>> by_dim; // F_0 .. F_d (top face last)

    const Face* find(const std::vector<size_t>& ids) const;
    /// Facets of a face: one dimension lower, point set contained.
    std::vector<const Face*> facets_of(const Face& f) const;
};

/// Complete combinatorial face enumeration (supporting-hyperplane side
/// checks over all spanning point subsets, then intersection closure).
FaceLattice enumerate_faces(const Polytope& p);

RatPoint barycenter(const std::vector<RatPoint>& pts);

/// Affine hull equations (functionals vanishing on the polytope).
std::vector<Halfspace> hull_equations(const Polytope& p);
/// Facet-supporting halfspaces, oriented to contain the polytope.
std::vector<Halfspace> facet_halfspaces(const Polytope& p, const FaceLattice& lat);

bool point_in_polytope(const Polytope& p, const RatPoint& x);

/// Intersection with { h >= 0 }: kept extremals plus strict edge
/// crossings. May come out empty or lower dimensional.
Polytope clip_polytope(const Polytope& p, const FaceLattice& lat, const Halfspace& h);

struct PolytopeTriangulation {
    Polytope source;
    std::vector<RatPoint> vertices; // extremal points first, then barycenters
    struct Provenance {
        bool extremal = true;
        std::vector<size_t> barycenter_of; // extremal ids of the owning face
    };
    std::vector<Provenance> provenance;
    std::vector<std::vector<size_t>> pieces; // d-simplices as vertex-id lists

    std::vector<RatPoint> piece_points(size_t i) const;
    std::string to_json() const;
};

/// Barycenter triangulation: process faces by increasing dimension;
/// faces that are simplices stay whole, every other face is coned over
/// its barycenter. Deterministic under (dimension, lexicographic
/// point-id) face order.
PolytopeTriangulation triangulate_polytope(const Polytope& p);

/// Union of two triangulations whose source polytopes intersect in a
/// common face of both (possibly empty). The precondition is checked
/// exactly; violations are input errors.
PolytopeTriangulation glue_triangulations(const PolytopeTriangulation& t1,
                                          const PolytopeTriangulation& t2);

} // namespace ptopo
