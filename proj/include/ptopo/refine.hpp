#pragma once

#include "ptopo/complex.hpp"
#include "ptopo/polytope.hpp"

#include <set>

namespace ptopo {

/// Partition of a simplex (given as a polytope) by a list of
/// hyperplane pairs: each part is kept whole when it lies in one closed
/// side, otherwise replaced by its two clips. Coincident hyperplanes
/// are deduplicated projectively.
std::vector<Polytope> halfspace_split(const Polytope& t, const std::vector<Halfspace>& hyperplanes);

struct RefineReport {
    SimplicialComplex complex;
    /// Input top simplices meeting at least one polytope.
    std::set<std::pair<int, size_t>> affected_tops;
    /// Per-dimension counts of simplices subdivided by the
    /// compatibility propagation (the induction frontier sizes).
    std::vector<size_t> frontier_sizes;
    /// Deduplicated hyperplane counts of the split applied per piece.
    std::vector<size_t> piece_hyperplanes;
    size_t pieces_processed = 0;
};

/// Refine a pure triangulation so every polytope becomes a union of
/// simplices of its dimension's skeleton. Local: simplices not meeting
/// the affected tops are preserved verbatim.
RefineReport refine_to_embed(const SimplicialComplex& k, const std::vector<Polytope>& polys);

/// The closed-PL-manifold variant: same engine after checking the
/// polyhedron precondition; splits across an already-refined carrier
/// are applied to all covering simplices at once.
RefineReport refine_in_polyhedron(const SimplicialComplex& k, const std::vector<Polytope>& polys);

} // namespace ptopo
