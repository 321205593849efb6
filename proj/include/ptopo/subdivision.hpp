#pragma once

#include "ptopo/complex.hpp"

namespace ptopo {

struct BarycentricResult {
    SimplicialComplex complex;
    /// For each vertex of the subdivision: the (dim, index) of the
    /// source simplex whose barycenter it is.
    std::vector<std::pair<int, size_t>> vertex_source;
};

/// Barycentric subdivision: vertices at barycenters of all simplices,
/// top simplices the flags of faces.
BarycentricResult barycentric_subdivision(const SimplicialComplex& k);

inline SimplicialComplex barycentric(const SimplicialComplex& k) {
    return barycentric_subdivision(k).complex;
}

/// Subcomplex of Bs(K) spanned by all simplices disjoint from Bs(K^j).
/// Verifies first that Bs(K^j) sits inside Bs(K) as a full subcomplex.
SimplicialComplex full_subcomplex_complement(const SimplicialComplex& k, int j);

/// Simplicial realization of the (n-d-1)-dimensional dual skeleton of a
/// closed n-manifold triangulation: the Bs(K)-complement of Bs(K^{n-d-1}).
SimplicialComplex dual_skeleton(const SimplicialComplex& k, int d);

} // namespace ptopo
