#pragma once

#include "ptopo/complex.hpp"
#include "ptopo/volume.hpp"

#include <functional>
#include <map>

namespace ptopo {

/// Integer simplicial chain supported on a host complex.
struct Chain {
    const SimplicialComplex* host = nullptr;
    int dim = 0;
    std::map<size_t, Int> terms; // canonical simplex index -> nonzero coefficient

    void add(size_t index, const Int& coeff);
    /// Add a term given an oriented vertex tuple (sign from sorting).
    void add_oriented(const VertexList& ids, const Int& coeff);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const Chain& o) const {
        return host == o.host && dim == o.dim && terms == o.terms;
    }
};

Chain zero_chain(const SimplicialComplex& k, int dim);
Chain chain_add(const Chain& a, const Chain& b);
Chain chain_scale(const Int& c, const Chain& a);

/// Simplicial alternating-sum boundary; dim 0 chains are rejected.
Chain boundary(const Chain& c);

/// Multiplicity-weighted total volume.
Real mass(const Chain& c);

/// Keep the terms whose simplex satisfies the predicate.
Chain restrict_chain(const Chain& c, const std::function<bool(const SimplicialComplex&, int, size_t)>& keep);

/// Piecewise affine map: one exact affine map per top simplex of the
/// source complex, agreeing on shared faces.
struct PLMap {
    const SimplicialComplex* source = nullptr;
    // per top simplex (in maximal_simplices() order): x -> a*x + b
    std::vector<RatMat> lin;
    std::vector<RatVec> off;

    /// Verifies pairwise agreement on shared faces.
    void check_compatible() const;
    RatPoint apply(size_t top_index, const RatPoint& x) const;
    /// Map a simplex of the source by any top simplex containing it.
    std::vector<RatPoint> map_simplex(int d, size_t i, bool* found = nullptr) const;
};

PLMap identity_map(const SimplicialComplex& k);
/// Global affine map restricted to every top simplex.
PLMap affine_map(const SimplicialComplex& k, const RatMat& a, const RatVec& b);

/// Push a chain forward through a PL map into a target complex that
/// already resolves every image (callers refine first). Degenerate
/// images drop; signs follow orientation in a chart of the image.
Chain pushforward(const Chain& c, const PLMap& f, const SimplicialComplex& target);

std::string chain_to_json(const Chain& c);
Chain chain_from_json(const SimplicialComplex& host, const std::string& text);

} // namespace ptopo
