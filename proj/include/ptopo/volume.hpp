#pragma once

#include "ptopo/complex.hpp"
#include "ptopo/linalg.hpp"

namespace ptopo {

/// k-volume (k-dimensional Hausdorff measure) of a simplex, computed as
/// sqrt(det Gram)/k! from the exact edge Gram matrix. Degenerate
/// simplices return 0.
Real simplex_volume(const std::vector<RatPoint>& pts);
Real simplex_volume(const SimplicialComplex& k, int d, size_t i);

/// Rational affine chart of a simplex's affine hull. Applying it to a
/// point outside the hull is an error, which is what "the chart does
/// not contain the hull" means for whole simplices.
struct Chart {
    RatPoint origin;
    std::vector<RatVec> basis; // edge vectors of the reference simplex
    RatMat gram_inv_t;         // (E^T E)^{-1} E^T rows, precomputed

    size_t dim() const { return basis.size(); }
    RatVec apply(const RatPoint& x) const;
    bool contains(const RatPoint& x) const;
};

Chart chart_of(const std::vector<RatPoint>& pts);

/// Exact k!-normalized chart volume |det(chart edges)|/k!.
Rat chart_volume(const std::vector<RatPoint>& pts, const Chart& chart);

} // namespace ptopo
