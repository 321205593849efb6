#pragma once

#include "ptopo/rational.hpp"

#include <optional>
#include <vector>

namespace ptopo {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>; // row major

RatMat rat_identity(size_t n);
RatVec mat_vec(const RatMat& a, const RatVec& x);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatMat transpose(const RatMat& a);

RatVec vsub(const RatVec& a, const RatVec& b);
RatVec vadd(const RatVec& a, const RatVec& b);
RatVec vscale(const Rat& c, const RatVec& a);
Rat dot(const RatVec& a, const RatVec& b);

size_t rat_rank(RatMat a);
Rat rat_det(RatMat a);

/// Solve a*x = b; empty when singular/inconsistent.
std::optional<RatVec> solve_linear(RatMat a, RatVec b);

/// Basis of the nullspace of a (columns returned as vectors).
std::vector<RatVec> nullspace(RatMat a);

/// Affine rank of a point set (dimension of its affine hull).
size_t affine_rank(const std::vector<RatPoint>& pts);

/// Gram matrix of edge vectors p[i]-p[0].
RatMat edge_gram(const std::vector<RatPoint>& pts);

/// Barycentric coordinates of x w.r.t. an affinely independent point
/// set; empty when x is outside the affine hull.
std::optional<RatVec> barycentric_coords(const std::vector<RatPoint>& pts, const RatPoint& x);

/// Exact squared distance from a point to the convex hull of an
/// affinely independent point set.
Rat dist2_point_hull(const std::vector<RatPoint>& pts, const RatPoint& x);

} // namespace ptopo
