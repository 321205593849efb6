#pragma once

#include "ptopo/linalg.hpp"

#include <vector>

namespace ptopo {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    RatVec x;
    Rat value = 0;
};

/// Exact rational simplex method (Bland's rule, two phases) for
///   min c^T x  subject to  A x = b,  x >= 0.
LpResult lp_solve(const RatMat& a, const RatVec& b, const RatVec& c);

/// Feasibility of { A x = b, x >= 0 }.
bool lp_feasible(const RatMat& a, const RatVec& b);

/// True when conv(pa) and conv(pb) intersect exactly in conv(shared)
/// (which is empty when `shared` is empty). All points exact rational.
bool simplex_pair_meets_in_face(const std::vector<RatPoint>& pa,
                                const std::vector<RatPoint>& pb,
                                const std::vector<RatPoint>& shared);

} // namespace ptopo
