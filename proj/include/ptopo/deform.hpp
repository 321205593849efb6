#pragma once

#include "ptopo/chain.hpp"
#include "ptopo/complex.hpp"

#include <cstdint>
#include <vector>

namespace ptopo {

/// Graded neighborhood of a skeleton: around every i-simplex of K^j a
/// ball of radius c0^{-i} * delta. Membership is decided exactly via
/// rational squared distances.
struct GradedNeighborhood {
    const SimplicialComplex* k = nullptr;
    int j = 0;
    Rat delta = 0;
    Rat c0 = 4;

    Rat radius(int i) const; // c0^{-i} * delta
};

GradedNeighborhood make_graded_neighborhood(const SimplicialComplex& k, int j, const Rat& delta,
                                            const Rat& c0);

/// Defaults when the constants are left open: c0 = 4 and delta =
/// (smallest edge length)/8, rounded to a rational.
GradedNeighborhood make_graded_neighborhood(const SimplicialComplex& k, int j);

bool v_delta_contains(const GradedNeighborhood& n, const RatPoint& p);

/// Exact squared distance from a rational point to a simplex.
Rat simplex_dist2(const SimplicialComplex& k, int d, size_t i, const RatPoint& p);

struct AuditViolation {
    std::vector<double> point;
    int dim = 0;
    size_t touching = 0;
};

struct AuditReport {
    size_t samples = 0;
    size_t boundary_candidates = 0;
    std::vector<AuditViolation> violations;
};

/// Sampling audit of the boundary regularity claim: on the boundary of
/// the graded neighborhood, at most one ball per dimension is touched.
/// Candidates come from random sampling plus an adversarial search near
/// equidistant loci of same-dimension simplex pairs. Report only.
AuditReport boundary_regularity_audit(const GradedNeighborhood& n, size_t samples, uint64_t seed,
                                      double tol = 1e-3);

struct ProfileParams {
    double mu = 0;
    double delta_a = 0;
    double eta = 0;

    void validate() const; // needs 3*delta_a < eta, both positive
    double slope_bound() const { return std::max(mu, eta / (eta - 3 * delta_a)); }
};

/// Piecewise linear profile: slope mu up to 2*delta_a, a connecting
/// slope to eta-delta_a, identity afterwards.
double phi_profile(const ProfileParams& p, double t);

/// Mollification of phi with a polynomial bump of width delta_a/2:
/// equals mu*t on [0, delta_a] and t on [eta - delta_a/2, inf).
double smooth_profile(const ProfileParams& p, double t);
double smooth_profile_derivative(const ProfileParams& p, double t);

/// Radial map psi(|x|) x/|x| (0 at the origin).
std::vector<double> radial_squash(double mu, const ProfileParams& p, std::vector<double> x);

/// Lipschitz interior distance function on a full-dimensional simplex:
/// equals dist(., boundary) near the open facets, positive and smooth
/// inside, built from dyadic shells with mollified distances.
class SimplexDistFunction {
public:
    SimplexDistFunction(std::vector<std::vector<double>> simplex_vertices, double c0 = 1.0 / 16.0);

    double boundary_dist(const std::vector<double>& x) const; // min facet distance
    double value(const std::vector<double>& x) const;         // errors when x is outside
    int dim() const { return m_; }

private:
    int m_;
    double c0_;
    std::vector<std::vector<double>> verts_;
    std::vector<std::vector<double>> normals_; // unit inward facet normals
    std::vector<double> offsets_;

    double mollified_dist(const std::vector<double>& x, double h) const;
};

/// Product-chart squash map on R^d: identity on the first k
/// coordinates, the radial squash with factor gamma on the rest.
struct SquashChart {
    int d = 2;
    int k = 0;
    ProfileParams params;
    double gamma = 1;

    std::vector<double> apply(const std::vector<double>& x) const;
    /// Jacobian matrix at x (d x d).
    std::vector<std::vector<double>> jacobian(const std::vector<double>& x) const;
};

struct SquashFixture {
    SimplicialComplex complex;
    int m = 2, k = 0;
};

/// Triangulated m-dimensional patch hugging the k-dimensional axis
/// inside the delta_a collar (where the squash is exactly linear).
SquashFixture squash_fixture(int m, int k, double delta_a);

struct MassContractionResult {
    std::vector<double> gammas;
    std::vector<double> measured; // mass ratio after pushing forward
    std::vector<double> bounds;   // C (1+eps)^k gamma^(m-k)
    double fitted_exponent = 0;   // log-log slope
    double c_constant = 0;
};

/// Numerically integrates the Jacobian factor of the squash chart over
/// the chain's simplices and compares with the mass-contraction bound.
MassContractionResult mass_contraction_experiment(int m, int k, const std::vector<double>& gammas,
                                                  const ProfileParams& params, double eps_a,
                                                  double c_constant = 1.1);

} // namespace ptopo
