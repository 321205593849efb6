#pragma once

#include "ptopo/complex.hpp"
#include "ptopo/snf.hpp"

#include <optional>

namespace ptopo {

/// Coefficient ring: Z when p == 0, otherwise the prime field Z_p.
struct Ring {
    uint64_t p = 0;
    bool is_z() const { return p == 0; }
    bool operator==(const Ring& o) const { return p == o.p; }
    static Ring Z() { return Ring{0}; }
    static Ring Zp(uint64_t p) { return Ring{p}; }
};

struct GroupSummary {
    size_t free_rank = 0;      // Betti number (dimension over Z_p)
    std::vector<Int> torsion;  // invariant factors > 1, divisibility chain
    bool operator==(const GroupSummary& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

struct HomologyGroups {
    Ring ring;
    std::vector<GroupSummary> groups; // by dimension

    const GroupSummary& at(size_t d) const {
        static const GroupSummary trivial{};
        return d < groups.size() ? groups[d] : trivial;
    }
};

/// Boundary matrix of C_d -> C_{d-1} in the oriented canonical basis.
std::vector<Triplet> boundary_triplets(const SimplicialComplex& k, int d);

HomologyGroups homology(const SimplicialComplex& k, Ring ring);

/// Relative homology H_*(K, L); L must be a subcomplex of K (same
/// vertex ids and coordinates).
HomologyGroups relative_homology(const SimplicialComplex& k, const SimplicialComplex& l, Ring ring);

/// Z- or Z_p-valued simplicial cochain of fixed degree.
struct Cochain {
    const SimplicialComplex* host = nullptr;
    int deg = 0;
    Ring ring;
    std::vector<Int> values; // indexed by canonical simplex index

    Int eval(size_t simplex_index) const { return values[simplex_index]; }
    Cochain& reduce(); // mod p in place when ring is Z_p
};

Cochain zero_cochain(const SimplicialComplex& k, int deg, Ring ring);
/// The unit 0-cochain (value 1 on every vertex).
Cochain unit_cochain(const SimplicialComplex& k, Ring ring);
Cochain add(const Cochain& a, const Cochain& b);
Cochain sub(const Cochain& a, const Cochain& b);
Cochain coboundary(const Cochain& c);
bool is_cocycle(const Cochain& c);

/// Cup product by the front-face/back-face rule in the complex's
/// canonical vertex order.
Cochain cup_product(const Cochain& a, const Cochain& b);

/// Mod-p Bockstein of a Z_p cocycle: lift to Z_{p^2}, coboundary,
/// divide by p. The class is independent of the lift; the
/// implementation asserts that with a second lift.
Cochain bockstein(const Cochain& c, uint64_t p);

struct CohomologyResult {
    HomologyGroups groups;
    std::vector<std::vector<Cochain>> generators; // per degree, one per
                                                  // torsion factor then per free rank
};
CohomologyResult cohomology(const SimplicialComplex& k, Ring ring);

/// Exact class-level tests.
bool is_coboundary(const Cochain& z);
bool cohomologous(const Cochain& a, const Cochain& b);

/// Coordinates of a cocycle's class in a generator list (mod p only);
/// nullopt when the class is outside the span.
std::optional<std::vector<uint64_t>> express_in_generators(const Cochain& z,
                                                           const std::vector<Cochain>& gens);

struct SimplicialMap {
    const SimplicialComplex* src = nullptr;
    const SimplicialComplex* dst = nullptr;
    std::vector<VertexId> vmap;

    bool valid() const; // every simplex maps to a (possibly collapsed) simplex
};

/// f^* on cochains: sign of the image vertex permutation, zero on
/// collapsed simplices.
Cochain pullback(const SimplicialMap& f, const Cochain& c);

} // namespace ptopo
