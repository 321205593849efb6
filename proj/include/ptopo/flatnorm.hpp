#pragma once

#include "ptopo/chain.hpp"
#include "ptopo/lp.hpp"

namespace ptopo {

enum class FlatSolver { LpExactIntegral, LpRelaxation, BruteForce };

/// Decomposition T = R + boundary(S) minimizing mass(R) + mass(S) over
/// the simplicial chains of the host complex. Coefficients are exact
/// rationals; `integral` reports whether the optimum is an integer
/// vertex (then the value is the simplicial integral flat norm).
struct FlatDecomposition {
    Real value = 0;
    Real mass_r = 0;
    Real mass_s = 0;
    Rat objective_exact = 0; // value under the rationalized volume objective
    std::map<size_t, Rat> r_terms;
    std::map<size_t, Rat> s_terms;
    FlatSolver solver = FlatSolver::LpRelaxation;
    bool integral = false;

    Chain r_chain(const SimplicialComplex& k, int dim) const;
    Chain s_chain(const SimplicialComplex& k, int dim) const;
};

/// Exact-rational LP solve of the flat-norm program by absolute-value
/// splitting; ties between optimal witnesses are broken toward the
/// lexicographically smallest |S| vector. `lex_tiebreak` may be turned
/// off by value-only batch callers.
FlatDecomposition flat_norm_lp(const Chain& t, bool lex_tiebreak = true);

/// Exhaustive integer search over |s_j| <= coeff_bound; certifies the
/// integral optimum within the bound. Guarded to <= 30 simplices of
/// dimensions k and k+1 combined.
FlatDecomposition flat_norm_bruteforce(const Chain& t, const Int& coeff_bound);

std::string flat_to_json(const FlatDecomposition& d, const Chain& t);
std::string flat_to_csv(const FlatDecomposition& d);

} // namespace ptopo
