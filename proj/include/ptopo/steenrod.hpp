#pragma once

#include "ptopo/homology.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace ptopo {

/// Monomial word in the mod-p Steenrod algebra. Tokens are exponents of
/// Sq (p = 2) or of the reduced powers P (odd p); the token -1 is the
/// Bockstein, which only occurs for odd p.
using SqWord = std::vector<int>;

int word_degree(const SqWord& w, uint64_t p);
bool word_admissible(const SqWord& w, uint64_t p);
std::string word_str(const SqWord& w, uint64_t p);
SqWord parse_word(const std::string& text, uint64_t p);

/// Homogeneous Z_p-linear combination of monomials.
struct SteenrodElement {
    uint64_t p = 2;
    std::map<SqWord, uint64_t> terms; // coefficient in 1..p-1

    void add_term(const SqWord& w, uint64_t coeff);
    bool operator==(const SteenrodElement& o) const { return p == o.p && terms == o.terms; }
    std::string str() const;
};

SteenrodElement element_of(const SqWord& w, uint64_t p);

/// Binomial coefficient mod p by Lucas' theorem (0 for k < 0 or k > n).
uint64_t binom_mod(long long n, long long k, uint64_t p);

enum class RewriteOrder { Leftmost, Rightmost, Random };

/// Rewrite to the admissible basis with the Adem relations. The result
/// is independent of the rewrite order; `order`/`rng` exist so tests can
/// drive confluence from random strategies.
SteenrodElement adem_reduce(const SteenrodElement& e, RewriteOrder order = RewriteOrder::Leftmost,
                            std::mt19937_64* rng = nullptr);

/// All admissible monomials of the given degree (no Bockstein tokens
/// for p = 2).
std::vector<SqWord> admissible_basis(int degree, uint64_t p);

struct CartanTerm {
    int left, right; // exponents applied to the two cup factors
};
/// Terms of the Cartan expansion of the k-th operation on a product of
/// classes of the given degrees, with vanishing terms pruned.
std::vector<CartanTerm> cartan_expand(int k, int deg_u, int deg_v, uint64_t p = 2);

/// Steenrod cup-i product of mod-2 cochains.
Cochain cup_i_product(const Cochain& u, const Cochain& v, int i);

/// Cochain-level Steenrod square: the class of c cup_{deg-i} c.
/// Requires a mod-2 cocycle; i = 0 returns c, i > deg returns zero.
Cochain sq_on_cochain(int i, const Cochain& c);

/// Apply a word of squares to a cocycle, rightmost factor first.
Cochain apply_word_to_cochain(const SqWord& w, const Cochain& c);

/// Thom's composite operations as formal algebra elements:
/// beta P^r (the mod-p reduction of beta* P^r theta_p), degree 2r(p-1)+1.
SteenrodElement thom_composite(int r, uint64_t p);

} // namespace ptopo
