#include "ptopo/steenrod.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ptopo {

int word_degree(const SqWord& w, uint64_t p) {
    int d = 0;
    for (int t : w) {
        if (t == -1)
            d += 1;
        else if (p == 2)
            d += t;
        else
            d += 2 * t * static_cast<int>(p - 1);
    }
    return d;
}

bool word_admissible(const SqWord& w, uint64_t p) {
    if (p == 2) {
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] < 2 * w[i + 1]) return false;
        return true;
    }
    // odd p: beta^e0 P^s1 beta^e1 ... P^sk beta^ek with s_i >= p s_{i+1} + e_i
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] == -1) {
            if (i + 1 < w.size() && w[i + 1] == -1) return false; // beta beta = 0
            continue;
        }
        // next P exponent and the epsilon between
        int eps = 0;
        size_t j = i + 1;
        if (j < w.size() && w[j] == -1) {
            eps = 1;
            ++j;
        }
        if (j < w.size()) {
            if (w[i] < static_cast<int>(p) * w[j] + eps) return false;
        }
    }
    return true;
}

std::string word_str(const SqWord& w, uint64_t p) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        if (w[i] == -1)
            os << "b";
        else
            os << (p == 2 ? "Sq^" : "P^") << w[i];
    }
    return os.str();
}

SqWord parse_word(const std::string& text, uint64_t p) {
    SqWord w;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        // trim
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        tok = tok.substr(a, b - a + 1);
        if (tok == "b" || tok == "B") {
            require_input(p != 2, "Bockstein token is only valid for odd p (use exponent 1 for Sq^1)");
            w.push_back(-1);
        } else {
            int e = std::stoi(tok);
            require_input(e >= 1, "exponents must be positive");
            w.push_back(e);
        }
    }
    return w;
}

void SteenrodElement::add_term(const SqWord& w, uint64_t coeff) {
    coeff %= p;
    if (coeff == 0) return;
    auto [it, fresh] = terms.emplace(w, coeff);
    if (!fresh) {
        it->second = (it->second + coeff) % p;
        if (it->second == 0) terms.erase(it);
    }
}

std::string SteenrodElement::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms) {
        if (!first) os << " + ";
        first = false;
        if (c != 1 || w.empty()) os << c << (w.empty() ? "" : "*");
        os << word_str(w, p);
    }
    return os.str();
}

SteenrodElement element_of(const SqWord& w, uint64_t p) {
    SteenrodElement e;
    e.p = p;
    e.add_term(w, 1);
    return e;
}

uint64_t binom_mod(long long n, long long k, uint64_t p) {
    if (k < 0 || n < 0 || k > n) return 0;
    uint64_t result = 1;
    while (n > 0 || k > 0) {
        long long ni = n % static_cast<long long>(p);
        long long ki = k % static_cast<long long>(p);
        if (ki > ni) return 0;
        // small binomial
        uint64_t b = 1;
        for (long long t = 0; t < ki; ++t) b = b * static_cast<uint64_t>(ni - t) / static_cast<uint64_t>(t + 1);
        result = result * (b % p) % p;
        n /= static_cast<long long>(p);
        k /= static_cast<long long>(p);
    }
    return result;
}

namespace {

// index of the first rewritable position, or -1 when admissible;
// positions address the LEFT token of a violating pair (for odd p the
// pair may have a Bockstein between the two P factors)
long find_violation(const SqWord& w, uint64_t p, RewriteOrder order, std::mt19937_64* rng) {
    std::vector<long> spots;
    if (p == 2) {
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] < 2 * w[i + 1]) spots.push_back(static_cast<long>(i));
    } else {
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i] == -1) {
                if (i + 1 < w.size() && w[i + 1] == -1) spots.push_back(static_cast<long>(i));
                continue;
            }
            size_t j = i + 1;
            int eps = 0;
            if (j < w.size() && w[j] == -1) {
                eps = 1;
                ++j;
            }
            if (j < w.size() && w[j] != -1 && w[i] < static_cast<int>(p) * w[j] + eps)
                spots.push_back(static_cast<long>(i));
        }
    }
    if (spots.empty()) return -1;
    switch (order) {
        case RewriteOrder::Leftmost: return spots.front();
        case RewriteOrder::Rightmost: return spots.back();
        case RewriteOrder::Random: {
            require_internal(rng != nullptr, "random rewrite order needs an rng");
            return spots[(*rng)() % spots.size()];
        }
    }
    return spots.front();
}

// expand the violating pair at `pos` into an element
SteenrodElement rewrite_at(const SqWord& w, size_t pos, uint64_t p) {
    SteenrodElement out;
    out.p = p;
    auto emit = [&](const SqWord& mid, uint64_t coeff) {
        if (coeff % p == 0) return;
        SqWord full(w.begin(), w.begin() + pos);
        full.insert(full.end(), mid.begin(), mid.end());
        out.add_term(full, coeff);
    };
    auto sign = [&](long long e) -> uint64_t { return (e % 2 == 0) ? 1 : p - 1; };

    if (p == 2) {
        long long a = w[pos], b = w[pos + 1];
        SqWord tail(w.begin() + pos + 2, w.end());
        for (long long j = 0; 2 * j <= a; ++j) {
            uint64_t c = binom_mod(b - 1 - j, a - 2 * j, 2);
            if (!c) continue;
            SqWord mid;
            mid.push_back(static_cast<int>(a + b - j));
            if (j > 0) mid.push_back(static_cast<int>(j));
            mid.insert(mid.end(), tail.begin(), tail.end());
            emit(mid, c);
        }
        return out;
    }
    if (w[pos] == -1) {
        // beta beta = 0
        return out;
    }
    long long a = w[pos];
    bool has_beta = (w[pos + 1] == -1);
    long long b = has_beta ? w[pos + 2] : w[pos + 1];
    SqWord tail(w.begin() + pos + (has_beta ? 3 : 2), w.end());
    long long pp = static_cast<long long>(p);
    if (!has_beta) {
        for (long long j = 0; pp * j <= a; ++j) {
            uint64_t c = binom_mod((pp - 1) * (b - j) - 1, a - pp * j, p);
            if (!c) continue;
            c = c * sign(a + j) % p;
            SqWord mid;
            mid.push_back(static_cast<int>(a + b - j));
            if (j > 0) mid.push_back(static_cast<int>(j));
            mid.insert(mid.end(), tail.begin(), tail.end());
            emit(mid, c);
        }
    } else {
        for (long long j = 0; pp * j <= a; ++j) {
            uint64_t c = binom_mod((pp - 1) * (b - j), a - pp * j, p);
            if (c) {
                c = c * sign(a + j) % p;
                SqWord mid;
                mid.push_back(-1);
                mid.push_back(static_cast<int>(a + b - j));
                if (j > 0) mid.push_back(static_cast<int>(j));
                mid.insert(mid.end(), tail.begin(), tail.end());
                emit(mid, c);
            }
            uint64_t c2 = binom_mod((pp - 1) * (b - j) - 1, a - pp * j - 1, p);
            if (c2) {
                c2 = c2 * sign(a + j + 1) % p; // minus the first-family sign
                SqWord mid;
                mid.push_back(static_cast<int>(a + b - j));
                mid.push_back(-1);
                if (j > 0) mid.push_back(static_cast<int>(j));
                mid.insert(mid.end(), tail.begin(), tail.end());
                emit(mid, c2);
            }
        }
    }
    return out;
}

// drop explicit zero exponents (P^0 = Sq^0 = identity tokens never
// enter words, but rewrite results may produce none anyway)
SqWord strip_units(SqWord w) {
    w.erase(std::remove(w.begin(), w.end(), 0), w.end());
    return w;
}

} // namespace

SteenrodElement adem_reduce(const SteenrodElement& e, RewriteOrder order, std::mt19937_64* rng) {
    SteenrodElement work = e;
    for (auto it = work.terms.begin(); it != work.terms.end();) {
        SqWord s = strip_units(it->first);
        if (s != it->first) {
            uint64_t c = it->second;
            it = work.terms.erase(it);
            work.add_term(s, c);
            it = work.terms.begin();
        } else {
            ++it;
        }
    }
    for (;;) {
        // pick a term with a violation
        SqWord target;
        long pos = -1;
        std::vector<const SqWord*> candidates;
        for (const auto& [w, c] : work.terms) {
            (void)c;
            if (!word_admissible(w, work.p)) candidates.push_back(&w);
        }
        if (candidates.empty()) break;
        const SqWord* chosen = candidates.front();
        if (order == RewriteOrder::Rightmost) chosen = candidates.back();
        if (order == RewriteOrder::Random && rng) chosen = candidates[(*rng)() % candidates.size()];
        target = *chosen;
        pos = find_violation(target, work.p, order, rng);
        require_internal(pos >= 0, "inadmissible word with no rewrite position");
        uint64_t coeff = work.terms[target];
        work.terms.erase(target);
        SteenrodElement expanded = rewrite_at(target, static_cast<size_t>(pos), work.p);
        for (const auto& [w, c] : expanded.terms) work.add_term(strip_units(w), c * coeff % work.p);
    }
    return work;
}

std::vector<SqWord> admissible_basis(int degree, uint64_t p) {
    std::vector<SqWord> out;
    if (degree == 0) {
        out.push_back({});
        return out;
    }
    if (p == 2) {
        // tokens built from the right; the next exponent to the left must
        // be at least twice its right neighbor
        std::function<void(int, SqWord&)> rec = [&](int remaining, SqWord& acc) {
            if (remaining == 0) {
                SqWord w(acc.rbegin(), acc.rend());
                out.push_back(w);
                return;
            }
            int lo = acc.empty() ? 1 : 2 * acc.back();
            for (int i = lo; i <= remaining; ++i) {
                acc.push_back(i);
                rec(remaining - i, acc);
                acc.pop_back();
            }
        };
        SqWord acc;
        rec(degree, acc);
        std::sort(out.begin(), out.end());
        return out;
    }
    // odd p: beta^e0 P^s1 beta^e1 ... P^sk beta^ek, s_i >= p s_{i+1} + e_i
    std::function<void(int, bool, int, int, SqWord&)> rec =
        [&](int remaining, bool right_is_beta, int nearest_p, int eps, SqWord& acc) {
            // tokens held from the right; nearest_p = exponent of the P
            // nearest on the right (0 when none), eps = 1 when a beta sits
            // between that P and whatever is added next
            if (remaining == 0) {
                if (!acc.empty()) {
                    SqWord w(acc.rbegin(), acc.rend());
                    out.push_back(w);
                }
                return;
            }
            if (!right_is_beta && remaining >= 1) {
                acc.push_back(-1);
                rec(remaining - 1, true, nearest_p, nearest_p > 0 ? 1 : 0, acc);
                acc.pop_back();
            }
            int unit = 2 * static_cast<int>(p - 1);
            int smin = nearest_p > 0 ? static_cast<int>(p) * nearest_p + eps : 1;
            for (int s = smin; unit * s <= remaining; ++s) {
                acc.push_back(s);
                rec(remaining - unit * s, false, s, 0, acc);
                acc.pop_back();
            }
        };
    SqWord acc;
    rec(degree, false, 0, 0, acc);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CartanTerm> cartan_expand(int k, int deg_u, int deg_v, uint64_t p) {
    std::vector<CartanTerm> out;
    for (int i = 0; i <= k; ++i) {
        int j = k - i;
        if (p == 2) {
            if (i > deg_u || j > deg_v) continue;
        } else {
            if (2 * i > deg_u || 2 * j > deg_v) continue;
        }
        out.push_back({i, j});
    }
    return out;
}

Cochain cup_i_product(const Cochain& u, const Cochain& v, int i) {
    require_input(u.host == v.host, "cup-i: different complexes");
    require_input(!u.ring.is_z() && u.ring.p == 2 && v.ring.p == 2, "cup-i products are mod 2");
    require_input(i >= 0, "cup-i: negative i");
    const SimplicialComplex& k = *u.host;
    int pdeg = u.deg, qdeg = v.deg;
    int n = pdeg + qdeg - i;
    Cochain out = zero_cochain(k, n, u.ring);
    if (n < 0 || n > k.dim() || i > pdeg + qdeg) return out;
    // choose 0 <= a_0 < ... < a_i <= n; cut [0..n] into segments
    // S_0=[0..a_0], S_1=[a_0..a_1], ..., S_{i+1}=[a_i..n]; u gets the
    // even segments, v the odd ones.
    std::vector<int> a(i + 1);
    for (size_t s = 0; s < k.count(n); ++s) {
        const auto& verts = k.simplex(n, s).verts;
        uint64_t acc = 0;
        std::function<void(int, int)> choose = [&](int idx, int start) {
            if (idx > i) {
                VertexList ul, vl;
                int prev = 0;
                for (int seg = 0; seg <= i + 1; ++seg) {
                    int end = (seg <= i) ? a[seg] : n;
                    auto& dst = (seg % 2 == 0) ? ul : vl;
                    for (int t = prev; t <= end; ++t) dst.push_back(verts[t]);
                    prev = end;
                }
                if (static_cast<int>(ul.size()) != pdeg + 1 || static_cast<int>(vl.size()) != qdeg + 1)
                    return;
                auto fi = k.find(Simplex{ul});
                auto vi2 = k.find(Simplex{vl});
                require_internal(fi && vi2, "cup-i: face missing");
                acc ^= static_cast<uint64_t>(((u.values[*fi] % 2) != 0) && ((v.values[*vi2] % 2) != 0));
                return;
            }
            for (int x = start; x <= n; ++x) {
                a[idx] = x;
                choose(idx + 1, x + 1);
            }
        };
        choose(0, 0);
        out.values[s] = static_cast<long>(acc & 1);
    }
    return out;
}

Cochain sq_on_cochain(int i, const Cochain& c) {
    require_input(!c.ring.is_z() && c.ring.p == 2, "Steenrod squares act on mod-2 cochains");
    require_input(is_cocycle(c), "Steenrod squares act on cocycles");
    require_input(i >= 0, "negative Steenrod square");
    if (i == 0) return c;
    if (i > c.deg) return zero_cochain(*c.host, c.deg + i, c.ring);
    Cochain out = cup_i_product(c, c, c.deg - i);
    require_internal(is_cocycle(out), "Steenrod square output is not a cocycle");
    return out;
}

Cochain apply_word_to_cochain(const SqWord& w, const Cochain& c) {
    Cochain cur = c;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        require_input(*it >= 1, "only Sq exponents apply to cochains");
        cur = sq_on_cochain(*it, cur);
    }
    return cur;
}

SteenrodElement thom_composite(int r, uint64_t p) {
    require_input(p % 2 == 1 && p > 2, "Thom composites are odd-p operations");
    SqWord w{-1, r};
    return element_of(w, p);
}

} // namespace ptopo
