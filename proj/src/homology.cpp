#include "ptopo/homology.hpp"

#include <algorithm>
#include <cstdlib>

namespace ptopo {

std::vector<Triplet> boundary_triplets(const SimplicialComplex& k, int d) {
    std::vector<Triplet> t;
    if (d < 1 || d > k.dim()) return t;
    for (size_t i = 0; i < k.count(d); ++i)
        for (auto [f, sign] : k.facets(d, i))
            t.push_back({f, i, Int(sign)});
    return t;
}

namespace {

size_t rank_mod_p(const std::vector<Triplet>& entries, size_t rows, size_t cols, uint64_t p) {
    if (rows == 0 || cols == 0) return 0;
    if (p == 2) {
        Z2ColumnSolver solver(rows);
        std::vector<std::vector<size_t>> col_support(cols);
        for (const auto& t : entries)
            if (t.val % 2 != 0) col_support[t.col].push_back(t.row);
        for (auto& s : col_support)
            if (!s.empty()) solver.insert(s);
        return solver.rank();
    }
    return sparse_field_rank(entries, rows, cols, p);
}

HomologyGroups groups_from_complex(const std::vector<size_t>& dims,
                                   const std::vector<std::vector<Triplet>>& boundaries,
                                   Ring ring) {
    // boundaries[d] : C_d -> C_{d-1} for 1 <= d <= n (index 0 unused)
    int n = static_cast<int>(dims.size()) - 1;
    std::vector<size_t> rank(n + 2, 0);
    std::vector<std::vector<Int>> tors(n + 2);
    for (int d = 1; d <= n; ++d) {
        if (dims[d] == 0 || dims[d - 1] == 0) continue;
        if (ring.is_z()) {
            SmithDiag s = smith_diagonal(boundaries[d], dims[d - 1], dims[d]);
            rank[d] = s.rank;
            for (const auto& v : s.diag)
                if (v > 1) tors[d].push_back(v);
        } else {
            rank[d] = rank_mod_p(boundaries[d], dims[d - 1], dims[d], ring.p);
        }
    }
    HomologyGroups out;
    out.ring = ring;
    out.groups.resize(n + 1);
    for (int d = 0; d <= n; ++d) {
        out.groups[d].free_rank = dims[d] - rank[d] - rank[d + 1];
        out.groups[d].torsion = tors[d + 1];
    }
    return out;
}

} // namespace

HomologyGroups homology(const SimplicialComplex& k, Ring ring) {
    int n = k.dim();
    std::vector<size_t> dims(n + 1);
    for (int d = 0; d <= n; ++d) dims[d] = k.count(d);
    std::vector<std::vector<Triplet>> bnd(n + 1);
    for (int d = 1; d <= n; ++d) bnd[d] = boundary_triplets(k, d);
    return groups_from_complex(dims, bnd, ring);
}

HomologyGroups relative_homology(const SimplicialComplex& k, const SimplicialComplex& l, Ring ring) {
    // verify L is a subcomplex of K
    for (int d = 0; d <= l.dim(); ++d)
        for (const auto& s : l.simplices(d)) {
            auto idx = k.find(s);
            require_input(idx.has_value(), "relative pair: L is not a subcomplex of K");
            for (VertexId v : s.verts)
                require_input(k.point(v) == l.point(v),
                              "relative pair: vertex coordinates disagree");
        }
    int n = k.dim();
    // quotient basis: simplices of K not in L
    std::vector<std::vector<long>> pos(n + 1);
    std::vector<size_t> dims(n + 1, 0);
    for (int d = 0; d <= n; ++d) {
        pos[d].assign(k.count(d), -1);
        for (size_t i = 0; i < k.count(d); ++i) {
            bool in_l = d <= l.dim() && l.find(k.simplex(d, i)).has_value();
            if (!in_l) pos[d][i] = static_cast<long>(dims[d]++);
        }
    }
    std::vector<std::vector<Triplet>> bnd(n + 1);
    for (int d = 1; d <= n; ++d)
        for (size_t i = 0; i < k.count(d); ++i) {
            if (pos[d][i] < 0) continue;
            for (auto [f, sign] : k.facets(d, i))
                if (pos[d - 1][f] >= 0)
                    bnd[d].push_back({static_cast<size_t>(pos[d - 1][f]),
                                      static_cast<size_t>(pos[d][i]), Int(sign)});
        }
    return groups_from_complex(dims, bnd, ring);
}

Cochain& Cochain::reduce() {
    if (ring.is_z()) return *this;
    Int p = static_cast<long>(ring.p);
    for (auto& v : values) {
        v %= p;
        if (v < 0) v += p;
    }
    return *this;
}

Cochain zero_cochain(const SimplicialComplex& k, int deg, Ring ring) {
    Cochain c;
    c.host = &k;
    c.deg = deg;
    c.ring = ring;
    c.values.assign(k.count(deg), Int(0));
    return c;
}

Cochain unit_cochain(const SimplicialComplex& k, Ring ring) {
    Cochain c = zero_cochain(k, 0, ring);
    std::fill(c.values.begin(), c.values.end(), Int(1));
    return c;
}

Cochain add(const Cochain& a, const Cochain& b) {
    require_input(a.host == b.host && a.deg == b.deg && a.ring == b.ring,
                  "cochain mismatch in addition");
    Cochain c = a;
    for (size_t i = 0; i < c.values.size(); ++i) c.values[i] += b.values[i];
    return c.reduce();
}

Cochain sub(const Cochain& a, const Cochain& b) {
    require_input(a.host == b.host && a.deg == b.deg && a.ring == b.ring,
                  "cochain mismatch in subtraction");
    Cochain c = a;
    for (size_t i = 0; i < c.values.size(); ++i) c.values[i] -= b.values[i];
    return c.reduce();
}

Cochain coboundary(const Cochain& c) {
    const SimplicialComplex& k = *c.host;
    Cochain d = zero_cochain(k, c.deg + 1, c.ring);
    if (c.deg + 1 > k.dim()) return d;
    for (size_t i = 0; i < k.count(c.deg + 1); ++i) {
        Int acc = 0;
        for (auto [f, sign] : k.facets(c.deg + 1, i)) acc += sign * c.values[f];
        d.values[i] = acc;
    }
    return d.reduce();
}

bool is_cocycle(const Cochain& c) {
    Cochain d = coboundary(c);
    for (const auto& v : d.values)
        if (v != 0) return false;
    return true;
}

Cochain cup_product(const Cochain& a, const Cochain& b) {
    require_input(a.host == b.host, "cup product: different complexes");
    require_input(a.ring == b.ring, "cup product: coefficient rings differ");
    const SimplicialComplex& k = *a.host;
    int i = a.deg, j = b.deg;
    Cochain c = zero_cochain(k, i + j, a.ring);
    if (i + j > k.dim()) return c;
    for (size_t s = 0; s < k.count(i + j); ++s) {
        const auto& verts = k.simplex(i + j, s).verts;
        VertexList front(verts.begin(), verts.begin() + i + 1);
        VertexList back(verts.begin() + i, verts.end());
        auto fi = k.find(Simplex{front});
        auto bi = k.find(Simplex{back});
        require_internal(fi && bi, "cup product: face missing from complex");
        c.values[s] = a.values[*fi] * b.values[*bi];
    }
    return c.reduce();
}

Cochain bockstein(const Cochain& c, uint64_t p) {
    require_input(!c.ring.is_z() && c.ring.p == p, "bockstein expects a Z_p cochain");
    require_input(is_cocycle(c), "bockstein expects a cocycle");
    const SimplicialComplex& k = *c.host;
    Int ip = static_cast<long>(p);

    auto lift_divide = [&](const Cochain& lift) {
        Cochain d = zero_cochain(k, c.deg + 1, Ring::Z());
        Cochain zlift = lift;
        zlift.ring = Ring::Z();
        Cochain cb = coboundary(zlift);
        for (size_t i = 0; i < cb.values.size(); ++i) {
            require_internal(cb.values[i] % ip == 0, "bockstein: coboundary not divisible by p");
            d.values[i] = cb.values[i] / ip;
        }
        d.ring = Ring::Zp(p);
        return d.reduce();
    };

    Cochain lift1 = c; // values already in {0..p-1}
    lift1.reduce();
    Cochain beta = lift_divide(lift1);

    // a second lift differs by p * e; the results must differ by exactly
    // the coboundary of e, so the class is lift independent
    Cochain lift2 = lift1;
    Cochain e = zero_cochain(k, c.deg, Ring::Z());
    for (size_t i = 0; i < lift2.values.size(); ++i)
        if (lift2.values[i] != 0) {
            lift2.values[i] -= ip;
            e.values[i] = -1;
        }
    Cochain beta2 = lift_divide(lift2);
    Cochain expect = coboundary(e);
    expect.ring = Ring::Zp(p);
    expect.reduce();
    Cochain diff = sub(beta2, beta);
    require_internal(diff.values == expect.values, "bockstein: lift independence violated");
    return beta;
}

namespace {

// dense coboundary matrix D_{deg}: C^deg -> C^{deg+1} (transpose of the
// boundary matrix)
std::vector<std::vector<Int>> coboundary_dense(const SimplicialComplex& k, int deg) {
    size_t rows = k.count(deg + 1), cols = k.count(deg);
    std::vector<std::vector<Int>> d(rows, std::vector<Int>(cols, Int(0)));
    if (deg + 1 <= k.dim())
        for (size_t i = 0; i < rows; ++i)
            for (auto [f, sign] : k.facets(deg + 1, i)) d[i][f] += sign;
    return d;
}

std::vector<std::vector<uint64_t>> coboundary_mod(const SimplicialComplex& k, int deg, uint64_t p) {
    size_t rows = k.count(deg + 1), cols = k.count(deg);
    std::vector<std::vector<uint64_t>> d(rows, std::vector<uint64_t>(cols, 0));
    if (deg + 1 <= k.dim())
        for (size_t i = 0; i < rows; ++i)
            for (auto [f, sign] : k.facets(deg + 1, i))
                d[i][f] = (d[i][f] + (sign > 0 ? 1 : p - 1)) % p;
    return d;
}

size_t generator_guard() {
    if (const char* s = std::getenv("PTOPO_MAX_DENSE")) return std::strtoul(s, nullptr, 10);
    return 3000;
}

} // namespace

CohomologyResult cohomology(const SimplicialComplex& k, Ring ring) {
    int n = k.dim();
    for (int d = 0; d <= n; ++d)
        if (k.count(d) > generator_guard())
            fail_guard("cohomology generator extraction exceeds the dense size guard");
    CohomologyResult out;
    out.groups.ring = ring;
    out.groups.groups.resize(n + 1);
    out.generators.resize(n + 1);

    auto ident_int = [](size_t nn) {
        std::vector<std::vector<Int>> e(nn, std::vector<Int>(nn, Int(0)));
        for (size_t i = 0; i < nn; ++i) e[i][i] = 1;
        return e;
    };
    auto ident_u64 = [](size_t nn) {
        std::vector<std::vector<uint64_t>> e(nn, std::vector<uint64_t>(nn, 0));
        for (size_t i = 0; i < nn; ++i) e[i][i] = 1;
        return e;
    };
    for (int d = 0; d <= n; ++d) {
        size_t nd = k.count(d);
        if (nd == 0) continue;
        if (ring.is_z()) {
            DenseSmith sk;
            auto dmat = coboundary_dense(k, d);
            if (dmat.empty()) {
                sk.rank = 0; // zero map at the top degree: kernel is everything
                sk.v = ident_int(nd);
                sk.vinv = ident_int(nd);
            } else {
                sk = dense_smith(std::move(dmat), true);
            }
            size_t dimker = nd - sk.rank;
            // kernel basis = columns rank..nd-1 of V
            std::vector<std::vector<Int>> kb(nd, std::vector<Int>(dimker, Int(0)));
            for (size_t r = 0; r < nd; ++r)
                for (size_t j = 0; j < dimker; ++j) kb[r][j] = sk.v[r][sk.rank + j];
            // image of D_{d-1} in kernel coordinates (rows rank.. of Vinv)
            size_t nprev = d > 0 ? k.count(d - 1) : 0;
            std::vector<std::vector<Int>> y(dimker, std::vector<Int>(nprev, Int(0)));
            if (d > 0 && nprev > 0) {
                auto dm = coboundary_dense(k, d - 1);
                for (size_t j = 0; j < nprev; ++j)
                    for (size_t r = 0; r < dimker; ++r) {
                        Int acc = 0;
                        for (size_t c = 0; c < nd; ++c)
                            if (dm[c][j] != 0) acc += sk.vinv[sk.rank + r][c] * dm[c][j];
                        y[r][j] = acc;
                    }
            }
            DenseSmith sy = dense_smith(y, true);
            GroupSummary g;
            g.free_rank = dimker - sy.rank;
            std::vector<size_t> gen_cols;
            for (size_t l = 0; l < sy.rank; ++l)
                if (sy.s[l][l] > 1) {
                    g.torsion.push_back(sy.s[l][l]);
                    gen_cols.push_back(l);
                }
            for (size_t l = sy.rank; l < dimker; ++l) gen_cols.push_back(l);
            out.groups.groups[d] = g;
            for (size_t col : gen_cols) {
                Cochain c = zero_cochain(k, d, ring);
                for (size_t r = 0; r < nd; ++r) {
                    Int acc = 0;
                    for (size_t l = 0; l < dimker; ++l)
                        if (kb[r][l] != 0) acc += kb[r][l] * sy.uinv[l][col];
                    c.values[r] = acc;
                }
                out.generators[d].push_back(std::move(c));
            }
        } else {
            uint64_t p = ring.p;
            FieldReduce sk;
            auto dmat = coboundary_mod(k, d, p);
            if (dmat.empty()) {
                sk.rank = 0;
                sk.v = ident_u64(nd);
                sk.vinv = ident_u64(nd);
            } else {
                sk = field_reduce(std::move(dmat), p, true);
            }
            size_t dimker = nd - sk.rank;
            std::vector<std::vector<uint64_t>> kb(nd, std::vector<uint64_t>(dimker, 0));
            for (size_t r = 0; r < nd; ++r)
                for (size_t j = 0; j < dimker; ++j) kb[r][j] = sk.v[r][sk.rank + j];
            size_t nprev = d > 0 ? k.count(d - 1) : 0;
            std::vector<std::vector<uint64_t>> y(dimker, std::vector<uint64_t>(nprev, 0));
            if (d > 0 && nprev > 0) {
                auto dm = coboundary_mod(k, d - 1, p);
                for (size_t j = 0; j < nprev; ++j)
                    for (size_t r = 0; r < dimker; ++r) {
                        uint64_t acc = 0;
                        for (size_t c = 0; c < nd; ++c)
                            if (dm[c][j]) acc = (acc + sk.vinv[sk.rank + r][c] * dm[c][j]) % p;
                        y[r][j] = acc;
                    }
            }
            FieldReduce sy = field_reduce(y, p, true);
            GroupSummary g;
            g.free_rank = dimker - sy.rank;
            out.groups.groups[d] = g;
            for (size_t col = sy.rank; col < dimker; ++col) {
                Cochain c = zero_cochain(k, d, ring);
                for (size_t r = 0; r < nd; ++r) {
                    uint64_t acc = 0;
                    for (size_t l = 0; l < dimker; ++l)
                        if (kb[r][l]) acc = (acc + kb[r][l] * sy.uinv[l][col]) % p;
                    c.values[r] = acc;
                }
                out.generators[d].push_back(std::move(c));
            }
        }
    }
    return out;
}

bool is_coboundary(const Cochain& z) {
    const SimplicialComplex& k = *z.host;
    int d = z.deg;
    require_input(is_cocycle(z), "is_coboundary expects a cocycle");
    if (d == 0) {
        for (const auto& v : z.values)
            if (v != 0) return false;
        return true;
    }
    size_t rows = k.count(d), cols = k.count(d - 1);
    if (!z.ring.is_z() && z.ring.p == 2) {
        Z2ColumnSolver solver(rows);
        auto dm = coboundary_mod(k, d - 1, 2);
        for (size_t j = 0; j < cols; ++j) {
            std::vector<size_t> sup;
            for (size_t i = 0; i < rows; ++i)
                if (dm[i][j]) sup.push_back(i);
            if (!sup.empty()) solver.insert(sup);
        }
        std::vector<size_t> b;
        for (size_t i = 0; i < rows; ++i)
            if (z.values[i] % 2 != 0) b.push_back(i);
        return solver.in_span(b);
    }
    if (rows > generator_guard() || cols > generator_guard())
        fail_guard("is_coboundary exceeds the dense size guard");
    if (z.ring.is_z()) {
        // integral solve via the Smith form of D_{d-1}
        DenseSmith s = dense_smith(coboundary_dense(k, d - 1), true);
        std::vector<Int> y(rows, Int(0));
        for (size_t i = 0; i < rows; ++i) {
            Int acc = 0;
            for (size_t c = 0; c < rows; ++c)
                if (s.u[i][c] != 0 && z.values[c] != 0) acc += s.u[i][c] * z.values[c];
            y[i] = acc;
        }
        for (size_t i = 0; i < rows; ++i) {
            if (i < s.rank) {
                if (y[i] % s.s[i][i] != 0) return false;
            } else if (y[i] != 0) {
                return false;
            }
        }
        return true;
    }
    uint64_t p = z.ring.p;
    FieldReduce s = field_reduce(coboundary_mod(k, d - 1, p), p, true);
    for (size_t i = 0; i < rows; ++i) {
        uint64_t acc = 0;
        for (size_t c = 0; c < rows; ++c) {
            Int v = z.values[c] % static_cast<long>(p);
            if (v < 0) v += static_cast<long>(p);
            acc = (acc + s.u[i][c] * v.convert_to<uint64_t>()) % p;
        }
        if (i >= s.rank && acc != 0) return false;
    }
    return true;
}

bool cohomologous(const Cochain& a, const Cochain& b) { return is_coboundary(sub(a, b)); }

std::optional<std::vector<uint64_t>> express_in_generators(const Cochain& z,
                                                           const std::vector<Cochain>& gens) {
    require_input(!z.ring.is_z(), "express_in_generators works over Z_p");
    uint64_t p = z.ring.p;
    const SimplicialComplex& k = *z.host;
    int d = z.deg;
    size_t rows = k.count(d);
    size_t ng = gens.size();
    size_t cols_d = d > 0 ? k.count(d - 1) : 0;
    if (rows > generator_guard()) fail_guard("express_in_generators guard");
    std::vector<std::vector<uint64_t>> m(rows, std::vector<uint64_t>(ng + cols_d + 1, 0));
    auto modp = [&](const Int& v) {
        Int r = v % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return r.convert_to<uint64_t>();
    };
    for (size_t g = 0; g < ng; ++g)
        for (size_t i = 0; i < rows; ++i) m[i][g] = modp(gens[g].values[i]);
    if (d > 0) {
        auto dm = coboundary_mod(k, d - 1, p);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols_d; ++j) m[i][ng + j] = dm[i][j];
    }
    for (size_t i = 0; i < rows; ++i) m[i][ng + cols_d] = modp(z.values[i]);
    // gaussian elimination; back-substitute the augmented column
    size_t r = 0;
    std::vector<long> pivot_col;
    auto inv_mod = [&](uint64_t x) {
        uint64_t res = 1, base = x % p, e = p - 2;
        while (e) {
            if (e & 1) res = res * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return res;
    };
    size_t ncols = ng + cols_d;
    for (size_t c = 0; c < ncols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && m[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[pr], m[r]);
        uint64_t inv = inv_mod(m[r][c]);
        for (size_t j = c; j <= ncols; ++j) m[r][j] = m[r][j] * inv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            uint64_t f = p - m[i][c];
            for (size_t j = c; j <= ncols; ++j) m[i][j] = (m[i][j] + f * m[r][j]) % p;
        }
        pivot_col.push_back(static_cast<long>(c));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (m[i][ncols] != 0) return std::nullopt;
    std::vector<uint64_t> coeff(ng, 0);
    for (size_t i = 0; i < r; ++i)
        if (pivot_col[i] >= 0 && static_cast<size_t>(pivot_col[i]) < ng)
            coeff[static_cast<size_t>(pivot_col[i])] = m[i][ncols];
    return coeff;
}

bool SimplicialMap::valid() const {
    if (vmap.size() < src->coord_count()) return false;
    for (int d = 0; d <= src->dim(); ++d)
        for (const auto& s : src->simplices(d)) {
            VertexList img;
            for (VertexId v : s.verts) img.push_back(vmap[v]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (!dst->find(Simplex{img}).has_value()) return false;
        }
    return true;
}

Cochain pullback(const SimplicialMap& f, const Cochain& c) {
    require_input(c.host == f.dst, "pullback: cochain lives on the wrong complex");
    Cochain out = zero_cochain(*f.src, c.deg, c.ring);
    for (size_t i = 0; i < f.src->count(c.deg); ++i) {
        VertexList img;
        for (VertexId v : f.src->simplex(c.deg, i).verts) img.push_back(f.vmap[v]);
        auto [s, sign] = Simplex::canonical(img);
        if (sign == 0) continue;
        auto idx = f.dst->find(s);
        require_internal(idx.has_value(), "pullback: image simplex missing");
        out.values[i] = sign * c.values[*idx];
    }
    return out.reduce();
}

} // namespace ptopo
