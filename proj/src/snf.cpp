#include "ptopo/snf.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ptopo {

namespace {

// gcd-normalize a diagonal list into an invariant-factor chain
std::vector<Int> normalize_chain(std::vector<Int> diag) {
    for (auto& d : diag)
        if (d < 0) d = -d;
    diag.erase(std::remove(diag.begin(), diag.end(), Int(0)), diag.end());
    size_t ones = 0;
    for (const auto& d : diag)
        if (d == 1) ++ones;
    std::vector<Int> rest;
    for (auto& d : diag)
        if (d != 1) rest.push_back(std::move(d));
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < rest.size(); ++i)
            for (size_t j = i + 1; j < rest.size(); ++j) {
                if (rest[j] % rest[i] == 0) continue;
                Int g = gcd(rest[i], rest[j]);
                Int l = rest[i] / g * rest[j];
                rest[i] = g;
                rest[j] = l;
                changed = true;
            }
    }
    std::sort(rest.begin(), rest.end());
    std::vector<Int> out(ones, Int(1));
    for (auto& d : rest) out.push_back(std::move(d));
    return out;
}

} // namespace

SmithDiag smith_diagonal(std::vector<Triplet> entries, size_t rows, size_t cols) {
    // sparse rows: row -> (col -> val); column occupancy: col -> rows
    std::vector<std::map<size_t, Int>> r(rows);
    std::vector<std::set<size_t>> c(cols);
    for (auto& t : entries) {
        if (t.val == 0) continue;
        auto [it, fresh] = r[t.row].emplace(t.col, t.val);
        if (!fresh) {
            it->second += t.val;
            if (it->second == 0) {
                r[t.row].erase(it);
                continue;
            }
        }
        c[t.col].insert(t.row);
    }
    for (size_t col = 0; col < cols; ++col) {
        std::set<size_t> live;
        for (size_t row : c[col])
            if (r[row].count(col)) live.insert(row);
        c[col] = std::move(live);
    }

    std::vector<char> row_done(rows, 0), col_done(cols, 0);
    std::vector<Int> diag;

    // unit-pivot phase with a Markowitz-style fill heuristic
    for (;;) {
        size_t best_r = rows, best_c = cols;
        unsigned long best_cost = ~0ul;
        for (size_t row = 0; row < rows; ++row) {
            if (row_done[row]) continue;
            for (const auto& [col, val] : r[row]) {
                if (col_done[col]) continue;
                if (val != 1 && val != -1) continue;
                unsigned long cost =
                    static_cast<unsigned long>(r[row].size() - 1) *
                    static_cast<unsigned long>(c[col].size() - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_r = row;
                    best_c = col;
                    if (cost == 0) break;
                }
            }
            if (best_cost == 0) break;
        }
        if (best_r == rows) break;

        Int pv = r[best_r][best_c];
        auto col_rows = c[best_c];
        for (size_t row : col_rows) {
            if (row == best_r || row_done[row]) continue;
            auto it = r[row].find(best_c);
            if (it == r[row].end()) continue;
            Int f = it->second / pv; // pv is +-1
            for (const auto& [col, val] : r[best_r]) {
                if (col == best_c || col_done[col]) continue;
                auto jt = r[row].find(col);
                if (jt == r[row].end()) {
                    Int nv = -f * val;
                    if (nv != 0) {
                        r[row][col] = nv;
                        c[col].insert(row);
                    }
                } else {
                    jt->second -= f * val;
                    if (jt->second == 0) {
                        r[row].erase(jt);
                        c[col].erase(row);
                    }
                }
            }
            r[row].erase(best_c);
        }
        row_done[best_r] = 1;
        col_done[best_c] = 1;
        diag.push_back(1);
    }

    // dense tail
    std::vector<size_t> live_rows, live_cols;
    std::map<size_t, size_t> col_pos;
    for (size_t row = 0; row < rows; ++row)
        if (!row_done[row] && !r[row].empty()) live_rows.push_back(row);
    {
        std::set<size_t> cols_used;
        for (size_t row : live_rows)
            for (const auto& [col, val] : r[row]) {
                (void)val;
                if (!col_done[col]) cols_used.insert(col);
            }
        for (size_t col : cols_used) {
            col_pos[col] = live_cols.size();
            live_cols.push_back(col);
        }
    }
    if (!live_rows.empty()) {
        if (live_rows.size() > 4000 || live_cols.size() > 4000)
            fail_guard("smith normal form tail exceeds the dense size guard");
        std::vector<std::vector<Int>> a(live_rows.size(),
                                        std::vector<Int>(live_cols.size(), Int(0)));
        for (size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [col, val] : r[live_rows[i]])
                if (!col_done[col]) a[i][col_pos[col]] = val;
        DenseSmith tail = dense_smith(std::move(a), false);
        for (size_t i = 0; i < tail.rank; ++i) diag.push_back(tail.s[i][i]);
    }

    SmithDiag out;
    out.rank = diag.size();
    out.diag = normalize_chain(std::move(diag));
    return out;
}

DenseSmith dense_smith(std::vector<std::vector<Int>> a, bool transforms) {
    DenseSmith out;
    size_t m = a.size(), n = m ? a[0].size() : 0;
    if (transforms) {
        auto ident = [](size_t k) {
            std::vector<std::vector<Int>> e(k, std::vector<Int>(k, Int(0)));
            for (size_t i = 0; i < k; ++i) e[i][i] = 1;
            return e;
        };
        out.u = ident(m);
        out.uinv = ident(m);
        out.v = ident(n);
        out.vinv = ident(n);
    }
    auto row_add = [&](size_t dst, size_t src, const Int& f) {
        for (size_t j = 0; j < n; ++j) a[dst][j] += f * a[src][j];
        if (transforms) {
            for (size_t j = 0; j < m; ++j) out.u[dst][j] += f * out.u[src][j];
            for (size_t i = 0; i < m; ++i) out.uinv[i][src] -= f * out.uinv[i][dst];
        }
    };
    auto col_add = [&](size_t dst, size_t src, const Int& f) {
        for (size_t i = 0; i < m; ++i) a[i][dst] += f * a[i][src];
        if (transforms) {
            for (size_t i = 0; i < n; ++i) out.v[i][dst] += f * out.v[i][src];
            for (size_t j = 0; j < n; ++j) out.vinv[src][j] -= f * out.vinv[dst][j];
        }
    };
    auto row_swap = [&](size_t x, size_t y) {
        if (x == y) return;
        std::swap(a[x], a[y]);
        if (transforms) {
            std::swap(out.u[x], out.u[y]);
            for (size_t i = 0; i < m; ++i) std::swap(out.uinv[i][x], out.uinv[i][y]);
        }
    };
    auto col_swap = [&](size_t x, size_t y) {
        if (x == y) return;
        for (size_t i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
        if (transforms) {
            for (size_t i = 0; i < n; ++i) std::swap(out.v[i][x], out.v[i][y]);
            std::swap(out.vinv[x], out.vinv[y]);
        }
    };
    auto row_negate = [&](size_t x) {
        for (size_t j = 0; j < n; ++j) a[x][j] = -a[x][j];
        if (transforms) {
            for (size_t j = 0; j < m; ++j) out.u[x][j] = -out.u[x][j];
            for (size_t i = 0; i < m; ++i) out.uinv[i][x] = -out.uinv[i][x];
        }
    };

    size_t t = 0;
    while (true) {
        // smallest-magnitude nonzero pivot in the remaining block
        size_t pr = m, pc = n;
        Int best = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (a[i][j] == 0) continue;
                Int v = abs(a[i][j]);
                if (pr == m || v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr == m) break;
        row_swap(t, pr);
        col_swap(t, pc);
        bool clean = true;
        for (size_t i = t + 1; i < m; ++i) {
            if (a[i][t] == 0) continue;
            Int q = a[i][t] / a[t][t];
            if (q != 0) row_add(i, t, -q);
            if (a[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (a[t][j] == 0) continue;
            Int q = a[t][j] / a[t][t];
            if (q != 0) col_add(j, t, -q);
            if (a[t][j] != 0) clean = false;
        }
        if (!clean) continue; // smaller remainders appeared; re-pivot
        // divisibility: fold any non-multiple into the pivot's column
        bool retry = false;
        for (size_t i = t + 1; i < m && !retry; ++i)
            for (size_t j = t + 1; j < n; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_add(t, i, Int(1));
                    retry = true;
                    break;
                }
        if (retry) continue;
        if (a[t][t] < 0) row_negate(t);
        ++t;
    }
    out.s = std::move(a);
    out.rank = t;
    return out;
}

FieldReduce field_reduce(std::vector<std::vector<uint64_t>> a, uint64_t p, bool transforms) {
    FieldReduce out;
    size_t m = a.size(), n = m ? a[0].size() : 0;
    auto ident = [](size_t k) {
        std::vector<std::vector<uint64_t>> e(k, std::vector<uint64_t>(k, 0));
        for (size_t i = 0; i < k; ++i) e[i][i] = 1;
        return e;
    };
    if (transforms) {
        out.u = ident(m);
        out.uinv = ident(m);
        out.v = ident(n);
        out.vinv = ident(n);
    }
    auto inv_mod = [&](uint64_t x) {
        // p is prime and small; extended Euclid
        long long t0 = 0, t1 = 1, r0 = static_cast<long long>(p), r1 = static_cast<long long>(x % p);
        while (r1 != 0) {
            long long q = r0 / r1;
            t0 -= q * t1;
            std::swap(t0, t1);
            r0 -= q * r1;
            std::swap(r0, r1);
        }
        long long t = t0 % static_cast<long long>(p);
        if (t < 0) t += static_cast<long long>(p);
        return static_cast<uint64_t>(t);
    };

    size_t t = 0;
    for (size_t col = 0; col < n && t < m; ++col) {
        size_t pr = m;
        for (size_t i = t; i < m; ++i)
            if (a[i][col] % p != 0) { pr = i; break; }
        if (pr == m) continue;
        std::swap(a[t], a[pr]);
        if (transforms) {
            std::swap(out.u[t], out.u[pr]);
            for (size_t i = 0; i < m; ++i) std::swap(out.uinv[i][t], out.uinv[i][pr]);
        }
        uint64_t inv = inv_mod(a[t][col]);
        for (size_t j = 0; j < n; ++j) a[t][j] = (a[t][j] % p) * inv % p;
        if (transforms) {
            for (size_t j = 0; j < m; ++j) out.u[t][j] = out.u[t][j] * inv % p;
            uint64_t piv = inv_mod(inv);
            for (size_t i = 0; i < m; ++i) out.uinv[i][t] = out.uinv[i][t] * piv % p;
        }
        for (size_t i = 0; i < m; ++i) {
            if (i == t) continue;
            uint64_t f = a[i][col] % p;
            if (f == 0) continue;
            uint64_t neg = p - f;
            for (size_t j = 0; j < n; ++j) a[i][j] = (a[i][j] + neg * a[t][j]) % p;
            if (transforms) {
                for (size_t j = 0; j < m; ++j) out.u[i][j] = (out.u[i][j] + neg * out.u[t][j]) % p;
                for (size_t r = 0; r < m; ++r) out.uinv[r][t] = (out.uinv[r][t] + f * out.uinv[r][i]) % p;
            }
        }
        // column ops: move pivot column to position t and clear the row
        if (col != t) {
            for (size_t i = 0; i < m; ++i) std::swap(a[i][col], a[i][t]);
            if (transforms) {
                for (size_t i = 0; i < n; ++i) std::swap(out.v[i][col], out.v[i][t]);
                std::swap(out.vinv[col], out.vinv[t]);
            }
        }
        for (size_t j = 0; j < n; ++j) {
            if (j == t) continue;
            uint64_t f = a[t][j] % p;
            if (f == 0) continue;
            uint64_t neg = p - f;
            for (size_t i = 0; i < m; ++i) a[i][j] = (a[i][j] + neg * a[i][t]) % p;
            if (transforms) {
                for (size_t i = 0; i < n; ++i) out.v[i][j] = (out.v[i][j] + neg * out.v[i][t]) % p;
                for (size_t c2 = 0; c2 < n; ++c2) out.vinv[t][c2] = (out.vinv[t][c2] + f * out.vinv[j][c2]) % p;
            }
        }
        ++t;
    }
    out.rank = t;
    return out;
}

size_t sparse_field_rank(const std::vector<Triplet>& entries, size_t rows, size_t cols,
                         uint64_t p) {
    std::vector<std::map<size_t, uint64_t>> r(rows);
    std::vector<std::set<size_t>> c(cols);
    for (const auto& t : entries) {
        Int v = t.val % static_cast<long>(p);
        if (v < 0) v += static_cast<long>(p);
        uint64_t u = v.convert_to<uint64_t>();
        if (u == 0) continue;
        auto [it, fresh] = r[t.row].emplace(t.col, u);
        if (!fresh) {
            it->second = (it->second + u) % p;
            if (it->second == 0) r[t.row].erase(it);
        }
    }
    for (size_t row = 0; row < rows; ++row)
        for (const auto& [col, val] : r[row]) {
            (void)val;
            c[col].insert(row);
        }
    auto inv_mod = [&](uint64_t x) {
        uint64_t res = 1, base = x % p, e = p - 2;
        while (e) {
            if (e & 1) res = res * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return res;
    };
    std::vector<char> row_done(rows, 0), col_done(cols, 0);
    size_t rank = 0;
    for (;;) {
        size_t best_r = rows, best_c = cols;
        unsigned long best_cost = ~0ul;
        for (size_t row = 0; row < rows && best_cost > 0; ++row) {
            if (row_done[row] || r[row].empty()) continue;
            for (const auto& [col, val] : r[row]) {
                (void)val;
                if (col_done[col]) continue;
                unsigned long cost = static_cast<unsigned long>(r[row].size() - 1) *
                                     static_cast<unsigned long>(c[col].size() - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_r = row;
                    best_c = col;
                    if (cost == 0) break;
                }
            }
        }
        if (best_r == rows) break;
        uint64_t inv = inv_mod(r[best_r][best_c]);
        auto col_rows = c[best_c];
        for (size_t row : col_rows) {
            if (row == best_r || row_done[row]) continue;
            auto it = r[row].find(best_c);
            if (it == r[row].end()) continue;
            uint64_t f = it->second * inv % p;
            uint64_t neg = p - f;
            for (const auto& [col, val] : r[best_r]) {
                if (col == best_c || col_done[col]) continue;
                auto jt = r[row].find(col);
                if (jt == r[row].end()) {
                    uint64_t nv = neg * val % p;
                    if (nv) {
                        r[row][col] = nv;
                        c[col].insert(row);
                    }
                } else {
                    jt->second = (jt->second + neg * val) % p;
                    if (jt->second == 0) {
                        r[row].erase(jt);
                        c[col].erase(row);
                    }
                }
            }
            r[row].erase(best_c);
        }
        row_done[best_r] = 1;
        col_done[best_c] = 1;
        ++rank;
    }
    return rank;
}

Z2ColumnSolver::Z2ColumnSolver(size_t rows) : rows_(rows), words_((rows + 63) / 64) {}

bool Z2ColumnSolver::insert(const std::vector<size_t>& support) {
    std::vector<uint64_t> v(words_, 0);
    for (size_t r : support) v[r >> 6] ^= (1ull << (r & 63));
    for (size_t k = 0; k < basis_.size(); ++k) {
        size_t w = static_cast<size_t>(lead_[k]) >> 6;
        uint64_t bit = 1ull << (lead_[k] & 63);
        if (v[w] & bit)
            for (size_t i = 0; i < words_; ++i) v[i] ^= basis_[k][i];
    }
    long lead = -1;
    for (size_t i = 0; i < words_ && lead < 0; ++i)
        if (v[i]) lead = static_cast<long>(i * 64 + static_cast<size_t>(__builtin_ctzll(v[i])));
    if (lead < 0) return false;
    basis_.push_back(std::move(v));
    lead_.push_back(lead);
    return true;
}

bool Z2ColumnSolver::in_span(const std::vector<size_t>& support) const {
    std::vector<uint64_t> v(words_, 0);
    for (size_t r : support) v[r >> 6] ^= (1ull << (r & 63));
    for (size_t k = 0; k < basis_.size(); ++k) {
        size_t w = static_cast<size_t>(lead_[k]) >> 6;
        uint64_t bit = 1ull << (lead_[k] & 63);
        if (v[w] & bit)
            for (size_t i = 0; i < words_; ++i) v[i] ^= basis_[k][i];
    }
    for (uint64_t w : v)
        if (w) return false;
    return true;
}

} // namespace ptopo
