#include "ptopo/flatnorm.hpp"

#include "ptopo/io_json.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>

namespace ptopo {

namespace {

struct Program {
    const SimplicialComplex* k;
    int dim;
    size_t nr, ns;
    std::vector<Rat> vol_r, vol_s;   // rationalized objective weights
    std::vector<Real> true_vol_r, true_vol_s;
    std::vector<std::vector<std::pair<size_t, int>>> scol; // boundary column of each s simplex
};

Program build_program(const Chain& t) {
    Program p;
    p.k = t.host;
    p.dim = t.dim;
    p.nr = p.k->count(t.dim);
    p.ns = p.k->count(t.dim + 1);
    require_input(p.nr > 0 || t.terms.empty(), "chain not supported on the complex");
    p.vol_r.resize(p.nr);
    p.true_vol_r.resize(p.nr);
    for (size_t i = 0; i < p.nr; ++i) {
        p.true_vol_r[i] = simplex_volume(*p.k, t.dim, i);
        p.vol_r[i] = rationalize(p.true_vol_r[i]);
    }
    p.vol_s.resize(p.ns);
    p.true_vol_s.resize(p.ns);
    p.scol.resize(p.ns);
    for (size_t j = 0; j < p.ns; ++j) {
        p.true_vol_s[j] = simplex_volume(*p.k, t.dim + 1, j);
        p.vol_s[j] = rationalize(p.true_vol_s[j]);
        for (auto [f, sign] : p.k->facets(t.dim + 1, j)) p.scol[j].push_back({f, sign});
    }
    return p;
}

FlatDecomposition finish(const Program& p, const std::vector<Rat>& r, const std::vector<Rat>& s,
                         FlatSolver solver) {
    FlatDecomposition d;
    d.solver = solver;
    d.integral = true;
    for (size_t i = 0; i < p.nr; ++i) {
        if (r[i] == 0) continue;
        d.r_terms[i] = r[i];
        if (denominator(r[i]) != 1) d.integral = false;
        Rat a = abs(r[i]);
        d.mass_r += Real(a) * p.true_vol_r[i];
        d.objective_exact += a * p.vol_r[i];
    }
    for (size_t j = 0; j < p.ns; ++j) {
        if (s[j] == 0) continue;
        d.s_terms[j] = s[j];
        if (denominator(s[j]) != 1) d.integral = false;
        Rat a = abs(s[j]);
        d.mass_s += Real(a) * p.true_vol_s[j];
        d.objective_exact += a * p.vol_s[j];
    }
    d.value = d.mass_r + d.mass_s;
    if (solver != FlatSolver::BruteForce)
        d.solver = d.integral ? FlatSolver::LpExactIntegral : FlatSolver::LpRelaxation;
    return d;
}

} // namespace

Chain FlatDecomposition::r_chain(const SimplicialComplex& k, int dim) const {
    require_input(integral, "witness is not integral");
    Chain c = zero_chain(k, dim);
    for (const auto& [i, v] : r_terms) c.add(i, numerator(v));
    return c;
}

Chain FlatDecomposition::s_chain(const SimplicialComplex& k, int dim) const {
    require_input(integral, "witness is not integral");
    Chain c = zero_chain(k, dim + 1);
    for (const auto& [j, v] : s_terms) c.add(j, numerator(v));
    return c;
}

FlatDecomposition flat_norm_lp(const Chain& t, bool lex_tiebreak) {
    Program p = build_program(t);
    size_t nvars = 2 * p.nr + 2 * p.ns;
    auto rp = [&](size_t i) { return i; };
    auto rm = [&](size_t i) { return p.nr + i; };
    auto sp = [&](size_t j) { return 2 * p.nr + j; };
    auto sm = [&](size_t j) { return 2 * p.nr + p.ns + j; };

    RatMat a(p.nr, RatVec(nvars, Rat(0)));
    RatVec b(p.nr, Rat(0));
    for (size_t i = 0; i < p.nr; ++i) {
        a[i][rp(i)] = 1;
        a[i][rm(i)] = -1;
    }
    for (size_t j = 0; j < p.ns; ++j)
        for (auto [f, sign] : p.scol[j]) {
            a[f][sp(j)] += sign;
            a[f][sm(j)] -= sign;
        }
    for (const auto& [i, v] : t.terms) b[i] = Rat(v);
    RatVec c(nvars, Rat(0));
    for (size_t i = 0; i < p.nr; ++i) c[rp(i)] = c[rm(i)] = p.vol_r[i];
    for (size_t j = 0; j < p.ns; ++j) c[sp(j)] = c[sm(j)] = p.vol_s[j];

    LpResult base = lp_solve(a, b, c);
    require_internal(base.status == LpStatus::Optimal, "flat norm LP did not solve");

    // lexicographic tie-break on |s_j|: pin the optimum, then minimize
    // each |s_j| in turn
    RatMat a2 = a;
    RatVec b2 = b;
    {
        RatVec objrow = c;
        a2.push_back(objrow);
        b2.push_back(base.value);
    }
    RatVec x = base.x;
    for (size_t j = 0; lex_tiebreak && j < p.ns; ++j) {
        RatVec cj(nvars, Rat(0));
        cj[sp(j)] = 1;
        cj[sm(j)] = 1;
        LpResult step = lp_solve(a2, b2, cj);
        require_internal(step.status == LpStatus::Optimal, "flat norm lex phase failed");
        x = step.x;
        RatVec pin(nvars, Rat(0));
        pin[sp(j)] = 1;
        pin[sm(j)] = 1;
        a2.push_back(pin);
        b2.push_back(step.value);
    }

    std::vector<Rat> r(p.nr), s(p.ns);
    for (size_t i = 0; i < p.nr; ++i) r[i] = x[rp(i)] - x[rm(i)];
    for (size_t j = 0; j < p.ns; ++j) s[j] = x[sp(j)] - x[sm(j)];

    // exact witness identity: r must equal t - boundary(s)
    for (size_t i = 0; i < p.nr; ++i) {
        Rat expect = 0;
        auto it = t.terms.find(i);
        if (it != t.terms.end()) expect = Rat(it->second);
        Rat bs = 0;
        (void)bs;
        for (size_t j = 0; j < p.ns; ++j) {
            if (s[j] == 0) continue;
            for (auto [f, sign] : p.scol[j])
                if (f == i) expect -= sign * s[j];
        }
        require_internal(r[i] == expect, "flat norm witness identity violated");
    }
    return finish(p, r, s, FlatSolver::LpExactIntegral);
}

FlatDecomposition flat_norm_bruteforce(const Chain& t, const Int& coeff_bound) {
    Program p = build_program(t);
    size_t max_simplices = 30;
    if (const char* s = std::getenv("PTOPO_MAX_BRUTE")) max_simplices = std::strtoul(s, nullptr, 10);
    if (p.nr + p.ns > max_simplices) fail_guard("brute-force flat norm limited to 30 simplices");
    long bound = coeff_bound.convert_to<long>();
    require_input(bound >= 0, "negative coefficient bound");
    double steps = 1;
    for (size_t j = 0; j < p.ns; ++j) steps *= 2.0 * static_cast<double>(bound) + 1.0;
    if (steps > 6.0e7) fail_guard("brute-force flat norm search space too large");

    std::vector<Rat> r0(p.nr, Rat(0));
    for (const auto& [i, v] : t.terms) r0[i] = Rat(v);

    std::vector<long> s(p.ns, 0);
    std::vector<Rat> r = r0;
    Rat value = 0;
    for (size_t i = 0; i < p.nr; ++i) value += abs(r[i]) * p.vol_r[i];

    auto key_of = [&](const std::vector<long>& sv) {
        std::vector<long> key;
        key.reserve(2 * sv.size());
        for (long x : sv) key.push_back(x < 0 ? -x : x);
        for (long x : sv) key.push_back(x < 0 ? 1 : 0);
        return key;
    };

    Rat best_value = value;
    std::vector<long> best_s = s;
    std::vector<long> best_key = key_of(s);

    if (p.ns > 0 && bound > 0) {
        // odometer over s in [-bound, bound]^ns with incremental updates
        std::vector<long> digit(p.ns, -bound);
        auto apply_delta = [&](size_t j, long delta) {
            if (delta == 0) return;
            value -= abs(Rat(s[j])) * p.vol_s[j];
            s[j] += delta;
            value += abs(Rat(s[j])) * p.vol_s[j];
            for (auto [f, sign] : p.scol[j]) {
                value -= abs(r[f]) * p.vol_r[f];
                r[f] -= Rat(sign * delta);
                value += abs(r[f]) * p.vol_r[f];
            }
        };
        // initialize to the first odometer state
        for (size_t j = 0; j < p.ns; ++j) apply_delta(j, -bound);
        for (;;) {
            if (value < best_value ||
                (value == best_value && key_of(s) < best_key)) {
                best_value = value;
                best_s = s;
                best_key = key_of(s);
            }
            size_t j = 0;
            while (j < p.ns && digit[j] == bound) ++j;
            if (j == p.ns) break;
            apply_delta(j, 1);
            digit[j] += 1;
            for (size_t l = 0; l < j; ++l) {
                apply_delta(l, -2 * bound);
                digit[l] = -bound;
            }
        }
    }

    std::vector<Rat> rbest = r0, sbest(p.ns, Rat(0));
    for (size_t j = 0; j < p.ns; ++j) {
        sbest[j] = Rat(best_s[j]);
        if (best_s[j] == 0) continue;
        for (auto [f, sign] : p.scol[j]) rbest[f] -= Rat(sign * best_s[j]);
    }
    return finish(p, rbest, sbest, FlatSolver::BruteForce);
}

std::string flat_to_json(const FlatDecomposition& d, const Chain& t) {
    nlohmann::json j;
    j["value"] = real_str17(d.value);
    j["mass_r"] = real_str17(d.mass_r);
    j["mass_s"] = real_str17(d.mass_s);
    j["integral"] = d.integral;
    switch (d.solver) {
        case FlatSolver::LpExactIntegral: j["status"] = "lp-exact-integral"; break;
        case FlatSolver::LpRelaxation: j["status"] = "lp-relaxation"; break;
        case FlatSolver::BruteForce: j["status"] = "brute-force"; break;
    }
    auto dump_terms = [&](const std::map<size_t, Rat>& terms, int dim) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [i, v] : terms) {
            nlohmann::json row;
            row["simplex"] = t.host->simplex(dim, i).verts;
            row["coeff"] = rat_str(v);
            arr.push_back(row);
        }
        return arr;
    };
    j["r"] = dump_terms(d.r_terms, t.dim);
    j["s"] = dump_terms(d.s_terms, t.dim + 1);
    return j.dump(2);
}

std::string flat_to_csv(const FlatDecomposition& d) {
    std::string status = d.solver == FlatSolver::BruteForce     ? "brute-force"
                         : d.solver == FlatSolver::LpRelaxation ? "lp-relaxation"
                                                                : "lp-exact-integral";
    return "value,massR,massS,status\n" + real_str17(d.value) + "," + real_str17(d.mass_r) +
           "," + real_str17(d.mass_s) + "," + status + "\n";
}

} // namespace ptopo
