#include "ptopo/chain.hpp"

#include "ptopo/io_json.hpp"

#include <json.hpp>

#include <algorithm>

namespace ptopo {

void Chain::add(size_t index, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, fresh] = terms.emplace(index, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0) terms.erase(it);
    }
}

void Chain::add_oriented(const VertexList& ids, const Int& coeff) {
    auto [s, sign] = Simplex::canonical(ids);
    require_input(sign != 0, "chain term with repeated vertex");
    auto idx = host->find(s);
    require_input(idx.has_value(), "chain term simplex is not in the host complex");
    add(*idx, sign * coeff);
}

Chain zero_chain(const SimplicialComplex& k, int dim) {
    Chain c;
    c.host = &k;
    c.dim = dim;
    return c;
}

Chain chain_add(const Chain& a, const Chain& b) {
    require_input(a.host == b.host && a.dim == b.dim, "chain mismatch in addition");
    Chain c = a;
    for (const auto& [i, v] : b.terms) c.add(i, v);
    return c;
}

Chain chain_scale(const Int& s, const Chain& a) {
    Chain c = zero_chain(*a.host, a.dim);
    if (s == 0) return c;
    for (const auto& [i, v] : a.terms) c.terms[i] = s * v;
    return c;
}

Chain boundary(const Chain& c) {
    require_input(c.dim >= 1, "boundary of a 0-chain is not defined");
    Chain out = zero_chain(*c.host, c.dim - 1);
    for (const auto& [i, v] : c.terms)
        for (auto [f, sign] : c.host->facets(c.dim, i)) out.add(f, sign * v);
    return out;
}

Real mass(const Chain& c) {
    Real m = 0;
    for (const auto& [i, v] : c.terms) {
        Int a = v < 0 ? Int(-v) : v;
        m += Real(a) * simplex_volume(*c.host, c.dim, i);
    }
    return m;
}

Chain restrict_chain(const Chain& c,
                     const std::function<bool(const SimplicialComplex&, int, size_t)>& keep) {
    Chain out = zero_chain(*c.host, c.dim);
    for (const auto& [i, v] : c.terms)
        if (keep(*c.host, c.dim, i)) out.terms[i] = v;
    return out;
}

void PLMap::check_compatible() const {
    auto tops = source->maximal_simplices();
    require_input(lin.size() == tops.size() && off.size() == tops.size(),
                  "PL map must carry one affine map per top simplex");
    for (size_t a = 0; a < tops.size(); ++a)
        for (size_t b = a + 1; b < tops.size(); ++b) {
            const auto& va = source->simplex(tops[a].first, tops[a].second).verts;
            const auto& vb = source->simplex(tops[b].first, tops[b].second).verts;
            for (VertexId v : va) {
                if (!std::binary_search(vb.begin(), vb.end(), v)) continue;
                RatPoint pa = apply(a, source->point(v));
                RatPoint pb = apply(b, source->point(v));
                require_input(pa == pb, "PL map pieces disagree on a shared vertex");
            }
        }
}

RatPoint PLMap::apply(size_t top_index, const RatPoint& x) const {
    return vadd(mat_vec(lin[top_index], x), off[top_index]);
}

std::vector<RatPoint> PLMap::map_simplex(int d, size_t i, bool* found) const {
    auto tops = source->maximal_simplices();
    const auto& verts = source->simplex(d, i).verts;
    for (size_t t = 0; t < tops.size(); ++t) {
        const auto& tv = source->simplex(tops[t].first, tops[t].second).verts;
        bool inside = true;
        for (VertexId v : verts)
            if (!std::binary_search(tv.begin(), tv.end(), v)) { inside = false; break; }
        if (!inside) continue;
        if (found) *found = true;
        std::vector<RatPoint> img;
        for (VertexId v : verts) img.push_back(apply(t, source->point(v)));
        return img;
    }
    if (found) {
        *found = false;
        return {};
    }
    fail_input("PL map does not cover a chain simplex");
}

PLMap identity_map(const SimplicialComplex& k) {
    PLMap f;
    f.source = &k;
    size_t n = k.maximal_simplices().size();
    RatMat id = rat_identity(k.ambient_dim());
    RatVec zero(k.ambient_dim(), Rat(0));
    f.lin.assign(n, id);
    f.off.assign(n, zero);
    return f;
}

PLMap affine_map(const SimplicialComplex& k, const RatMat& a, const RatVec& b) {
    PLMap f;
    f.source = &k;
    size_t n = k.maximal_simplices().size();
    f.lin.assign(n, a);
    f.off.assign(n, b);
    return f;
}

Chain pushforward(const Chain& c, const PLMap& f, const SimplicialComplex& target) {
    require_input(f.source == c.host, "pushforward: map source differs from chain host");
    int k = c.dim;
    Chain out = zero_chain(target, k);
    for (const auto& [i, coeff] : c.terms) {
        std::vector<RatPoint> img = f.map_simplex(k, i);
        if (affine_rank(img) < static_cast<size_t>(k)) continue; // rank-deficient image drops
        Chart chart = chart_of(img);
        Rat total = chart_volume(img, chart);
        // orientation of the mapped simplex in its own chart
        RatMat edges;
        for (size_t t = 1; t < img.size(); ++t)
            edges.push_back(vsub(chart.apply(img[t]), chart.apply(img[0])));
        Rat base_det = rat_det(edges);

        // resolve the image as a union of target k-simplices
        Rat covered = 0;
        bool any = false;
        for (size_t j = 0; j < target.count(k); ++j) {
            auto pts = target.simplex_points(k, j);
            bool inside = true;
            for (const auto& p : pts) {
                auto lam = barycentric_coords(img, p);
                if (!lam) { inside = false; break; }
                for (const auto& l : *lam)
                    if (l < 0) { inside = false; break; }
                if (!inside) break;
            }
            if (!inside) continue;
            RatMat tedges;
            for (size_t t = 1; t < pts.size(); ++t)
                tedges.push_back(vsub(chart.apply(pts[t]), chart.apply(pts[0])));
            Rat tdet = rat_det(tedges);
            if (tdet == 0) continue;
            covered += abs(tdet);
            any = true;
            int rel = (tdet > 0) == (base_det > 0) ? 1 : -1;
            out.add(j, coeff * rel);
        }
        (void)any;
        if (covered != abs(base_det)) {
            fail_input("pushforward: image of simplex (" + std::to_string(k) + "," +
                       std::to_string(i) + ") is not resolved by the target complex");
        }
    }
    return out;
}

std::string chain_to_json(const Chain& c) {
    nlohmann::json j;
    j["dim"] = c.dim;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [i, v] : c.terms) {
        nlohmann::json t;
        t["simplex"] = c.host->simplex(c.dim, i).verts;
        t["coeff"] = v.str();
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j.dump(2);
}

Chain chain_from_json(const SimplicialComplex& host, const std::string& text) {
    nlohmann::json j = parse_json(text);
    require_input(j.contains("dim") && j.contains("terms"), "chain JSON needs dim and terms");
    Chain c = zero_chain(host, j["dim"].get<int>());
    for (const auto& t : j["terms"]) {
        VertexList ids;
        for (const auto& v : t["simplex"]) ids.push_back(v.get<int>());
        Int coeff;
        if (t["coeff"].is_string())
            coeff = Int(t["coeff"].get<std::string>());
        else
            coeff = Int(t["coeff"].get<long long>());
        require_input(coeff != 0, "chain JSON: zero coefficient");
        require_input(static_cast<int>(ids.size()) == c.dim + 1,
                      "chain JSON: simplex arity does not match dim");
        c.add_oriented(ids, coeff);
    }
    return c;
}

} // namespace ptopo
