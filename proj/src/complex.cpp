#include "ptopo/complex.hpp"

#include "ptopo/io_json.hpp"
#include "ptopo/lp.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace ptopo {

std::pair<Simplex, int> Simplex::canonical(VertexList ids) {
    int sign = 1;
    // insertion sort, counting transpositions
    for (size_t i = 1; i < ids.size(); ++i) {
        VertexId v = ids[i];
        size_t j = i;
        while (j > 0 && ids[j - 1] > v) {
            ids[j] = ids[j - 1];
            --j;
            sign = -sign;
        }
        ids[j] = v;
    }
    for (size_t i = 1; i < ids.size(); ++i)
        if (ids[i] == ids[i - 1]) sign = 0;
    return {Simplex{std::move(ids)}, sign};
}

bool Simplex::contains_vertex(VertexId v) const {
    return std::binary_search(verts.begin(), verts.end(), v);
}

VertexList Simplex::facet(size_t drop) const {
    VertexList f;
    f.reserve(verts.size() - 1);
    for (size_t i = 0; i < verts.size(); ++i)
        if (i != drop) f.push_back(verts[i]);
    return f;
}

namespace {

void close_faces(std::map<VertexList, char>& cells, const VertexList& ids) {
    if (cells.count(ids)) return;
    cells[ids] = 1;
    if (ids.size() <= 1) return;
    for (size_t i = 0; i < ids.size(); ++i) {
        VertexList f;
        f.reserve(ids.size() - 1);
        for (size_t j = 0; j < ids.size(); ++j)
            if (j != i) f.push_back(ids[j]);
        close_faces(cells, f);
    }
}

} // namespace

SimplicialComplex SimplicialComplex::from_simplices(int ambient_dim,
                                                    std::vector<RatPoint> vertices,
                                                    const std::vector<VertexList>& generators) {
    SimplicialComplex k;
    k.ambient_ = ambient_dim;
    for (const auto& p : vertices)
        require_input(static_cast<int>(p.size()) == ambient_dim,
                      "vertex coordinate arity does not match ambient dimension");
    k.coords_ = std::move(vertices);

    std::map<VertexList, char> cells;
    for (const auto& g : generators) {
        auto [s, sign] = Simplex::canonical(g);
        require_input(sign != 0, "simplex with repeated vertex");
        for (VertexId v : s.verts)
            require_input(v >= 0 && v < static_cast<int>(k.coords_.size()),
                          "simplex references unknown vertex id");
        close_faces(cells, s.verts);
    }

    int maxdim = -1;
    for (const auto& [ids, _] : cells) maxdim = std::max(maxdim, static_cast<int>(ids.size()) - 1);
    k.simp_.assign(maxdim + 1, {});
    k.index_.assign(maxdim + 1, {});
    for (const auto& [ids, _] : cells) {
        int d = static_cast<int>(ids.size()) - 1;
        k.index_[d][ids] = k.simp_[d].size();
        k.simp_[d].push_back(Simplex{ids});
    }

    // geometric sanity: used vertices distinct, simplices affinely independent
    {
        std::map<RatPoint, VertexId> seen;
        if (!k.simp_.empty())
            for (const auto& s : k.simp_[0]) {
                VertexId v = s.verts[0];
                auto [it, fresh] = seen.emplace(k.coords_[v], v);
                require_input(fresh, "two vertices share exact coordinates");
                (void)it;
            }
    }
    for (int d = 1; d <= maxdim; ++d)
        for (const auto& s : k.simp_[d]) {
            std::vector<RatPoint> pts;
            for (VertexId v : s.verts) pts.push_back(k.coords_[v]);
            require_input(affine_rank(pts) == static_cast<size_t>(d),
                          "degenerate simplex: vertices affinely dependent");
        }

    k.build_incidence();
    return k;
}

void SimplicialComplex::build_incidence() {
    int n = dim();
    facets_.assign(n + 1, {});
    cofacets_.assign(n + 1, {});
    for (int d = 0; d <= n; ++d) {
        facets_[d].resize(simp_[d].size());
        cofacets_[d].resize(simp_[d].size());
    }
    for (int d = 1; d <= n; ++d) {
        for (size_t i = 0; i < simp_[d].size(); ++i) {
            const Simplex& s = simp_[d][i];
            int sign = 1;
            for (size_t j = 0; j < s.verts.size(); ++j) {
                auto it = index_[d - 1].find(s.facet(j));
                require_internal(it != index_[d - 1].end(), "face closure violated");
                facets_[d][i].push_back({it->second, sign});
                cofacets_[d - 1][it->second].push_back(i);
                sign = -sign;
            }
        }
    }
}

size_t SimplicialComplex::total_count() const {
    size_t t = 0;
    for (const auto& v : simp_) t += v.size();
    return t;
}

std::optional<size_t> SimplicialComplex::find(const Simplex& s) const {
    int d = s.dim();
    if (d < 0 || d > dim()) return std::nullopt;
    auto it = index_[d].find(s.verts);
    if (it == index_[d].end()) return std::nullopt;
    return it->second;
}

std::optional<size_t> SimplicialComplex::find_ids(VertexList ids) const {
    auto [s, sign] = Simplex::canonical(std::move(ids));
    if (sign == 0) return std::nullopt;
    return find(s);
}

std::vector<RatPoint> SimplicialComplex::simplex_points(int d, size_t i) const {
    std::vector<RatPoint> pts;
    for (VertexId v : simp_[d][i].verts) pts.push_back(coords_[v]);
    return pts;
}

SimplicialComplex SimplicialComplex::skeleton(int j) const {
    require_input(j >= 0, "skeleton index must be nonnegative");
    std::vector<VertexList> gens;
    int top = std::min(j, dim());
    for (int d = 0; d <= top; ++d)
        for (const auto& s : simp_[d]) gens.push_back(s.verts);
    return from_simplices(ambient_, coords_, gens);
}

SimplicialComplex SimplicialComplex::subcomplex(const std::vector<std::pair<int, size_t>>& gens) const {
    std::vector<VertexList> g;
    for (auto [d, i] : gens) g.push_back(simp_[d][i].verts);
    return from_simplices(ambient_, coords_, g);
}

std::vector<std::pair<int, size_t>> SimplicialComplex::maximal_simplices() const {
    std::vector<std::pair<int, size_t>> out;
    for (int d = 0; d <= dim(); ++d)
        for (size_t i = 0; i < simp_[d].size(); ++i)
            if (cofacets_[d][i].empty()) out.push_back({d, i});
    return out;
}

bool SimplicialComplex::is_pure() const {
    int n = dim();
    for (auto [d, i] : maximal_simplices())
        if (d != n) { (void)i; return false; }
    return true;
}

bool SimplicialComplex::is_closed_manifold() const {
    int n = dim();
    if (n < 1) return false;
    if (!is_pure()) return false;
    for (size_t i = 0; i < simp_[n - 1].size(); ++i)
        if (cofacets_[n - 1][i].size() != 2) return false;
    if (n == 1) return true;
    // connected vertex links
    for (size_t vi = 0; vi < simp_[0].size(); ++vi) {
        VertexId v = simp_[0][vi].verts[0];
        std::vector<VertexId> link;
        for (size_t e = 0; e < simp_[1].size(); ++e) {
            const auto& ev = simp_[1][e].verts;
            if (ev[0] == v) link.push_back(ev[1]);
            else if (ev[1] == v) link.push_back(ev[0]);
        }
        if (link.empty()) return false;
        std::map<VertexId, size_t> pos;
        for (size_t i = 0; i < link.size(); ++i) pos[link[i]] = i;
        std::vector<size_t> uf(link.size());
        std::iota(uf.begin(), uf.end(), 0);
        auto root = [&](size_t a) {
            while (uf[a] != a) a = uf[a] = uf[uf[a]];
            return a;
        };
        for (const auto& t : simp_[2]) {
            if (!t.contains_vertex(v)) continue;
            std::vector<VertexId> others;
            for (VertexId w : t.verts)
                if (w != v) others.push_back(w);
            uf[root(pos[others[0]])] = root(pos[others[1]]);
        }
        size_t r0 = root(0);
        for (size_t i = 1; i < link.size(); ++i)
            if (root(i) != r0) return false;
    }
    return true;
}

bool SimplicialComplex::pairwise_intersections_ok(std::string* why) const {
    auto maxs = maximal_simplices();
    for (size_t a = 0; a < maxs.size(); ++a)
        for (size_t b = a + 1; b < maxs.size(); ++b) {
            auto pa = simplex_points(maxs[a].first, maxs[a].second);
            auto pb = simplex_points(maxs[b].first, maxs[b].second);
            VertexList shared;
            const auto& va = simp_[maxs[a].first][maxs[a].second].verts;
            const auto& vb = simp_[maxs[b].first][maxs[b].second].verts;
            std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                                  std::back_inserter(shared));
            std::vector<RatPoint> shared_pts;
            for (VertexId v : shared) shared_pts.push_back(coords_[v]);
            if (!simplex_pair_meets_in_face(pa, pb, shared_pts)) {
                if (why) {
                    std::ostringstream os;
                    os << "simplices (" << maxs[a].first << "," << maxs[a].second
                       << ") and (" << maxs[b].first << "," << maxs[b].second
                       << ") do not meet in a common face";
                    *why = os.str();
                }
                return false;
            }
        }
    return true;
}

std::string SimplicialComplex::to_json() const {
    nlohmann::json j;
    j["dim"] = ambient_;
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& p : coords_) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : p) row.push_back(rat_str(c));
        verts.push_back(row);
    }
    j["vertices"] = verts;
    nlohmann::json sims = nlohmann::json::object();
    for (int d = 0; d <= dim(); ++d) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : simp_[d]) arr.push_back(s.verts);
        sims[std::to_string(d)] = arr;
    }
    j["simplices"] = sims;
    return j.dump(2);
}

SimplicialComplex SimplicialComplex::from_json(const std::string& text) {
    nlohmann::json j = parse_json(text);
    require_input(j.contains("dim") && j.contains("vertices") && j.contains("simplices"),
                  "complex JSON needs dim, vertices, simplices");
    int ambient = j["dim"].get<int>();
    std::vector<RatPoint> verts;
    for (const auto& row : j["vertices"]) {
        RatPoint p;
        for (const auto& c : row) p.push_back(parse_rat(c.get<std::string>()));
        verts.push_back(std::move(p));
    }
    std::vector<VertexList> gens;
    for (const auto& [key, arr] : j["simplices"].items()) {
        (void)key;
        for (const auto& row : arr) {
            VertexList ids;
            if (row.is_array())
                for (const auto& v : row) ids.push_back(v.get<int>());
            else
                ids.push_back(row.get<int>());
            gens.push_back(std::move(ids));
        }
    }
    return from_simplices(ambient, std::move(verts), gens);
}

SimplicialComplex SimplicialComplex::from_off(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    auto next = [&]() {
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return true;
        }
        return false;
    };
    require_input(next() && tok == "OFF", "not an OFF file");
    require_input(next(), "OFF: missing counts");
    size_t nv = std::stoul(tok);
    require_input(next(), "OFF: missing counts");
    size_t nf = std::stoul(tok);
    require_input(next(), "OFF: missing counts"); // edge count, ignored
    std::vector<RatPoint> verts(nv);
    for (size_t i = 0; i < nv; ++i) {
        RatPoint p(3);
        for (int c = 0; c < 3; ++c) {
            require_input(next(), "OFF: truncated vertex list");
            p[c] = parse_rat(tok);
        }
        verts[i] = std::move(p);
    }
    std::vector<VertexList> gens;
    for (size_t i = 0; i < nf; ++i) {
        require_input(next(), "OFF: truncated face list");
        size_t arity = std::stoul(tok);
        VertexList poly(arity);
        for (size_t c = 0; c < arity; ++c) {
            require_input(next(), "OFF: truncated face");
            poly[c] = std::stoi(tok);
        }
        require_input(arity >= 3, "OFF: face with fewer than 3 vertices");
        for (size_t c = 1; c + 1 < arity; ++c)
            gens.push_back({poly[0], poly[c], poly[c + 1]});
    }
    return from_simplices(3, std::move(verts), gens);
}

VertexId ComplexBuilder::add_vertex(const RatPoint& p) {
    require_input(static_cast<int>(p.size()) == ambient_, "vertex arity mismatch");
    auto it = coord_index_.find(p);
    if (it != coord_index_.end()) return it->second;
    VertexId id = static_cast<VertexId>(coords_.size());
    coords_.push_back(p);
    coord_index_[p] = id;
    return id;
}

void ComplexBuilder::add_simplex(const VertexList& ids) {
    auto [s, sign] = Simplex::canonical(ids);
    require_internal(sign != 0, "builder: degenerate simplex");
    close_faces(cells_, s.verts);
}

SimplicialComplex ComplexBuilder::build(bool check_independence) const {
    std::vector<VertexList> gens;
    for (const auto& [ids, _] : cells_) gens.push_back(ids);
    if (check_independence)
        return SimplicialComplex::from_simplices(ambient_, coords_, gens);
    // trusted path used by subdivision code on already-validated input
    SimplicialComplex k;
    k.ambient_ = ambient_;
    k.coords_ = coords_;
    int maxdim = -1;
    for (const auto& [ids, _] : cells_) maxdim = std::max(maxdim, static_cast<int>(ids.size()) - 1);
    k.simp_.assign(maxdim + 1, {});
    k.index_.assign(maxdim + 1, {});
    for (const auto& [ids, _] : cells_) {
        int d = static_cast<int>(ids.size()) - 1;
        k.index_[d][ids] = k.simp_[d].size();
        k.simp_[d].push_back(Simplex{ids});
    }
    k.build_incidence();
    return k;
}

SimplicialComplex abstract_complex(int n_vertices, const std::vector<VertexList>& tops) {
    // standard-basis embedding: simplices are automatically affinely
    // independent, so the expensive geometric checks can be skipped
    ComplexBuilder b(n_vertices);
    for (int i = 0; i < n_vertices; ++i) {
        RatPoint p(n_vertices, Rat(0));
        p[i] = 1;
        b.add_vertex(p);
    }
    for (const auto& t : tops) {
        for (VertexId v : t)
            require_input(v >= 0 && v < n_vertices, "abstract complex: vertex id out of range");
        auto [s, sign] = Simplex::canonical(t);
        require_input(sign != 0, "abstract complex: repeated vertex in simplex");
        (void)s;
        b.add_simplex(t);
    }
    return b.build(false);
}

SimplicialComplex relabel_quotient(const SimplicialComplex& k,
                                   const std::vector<VertexId>& vertex_map,
                                   int n_new_vertices, int orbit_size) {
    std::vector<std::set<VertexList>> images(k.dim() + 1);
    for (int d = 0; d <= k.dim(); ++d) {
        for (const auto& s : k.simplices(d)) {
            VertexList m;
            for (VertexId v : s.verts) m.push_back(vertex_map[v]);
            auto [q, sign] = Simplex::canonical(m);
            require_input(sign != 0, "quotient identifies two vertices of one simplex");
            images[d].insert(q.verts);
        }
        if (orbit_size > 0)
            require_input(images[d].size() * orbit_size == k.count(d),
                          "quotient is not a simplicial complex (cell collision)");
    }
    std::vector<VertexList> gens;
    for (int d = 0; d <= k.dim(); ++d)
        for (const auto& ids : images[d]) gens.push_back(ids);
    return abstract_complex(n_new_vertices, gens);
}

SimplicialComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l) {
    size_t nl = l.coord_count();
    auto pair_id = [&](VertexId a, VertexId b) {
        return static_cast<VertexId>(a * nl + b);
    };
    int ambient = k.ambient_dim() + l.ambient_dim();
    std::vector<RatPoint> coords(k.coord_count() * nl);
    for (size_t a = 0; a < k.coord_count(); ++a)
        for (size_t b = 0; b < nl; ++b) {
            RatPoint p = k.point(static_cast<VertexId>(a));
            const RatPoint& q = l.point(static_cast<VertexId>(b));
            p.insert(p.end(), q.begin(), q.end());
            coords[pair_id(static_cast<VertexId>(a), static_cast<VertexId>(b))] = std::move(p);
        }
    std::vector<VertexList> gens;
    for (auto [dk, ik] : k.maximal_simplices()) {
        const auto& sa = k.simplex(dk, ik).verts;
        for (auto [dl, il] : l.maximal_simplices()) {
            const auto& sb = l.simplex(dl, il).verts;
            size_t p = sa.size() - 1, q = sb.size() - 1;
            // monotone staircase paths through the (p+1)x(q+1) grid
            std::vector<std::pair<size_t, size_t>> path{{0, 0}};
            VertexList cell;
            std::function<void()> rec = [&]() {
                auto [i, j] = path.back();
                if (i == p && j == q) {
                    cell.clear();
                    for (auto [a, b] : path) cell.push_back(pair_id(sa[a], sb[b]));
                    gens.push_back(cell);
                    return;
                }
                if (i < p) {
                    path.push_back({i + 1, j});
                    rec();
                    path.pop_back();
                }
                if (j < q) {
                    path.push_back({i, j + 1});
                    rec();
                    path.pop_back();
                }
            };
            rec();
        }
    }
    return SimplicialComplex::from_simplices(ambient, std::move(coords), gens);
}

} // namespace ptopo
