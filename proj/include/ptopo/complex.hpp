#pragma once

#include "ptopo/linalg.hpp"
#include "ptopo/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ptopo {

using VertexId = int;
using VertexList = std::vector<VertexId>;

/// Canonical simplex: strictly increasing vertex ids. Orientation signs
/// of arbitrary vertex orders are recorded by the caller.
struct Simplex {
    VertexList verts;

    int dim() const { return static_cast<int>(verts.size()) - 1; }
    bool operator==(const Simplex& o) const { return verts == o.verts; }
    bool operator<(const Simplex& o) const { return verts < o.verts; }

    /// Sort an arbitrarily ordered vertex tuple; the sign is the parity
    /// of the sorting permutation, 0 when a vertex repeats.
    static std::pair<Simplex, int> canonical(VertexList ids);

    bool contains_vertex(VertexId v) const;
    VertexList facet(size_t drop) const; // omit the i-th vertex
};

/// Finite geometric simplicial complex over exact rational coordinates.
/// Immutable after construction; all operations are pure.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Build from coordinates and generating simplices (faces are
    /// completed automatically). Checks affine independence of every
    /// generating simplex and validity of all ids.
    static SimplicialComplex from_simplices(int ambient_dim,
                                            std::vector<RatPoint> vertices,
                                            const std::vector<VertexList>& generators);

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(simp_.size()) - 1; }
    size_t count(int d) const {
        return (d >= 0 && d <= dim()) ? simp_[d].size() : 0;
    }
    size_t total_count() const;

    const Simplex& simplex(int d, size_t i) const { return simp_[d][i]; }
    const std::vector<Simplex>& simplices(int d) const { return simp_[d]; }
    std::optional<size_t> find(const Simplex& s) const;
    std::optional<size_t> find_ids(VertexList ids) const;

    const RatPoint& point(VertexId v) const { return coords_[v]; }
    size_t coord_count() const { return coords_.size(); }
    std::vector<RatPoint> simplex_points(int d, size_t i) const;

    /// Facets of simplex (d,i) with alternating boundary signs.
    const std::vector<std::pair<size_t, int>>& facets(int d, size_t i) const {
        return facets_[d][i];
    }
    /// Indices of (d+1)-simplices having (d,i) as a facet.
    const std::vector<size_t>& cofacets(int d, size_t i) const {
        return cofacets_[d][i];
    }

    SimplicialComplex skeleton(int j) const;
    /// Subcomplex generated by the listed simplices (dim, index).
    SimplicialComplex subcomplex(const std::vector<std::pair<int, size_t>>& gens) const;

    /// Maximal simplices (those with no cofacet).
    std::vector<std::pair<int, size_t>> maximal_simplices() const;
    bool is_pure() const;

    /// Closed-manifold test used as a precondition by dual skeleta:
    /// every (n-1)-simplex has exactly two cofacets and all vertex
    /// links are connected.
    bool is_closed_manifold() const;

    /// Exhaustive pairwise geometric check: intersections of member
    /// simplices are common faces. Quadratic; used by validation paths.
    bool pairwise_intersections_ok(std::string* why = nullptr) const;

    std::string to_json() const;
    static SimplicialComplex from_json(const std::string& text);
    static SimplicialComplex from_off(const std::string& text);

private:
    int ambient_ = 0;
    std::vector<RatPoint> coords_;
    std::vector<std::vector<Simplex>> simp_;
    std::vector<std::map<VertexList, size_t>> index_;
    std::vector<std::vector<std::vector<std::pair<size_t, int>>>> facets_;
    std::vector<std::vector<std::vector<size_t>>> cofacets_;

    void build_incidence();
    friend class ComplexBuilder;
};

/// Incremental builder used by subdivision/refinement code paths.
class ComplexBuilder {
public:
    explicit ComplexBuilder(int ambient_dim) : ambient_(ambient_dim) {}

    VertexId add_vertex(const RatPoint& p); // dedups exact coordinates
    void add_simplex(const VertexList& ids); // adds all faces

    size_t vertex_count() const { return coords_.size(); }
    const RatPoint& vertex(VertexId v) const { return coords_[v]; }

    SimplicialComplex build(bool check_independence = true) const;

private:
    int ambient_;
    std::vector<RatPoint> coords_;
    std::map<RatPoint, VertexId> coord_index_;
    std::map<VertexList, char> cells_;
};

/// Abstract complex helper: vertices embedded as standard basis vectors
/// of R^n, which realizes any abstract complex geometrically.
SimplicialComplex abstract_complex(int n_vertices, const std::vector<VertexList>& tops);

/// Quotient by a vertex relabeling. Fails when a simplex degenerates or
/// two non-identified simplices collide on the same image vertex set;
/// when `orbit_size` > 0 the per-dimension counts must divide exactly.
SimplicialComplex relabel_quotient(const SimplicialComplex& k,
                                   const std::vector<VertexId>& vertex_map,
                                   int n_new_vertices, int orbit_size = 0);

/// Staircase triangulation of |K| x |L|.
SimplicialComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l);

} // namespace ptopo
