#pragma once

#include "ptopo/complex.hpp"
#include "ptopo/homology.hpp"

namespace ptopo {
namespace fixtures {

/// Triangle boundary (S^1), 3 vertices, geometric in R^2.
SimplicialComplex circle();
/// Boundary of the (n+1)-simplex: an n-sphere with n+2 vertices.
SimplicialComplex sphere(int n);
/// 7-vertex torus (faces {i,i+1,i+3} and {i,i+2,i+3} mod 7).
SimplicialComplex torus7();
/// 6-vertex projective plane (found by exact cover over K6 triangles).
SimplicialComplex rp2();
/// Klein bottle from a flipped grid quotient (smallest valid grid).
SimplicialComplex klein_bottle();
/// Lens space L(3,1): quotient of the barycentric subdivision of the
/// join of two hexagons by the free diagonal Z_3 rotation.
SimplicialComplex lens_3_1();
/// RP^4: quotient of the barycentrically subdivided boundary of the
/// 5-dimensional cross-polytope by the antipodal map. Moderately large.
SimplicialComplex rp4();
/// Generator of H^1(RP^4; Z_2): the deck cocycle of the double cover.
Cochain rp4_generator(const SimplicialComplex& rp4_complex);
/// Flat annulus between two concentric triangles, geometric in R^2.
SimplicialComplex annulus();
/// Disk: hexagon coned to its center, geometric in R^2.
SimplicialComplex disk_hexagon();
/// Two-triangle unit square [0,1]^2.
SimplicialComplex unit_square();
/// n x n grid of unit squares, each split into two triangles.
SimplicialComplex grid_square(int n);
/// Unit cube split into 6 tetrahedra (Kuhn subdivision).
SimplicialComplex unit_cube_complex();

} // namespace fixtures
} // namespace ptopo
