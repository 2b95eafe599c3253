#pragma once

#include "broncho/tri_mesh.hpp"

namespace broncho {

struct FrustumLabels {
  int lateral = 0;
  int tail_cap = 0;
  int head_cap = 0;
};

/// Appends a closed truncated cone from `tail` to `head`: `segments` sides,
/// `axial_rings` + 1 vertex rings, flat caps fanned to centre vertices at
/// the two end points. Outward winding. Labels go to face_branch.
void append_capped_frustum(TriMesh& mesh, const Vec3& tail, const Vec3& head, double tail_radius,
                           double head_radius, int segments, int axial_rings, const FrustumLabels& labels);

/// Closed cylinder along +z from the origin. Lateral faces are labelled 0,
/// the bottom cap 1 and the top cap 2.
TriMesh make_cylinder(double radius, double length, int segments, int axial_rings);

/// Icosahedron subdivided `subdivisions` times and projected to the sphere.
TriMesh make_icosphere(int subdivisions, double radius = 1.0);

/// Axis-aligned closed cube centred at the origin, each side split n x n.
TriMesh make_cube(double side, int n);

/// Flat open grid in z = 0 with nx x ny vertices and uniform diagonals.
TriMesh make_grid(int nx, int ny, double spacing);

}  // namespace broncho
