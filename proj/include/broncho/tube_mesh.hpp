#pragma once

#include <cstdint>
#include <vector>

#include "broncho/airway_tree.hpp"
#include "broncho/tri_mesh.hpp"

namespace broncho {

/// One closed capped frustum per branch, radius going from the parent's
/// diameter (the branch's own for the root) to the branch's diameter, with
/// axial rings spaced about one circumferential edge apart. Faces carry the
/// branch id. Throws InputError when a diameter is missing or segments < 6.
TriMesh synthesize_tube_mesh(const AirwayTree& tree, int circle_segments);

/// Uniform random points on the frustum surfaces, `density` per mm^2 in
/// expectation, minus any point closer to another branch's axis than that
/// branch's radius.
std::vector<Vec3> sample_surface_point_cloud(const AirwayTree& tree, double density, std::uint64_t seed);

/// Radius of a branch's frustum at axial parameter t in [0, 1].
double tube_radius_at(const AirwayTree& tree, int branch_id, double t);

}  // namespace broncho
