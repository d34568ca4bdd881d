#pragma once

#include <utility>
#include <vector>

#include "neckcut/mesh.hpp"

namespace neckcut::mesh {

/// Approximate geodesic distance from seed vertices (vertex, initial distance).
/// Dijkstra on chord lengths followed by one pass that unfolds each triangle with two
/// settled corners into the plane and takes the straight-line distance from the virtual
/// source when that line crosses the opposite edge.
std::vector<double> geodesic_distance(const MeshSurface& m, const std::vector<std::pair<int, double>>& seeds);

}  // namespace neckcut::mesh
