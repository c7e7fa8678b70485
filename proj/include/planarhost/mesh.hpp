#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "planarhost/planar_map.hpp"

namespace planarhost::mesh {

using core::FacialWalk;
using core::PlanarMap;
using core::VertexId;
using Path = std::vector<VertexId>;

/// An m-n-mesh: a cylinder of `rings` columns by `layers` rows with a
/// cycle of length m fanned onto the top rim and a cycle of length n
/// fanned onto the bottom rim. c1 and c2 are those cycles, both facial
/// in `map` (recorded in traced orientation).
struct Mesh {
  PlanarMap map;
  FacialWalk c1;
  FacialWalk c2;
  int m = 0;
  int n = 0;
  int rings = 0;   // columns of the cylinder, N = m*n
  int layers = 0;  // rows, h = m+n+2

  VertexId grid(int r, int a) const;  // column index taken mod rings
  VertexId c1_vertex(int j) const;    // mod m
  VertexId c2_vertex(int t) const;    // mod n

  /// Fan window of c1 vertex j on the top rim: columns j*n .. (j+1)*n
  /// inclusive; consecutive windows share an endpoint. Analogously for
  /// c2 with stride m on the bottom rim.
  int c1_window_start(int j) const { return (j % m) * n; }
  int c2_window_start(int t) const { return (t % n) * m; }
};

/// Cylinder mesh with fixed dimensions rings = m*n, layers = m+n+2.
/// Throws StructuralError if m or n < 3.
Mesh build_mesh(int m, int n);

/// Disjoint paths realizing an order-reversing injection between the
/// designated cycles. Paths are oriented pairs[i].first ->
/// pairs[i].second and meet c1 and c2 only at their endpoints.
struct Linkage {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<Path> paths;
};

/// Routes the injection `phi` (pairs of cycle vertices; sources may lie
/// on either cycle, images on the other). Requires phi order-reversing
/// with respect to the cyclic orders of c1 and c2. Deterministic.
/// Throws StructuralError on malformed phi or router failure.
Linkage route_linkage(const Mesh& mesh,
                      const std::vector<std::pair<VertexId, VertexId>>& phi);

/// Independent check: pairs equal phi, each path joins its pair along
/// edges of the mesh without repeats, paths are pairwise disjoint, and
/// no path meets c1 or c2 except at its own endpoints.
std::vector<std::string> verify_linkage(
    const Mesh& mesh, const std::vector<std::pair<VertexId, VertexId>>& phi,
    const Linkage& linkage);

/// Graph text format preceded by "mesh <m> <n>" and the c1/c2 vertex
/// sequences. parse_mesh rebuilds the mesh and checks the cycles match.
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh parse_mesh(std::istream& in);

}  // namespace planarhost::mesh
