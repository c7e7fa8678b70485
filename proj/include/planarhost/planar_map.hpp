#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planarhost/graph.hpp"

namespace planarhost::core {

/// Closed facial walk of a rotation system, recorded as the cyclic
/// sequence of vertices visited. Vertices may repeat (e.g. tree faces).
struct FacialWalk {
  CyclicSeq walk;

  std::size_t length() const { return walk.size(); }

  /// Canonical key: lexicographically least rotation of the vertex
  /// sequence. Two traces of the same face agree on this key.
  std::string key() const;
};

/// Graph plus a rotation system: for each vertex, the cyclic order of
/// its neighbours. A rotation system determines an embedding in an
/// orientable surface; it is planar iff euler_validate holds.
class PlanarMap {
 public:
  PlanarMap() = default;
  explicit PlanarMap(Graph g) : graph_(std::move(g)) {}

  Graph& graph() { return graph_; }
  const Graph& graph() const { return graph_; }

  void set_rotation(const VertexId& v, std::vector<VertexId> order);
  const std::vector<VertexId>& rotation(const VertexId& v) const;
  bool has_rotation(const VertexId& v) const { return rot_.count(v) > 0; }

  /// Checks every vertex has a rotation listing exactly its neighbours.
  void validate() const;

  /// Position of `to` in rotation(v); throws if absent.
  std::size_t rotation_index(const VertexId& v, const VertexId& to) const;

  /// Successor of `to` in the cyclic rotation at v.
  const VertexId& rotation_next(const VertexId& v, const VertexId& to) const;
  const VertexId& rotation_prev(const VertexId& v, const VertexId& to) const;

  /// All rotations reversed; mirrors the embedding.
  PlanarMap mirrored() const;

 private:
  Graph graph_;
  std::map<VertexId, std::vector<VertexId>> rot_;
};

/// Traces all faces of the rotation system using the next-dart rule:
/// after traversing dart (u,v), continue along the dart from v to the
/// rotation-successor of u at v. Deterministic: darts are visited in
/// sorted order of their first appearance.
std::vector<FacialWalk> trace_faces(const PlanarMap& map);

/// Per-component Euler check: V - E + F == 2 for every connected
/// component (faces assigned to the component of their vertices).
bool euler_validate(const PlanarMap& map);

/// Glues two planar maps along facial cycles of equal length. `phi`
/// maps V(cycle_a) onto V(cycle_b) and must reverse the cyclic order —
/// the two cycles are traversed in opposite directions, which is what
/// keeps the result planar when each bounds a face of its map. Every
/// facial walk of `a` and `b` other than the glued ones survives in the
/// result. Vertex names from `b` win on the seam; all others are kept
/// as-is (so the two maps must not share names off the seam).
///
/// cycle_a / cycle_b must be facial walks (up to rotation) of their
/// maps with no repeated vertices.
PlanarMap glue_on_facial_cycles(
    const PlanarMap& a, const std::vector<VertexId>& cycle_a,
    const PlanarMap& b, const std::vector<VertexId>& cycle_b,
    const std::vector<std::pair<VertexId, VertexId>>& phi);

/// Convenience: phi sends cycle_a[i] to cycle_b[(offset - i) mod k].
PlanarMap glue_on_facial_cycles(const PlanarMap& a,
                                const std::vector<VertexId>& cycle_a,
                                const PlanarMap& b,
                                const std::vector<VertexId>& cycle_b,
                                std::size_t offset = 0);

}  // namespace planarhost::core
