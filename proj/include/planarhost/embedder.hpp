#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "planarhost/embedding.hpp"
#include "planarhost/host.hpp"
#include "planarhost/mesh.hpp"
#include "planarhost/planar_map.hpp"

namespace planarhost::embedder {

using core::AdjacencyOracle;
using core::CyclicSeq;
using core::FacialWalk;
using core::Graph;
using core::PlanarMap;
using core::TopEmbedding;
using core::VertexId;

/// Guest with every edge subdivided once. The subdivision vertex of
/// edge {u,v} keeps a record of its parent edge so the final embedding
/// can be fused back onto the original guest.
struct SubdividedGuest {
  PlanarMap h;
  std::set<VertexId> originals;
  std::map<VertexId, std::pair<VertexId, VertexId>> parent;  // sub -> edge

  const VertexId& sub_of(const VertexId& u, const VertexId& v) const;
};

/// Subdivides a connected planar-rotation guest. Throws StructuralError
/// if the guest is disconnected or the rotation system is not planar.
SubdividedGuest subdivide(const PlanarMap& guest);

/// BFS order from the least vertex, neighbours visited in sorted order;
/// every prefix induces a connected subgraph.
std::vector<VertexId> connected_enumeration(const Graph& g);

/// Stage n of the incremental construction: H_n is the subgraph of the
/// subdivided guest induced by the first n guest vertices plus all
/// subdivision vertices adjacent to them. Subdivision vertices with
/// only one embedded endpoint are the loose ends; H_n' is H_n minus
/// the loose ends.
struct Stage {
  int n = 0;
  std::vector<VertexId> vn;  // the first n guest vertices
  PlanarMap hn;              // with rotations restricted from the guest
  Graph hn_prime;
  std::vector<VertexId> loose_ends;             // sorted
  std::vector<FacialWalk> faces;                // traced faces of hn
  std::vector<std::vector<VertexId>> loose_by_face;  // boundary order
};

Stage make_stage(const SubdividedGuest& sg, const std::vector<VertexId>& order,
                 int n);

/// Identifies one registry cycle of the (virtual) host.
struct CycleKey {
  int level = 0;  // 1-based
  int index = 0;
  auto operator<=>(const CycleKey&) const = default;
};

/// Bookkeeping replica of host::HostGraph that never materializes the
/// graph. It records the registry walks, the gluing seams and the block
/// placements; adjacency is answered by address arithmetic on the block
/// coordinates. Attach order mirrors host::attach_block exactly, so a
/// small virtual host can be replayed into an explicit one.
class VirtualHost {
 public:
  VirtualHost();  // level-1 host: the 4-ring

  struct Placement {
    int n = 0;  // block parameter; the block is M(n)
    std::string prefix;
    CycleKey parent;
    std::vector<VertexId> boundary_host;  // host name of local "o.c1.j"
    std::vector<CycleKey> children;       // its n attachment cycles
  };

  int level() const { return level_; }
  int blocks_attached() const { return static_cast<int>(blocks_.size()); }
  std::size_t registry_size(int level) const;
  const std::vector<VertexId>& cycle(CycleKey k) const;  // stored walk
  bool occupied(CycleKey k) const;
  const Placement& placement_on(CycleKey k) const;  // throws if none

  /// Glues M(k.level + 1) onto an unoccupied registry cycle; returns
  /// the placement. Mirrors host::attach_block bookkeeping.
  const Placement& attach(CycleKey k);

  /// Host name of a block-local vertex of a placement ("o.c1.j" resolves
  /// through the gluing seam, everything else is prefixed).
  VertexId host_name(const Placement& p, const VertexId& local) const;

  bool adjacent(const VertexId& a, const VertexId& b) const;
  AdjacencyOracle oracle() const;  // must not outlive the VirtualHost

  /// Replays the attach sequence onto an explicit host graph. Only
  /// sensible for small levels.
  host::HostGraph materialize() const;

 private:
  struct Context {
    int block = -1;  // -1: the level-1 ring
    VertexId local;
  };
  std::vector<Context> contexts_of(const VertexId& v) const;

  int level_ = 1;
  std::vector<std::vector<std::vector<VertexId>>> regs_;  // [level-1][i]
  std::vector<std::vector<bool>> occupied_;
  std::vector<std::vector<int>> block_at_;  // -1 if none
  std::vector<Placement> blocks_;
  std::map<std::string, int> by_prefix_;
  std::map<VertexId, std::vector<std::pair<int, int>>> seam_;  // -> (blk, j)
  std::vector<CycleKey> attach_order_;
};

/// Routes an order-compatible injection between the rims of the
/// (m,n)-mesh purely by column arithmetic, without building the mesh.
/// Equivalent to mesh::route_linkage on the meshes where both apply,
/// but works for meshes far too large to materialize. Throws
/// StructuralError if the pairing is not cyclically monotone or the
/// mesh has too few rows for the greedy shift schedule.
mesh::Linkage arithmetic_linkage(
    int m, int n, const std::vector<std::pair<VertexId, VertexId>>& phi);

/// Embedding of stage n into the level-m host: a topological-minor
/// embedding of H_n plus an injective assignment of the faces of H_n to
/// unoccupied level-m registry cycles such that the loose ends on each
/// face boundary appear on the assigned cycle in the same cyclic order.
struct GoodEmbedding {
  int m = 1;
  TopEmbedding emb;                      // emb.guest == stage hn
  std::map<std::string, CycleKey> face_map;  // FacialWalk::key() -> cycle
};

/// All goodness violations, empty when good.
std::vector<std::string> check_good(const GoodEmbedding& g, const Stage& s,
                                    const VirtualHost& vh);

/// Stage-1 embedding: chains blocks to level m0 = max(2, deg v1), sends
/// v1 to the innermost centre and its loose ends into the first
/// attachment cycle.
GoodEmbedding base_embed(const Stage& s1, VirtualHost& vh);

/// Pushes every face one level deeper: attaches a block on each
/// assigned cycle and extends the loose-end paths into it.
GoodEmbedding level_up(const GoodEmbedding& g, const Stage& s,
                       VirtualHost& vh);

/// Embeds the next guest vertex of the enumeration into the block
/// attached on its face, extending H_n to H_{n+1}. Requires both
/// stages to have at most m loose ends.
GoodEmbedding add_vertex(const GoodEmbedding& g, const Stage& cur,
                         const Stage& next, VirtualHost& vh);

/// One embedded connected component.
struct ComponentEmbedding {
  VirtualHost vhost;
  GoodEmbedding good;    // of the fully grown stage
  Stage final_stage;
  int final_level = 1;
};

struct EmbedResult {
  TopEmbedding embedding;  // of the original guest; addresses carry a
                           // per-component "h<k>:" prefix
  std::shared_ptr<std::vector<ComponentEmbedding>> components;

  AdjacencyOracle oracle() const;  // dispatches on the component prefix
};

/// Full pipeline: subdivide, enumerate, base-embed, then alternate
/// level_up / add_vertex per component; goodness is asserted after
/// every step and the result is re-verified against the oracle.
/// Disconnected guests get one host copy per component.
EmbedResult embed(const PlanarMap& guest);

}  // namespace planarhost::embedder
