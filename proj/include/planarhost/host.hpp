#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "planarhost/mesh.hpp"
#include "planarhost/planar_map.hpp"

namespace planarhost::host {

using core::FacialWalk;
using core::PlanarMap;
using core::VertexId;

/// Copy of a planar map with every vertex renamed prefix + name.
PlanarMap with_prefix(const PlanarMap& map, const std::string& prefix);

/// The block M(n): an inner and an outer (2n)-(n^2)-mesh, a centre z
/// joined to the whole inner 2n-cycle, and n spokes between the two
/// perimeters at every n-th perimeter vertex. Inner-mesh vertices are
/// prefixed "i.", outer-mesh vertices "o.", the centre is "z".
struct MeshBlock {
  int n = 0;
  PlanarMap map;
  VertexId centre;
  std::vector<std::pair<VertexId, VertexId>> spokes;
  FacialWalk boundary;         // the outer mesh's 2n-cycle, facial
  FacialWalk inner_perimeter;  // i.c2.*, length n^2 (not facial in map)
  FacialWalk outer_perimeter;  // o.c2.*, length n^2 (not facial in map)
  std::vector<FacialWalk> attachment_cycles;  // n facial cycles, 2n+2
};

/// Throws StructuralError if n < 2.
MeshBlock build_block(int n);

/// Finite truncation of the recursive host: level 1 is a 4-cycle;
/// each subsequent level glues a copy of M(k+1) onto every registry
/// cycle of level k. registry[k-1] holds the level-k cycles in
/// creation order; with full materialization its size is k!/1.
struct HostGraph {
  int level = 1;
  PlanarMap map;
  std::vector<std::vector<FacialWalk>> registry;
  std::vector<std::vector<bool>> occupied;  // cycle already carries a block
  int blocks_attached = 0;
};

/// Fully materialized host. Sizes grow factorially; intended for
/// level <= 4 (larger hosts are grown lazily via attach_block).
HostGraph build_host(int level);

/// Glues one copy of M(k+1) onto registry cycle i of level k (both
/// 1-based level, 0-based index). Returns the indices of the block's
/// attachment cycles within registry level k+1. Idempotence is not
/// provided: attaching twice to the same cycle throws.
std::vector<int> attach_block(HostGraph& host, int k, int i);

/// build_host(level+1) semantics on an existing fully-populated host.
HostGraph extend_host(const HostGraph& host);

/// Registry accessor with bounds checking; cycles come back in
/// creation order with their stored (traced) orientations.
const std::vector<FacialWalk>& attachment_cycles(const HostGraph& host, int k);

/// Graph text format preceded by "host <level>" and one line per
/// registry cycle: "cycle <k> <i>: v,v,...".
void write_host(std::ostream& out, const HostGraph& host);
HostGraph parse_host(std::istream& in);

}  // namespace planarhost::host
