#pragma once

#include <map>
#include <string>
#include <vector>

#include "planarhost/graph.hpp"

namespace planarhost::wedge {

using core::Graph;
using core::VertexId;

// The triangular wedge has vertices indexed by (layer k, position i)
// with 0 <= i <= k; edges join (k,i)-(k,i+1), (k,i)-(k+1,i) and
// (k,i)-(k+1,i+1).
struct Coord {
  int k = 0;
  int i = 0;
  bool valid() const { return 0 <= i && i <= k; }
  auto operator<=>(const Coord&) const = default;
};

VertexId wname(Coord c);
bool wedge_adjacent(Coord a, Coord b);

using Path = std::vector<VertexId>;

/// Finite wedge strip: layers m..n of the triangular wedge.
struct WedgeStrip {
  int m = 0;
  int n = 0;
  bool contains(Coord c) const { return c.valid() && m <= c.k && c.k <= n; }
};

/// A bypass: a w_a^0 -- w_b^b path meeting the wedge only at its
/// endpoints; internals are fresh vertices.
struct Bypass {
  int a = 0;
  int b = 0;
  std::vector<VertexId> internal;
  Path realized() const;  // w_a^0, internal..., w_b^b
};

/// Two bypasses cross iff a < a' and b' < b, or a > a' and b' > b.
bool crossing(const Bypass& p, const Bypass& q);

struct AugmentedStrip {
  WedgeStrip strip;
  std::vector<Bypass> bypasses;

  Graph to_graph() const;
  bool adjacent(const VertexId& u, const VertexId& v) const;
  bool has_vertex(const VertexId& v) const;
  std::vector<VertexId> neighbors(const VertexId& v) const;
};

/// t disjoint crossing pairs of bypasses; the strip is grown as needed.
AugmentedStrip make_bypass_family(WedgeStrip strip, int t);

/// Columns w(m,i) -> w(n,i) for 0 <= i <= k. Requires k <= m.
std::vector<Path> route_identity(const WedgeStrip& strip, int k);

/// Cyclic shift i -> i+1 mod (k+1) using the given bypass for the
/// wrap-around path. Requires k <= m and m < a,b < n for the bypass.
std::vector<Path> route_shift(const AugmentedStrip& aug, int k,
                              std::size_t bypass_index);

/// Transposition (0 k), identity elsewhere; the two bypass indices must
/// form a crossing pair (a < a' and b' < b with the first listed being
/// the one of smaller a).
std::vector<Path> route_swap_ends(const AugmentedStrip& aug, int k,
                                  std::size_t low_bypass,
                                  std::size_t high_bypass);

struct PermRouting {
  AugmentedStrip aug;       // strip with all allocated bypasses
  int n = 0;                // final layer
  std::vector<Path> paths;  // paths[i] runs w(m,i) -> w(n,pi[i])
};

/// Routes any permutation pi of {0..k} by decomposing it into cyclic
/// shifts and (0 k) swaps, stacking one stage window per generator.
PermRouting route_permutation(int m, int k, const std::vector<int>& pi);

/// Fixed-point-free involution phi of {0..k} (k odd): returns (k+1)/2
/// disjoint paths joining w(m,i) to w(m,phi(i)), built by routing the
/// pairing into adjacent bottom positions and closing with layer edges.
PermRouting route_involution(int m, int k, const std::vector<int>& phi);

struct MinorWitness {
  std::vector<Path> branch_sets;
  std::map<std::pair<int, int>, std::pair<VertexId, VertexId>> connecting_edges;
};

struct AdjacentFamily {
  AugmentedStrip aug;
  int m = 0;  // start layer
  int n = 0;  // end layer
  std::vector<Path> paths;
  MinorWitness witness;
};

/// p disjoint paths in an augmented wedge, every pair joined by an edge;
/// the witness certifies a K_p minor.
AdjacentFamily pairwise_adjacent_paths(int p);

/// Independent check that the witness certifies a K_p minor of `host`:
/// branch sets connected and pairwise disjoint, one connecting edge per
/// pair with endpoints in the right sets.
bool check_minor_witness(const Graph& host, const MinorWitness& w);
bool check_minor_witness(const AugmentedStrip& host, const MinorWitness& w);

/// Routing verifier: endpoint correctness, adjacency of consecutive
/// vertices, pairwise disjointness, and the boundary rule (layer-m
/// vertices only at path starts, layer-n only at path ends; for paths
/// with both endpoints on layer m the rule applies to both ends).
std::vector<std::string> verify_routing(
    const AugmentedStrip& aug, int m, int n,
    const std::vector<std::pair<VertexId, VertexId>>& endpoints,
    const std::vector<Path>& paths);

// ---- triple wedge ----

VertexId xname(Coord c);
VertexId yname(Coord c);
VertexId zname(Coord c);

/// Three wedge copies X, Y, Z over layers 0..K joined by the edges
/// x_k^k - y_k^0, y_k^k - z_k^0 and z_k^k - x_k^0, plus optional chords.
struct TripleWedge {
  int K = 0;
  std::vector<std::pair<VertexId, VertexId>> chords;

  bool adjacent(const VertexId& u, const VertexId& v) const;
  Graph to_graph() const;
};

/// A vertex is enclosed iff its whole neighbourhood lies in one wedge.
bool enclosed(const TripleWedge& tw, const VertexId& v);

/// Bypass for Z inside the triple wedge: a z_a^0 -- z_b^b path whose
/// internals avoid Z.
struct ZBypass {
  int a = 0;
  int b = 0;
  Path path;  // oriented z_a^0 -> z_b^b
};

struct CrossingPair {
  TripleWedge tw;  // the graph the paths live in (with chords)
  ZBypass first;
  ZBypass second;
};

/// Adds the chord uv to the annulus layers m..n of the triple wedge and
/// produces a crossing pair of disjoint bypasses for Z. u and v must be
/// non-adjacent vertices of X and/or Y with layers in [m+1, n-1], and u
/// must be enclosed.
CrossingPair crossing_from_chord(int m, int n, const VertexId& u,
                                 const VertexId& v);

/// With both diagonals of the quadrilateral C_k = x_k^k, y_k^0,
/// y_{k+1}^0, x_{k+1}^{k+1} present, returns the two ring-plus-diagonal
/// bypasses, which are disjoint and crossing.
CrossingPair crossing_from_diagonals(int k, int K);

/// Checks endpoints, adjacency, Z-avoidance of internals, disjointness
/// and the crossing predicate.
std::vector<std::string> verify_crossing_pair(const CrossingPair& cp);

}  // namespace planarhost::wedge
