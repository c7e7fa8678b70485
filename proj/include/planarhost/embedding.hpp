#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "planarhost/graph.hpp"

namespace planarhost::core {

/// Adjacency test for a (possibly huge, implicitly represented) host
/// graph. An explicit Graph is the trivial oracle.
using AdjacencyOracle =
    std::function<bool(const VertexId&, const VertexId&)>;

inline AdjacencyOracle oracle_of(const Graph& g) {
  return [&g](const VertexId& a, const VertexId& b) { return g.has_edge(a, b); };
}

/// Topological-minor embedding: injective vertex map plus an
/// edge -> host-path map with internally disjoint paths.
struct TopEmbedding {
  Graph guest;
  std::map<VertexId, VertexId> vmap;
  // keyed by edge_key(u, v); path runs from vmap(u) to vmap(v) with
  // u < v in the key order.
  std::map<std::pair<VertexId, VertexId>, std::vector<VertexId>> emap;
};

struct EmbeddingReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the G-embedding conditions: vmap injective and total, every
/// emap path connects the right images through host edges, paths are
/// internally disjoint from each other and from all vmap images.
EmbeddingReport verify_topological_embedding(const TopEmbedding& emb,
                                             const AdjacencyOracle& host_adj);

inline EmbeddingReport verify_topological_embedding(const TopEmbedding& emb,
                                                    const Graph& host) {
  return verify_topological_embedding(emb, oracle_of(host));
}

}  // namespace planarhost::core
