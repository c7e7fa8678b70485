#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planarhost/cyclic.hpp"

namespace planarhost::core {

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::pair<VertexId, VertexId> edge_key(VertexId a, VertexId b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

/// Simple undirected graph over opaque string identifiers. No loops,
/// no parallel edges.
class Graph {
 public:
  Graph() = default;

  void add_vertex(const VertexId& v) { vertices_.insert(v); }

  void add_edge(const VertexId& a, const VertexId& b) {
    if (a == b) throw StructuralError("loop edge rejected: " + a);
    if (!has_vertex(a) || !has_vertex(b))
      throw StructuralError("edge endpoint not a vertex: " + a + " " + b);
    edges_.insert(edge_key(a, b));
  }

  bool has_vertex(const VertexId& v) const { return vertices_.count(v) > 0; }
  bool has_edge(const VertexId& a, const VertexId& b) const {
    return edges_.count(edge_key(a, b)) > 0;
  }

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::set<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

  std::vector<VertexId> neighbors(const VertexId& v) const {
    std::vector<VertexId> out;
    for (const auto& [a, b] : edges_) {
      if (a == v) out.push_back(b);
      else if (b == v) out.push_back(a);
    }
    return out;
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Number of connected components.
  std::size_t component_count() const;

  /// Component index per vertex, in iteration order of vertices().
  std::map<VertexId, std::size_t> component_labels() const;

  bool operator==(const Graph& o) const {
    return vertices_ == o.vertices_ && edges_ == o.edges_;
  }

 private:
  std::set<VertexId> vertices_;
  std::set<std::pair<VertexId, VertexId>> edges_;
};

}  // namespace planarhost::core
