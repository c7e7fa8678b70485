#include "planarhost/embedding.hpp"

#include <set>
#include <sstream>

namespace planarhost::core {

namespace {

std::string edge_name(const std::pair<VertexId, VertexId>& e) {
  return e.first + "-" + e.second;
}

}  // namespace

EmbeddingReport verify_topological_embedding(const TopEmbedding& emb,
                                             const AdjacencyOracle& host_adj) {
  EmbeddingReport rep;
  auto flag = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

  std::set<VertexId> images;
  for (const auto& v : emb.guest.vertices()) {
    auto it = emb.vmap.find(v);
    if (it == emb.vmap.end()) {
      flag("vmap missing guest vertex " + v);
      continue;
    }
    if (!images.insert(it->second).second)
      flag("vmap not injective at image " + it->second);
  }

  // owner of each internal vertex, for disjointness diagnostics
  std::map<VertexId, std::string> internal_owner;

  for (const auto& [u, v] : emb.guest.edges()) {
    auto key = edge_key(u, v);
    auto it = emb.emap.find(key);
    if (it == emb.emap.end()) {
      flag("emap missing edge " + edge_name(key));
      continue;
    }
    const auto& path = it->second;
    if (path.size() < 2) {
      flag("degenerate path for edge " + edge_name(key));
      continue;
    }
    auto vu = emb.vmap.find(key.first);
    auto vv = emb.vmap.find(key.second);
    if (vu == emb.vmap.end() || vv == emb.vmap.end()) continue;
    if (path.front() != vu->second || path.back() != vv->second)
      flag("endpoint mismatch on edge " + edge_name(key));
    std::set<VertexId> seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!seen.insert(path[i]).second) {
        flag("path for edge " + edge_name(key) + " repeats vertex " + path[i]);
        break;
      }
      if (i + 1 < path.size() && !host_adj(path[i], path[i + 1]))
        flag("path for edge " + edge_name(key) + " uses non-edge " + path[i] +
             "-" + path[i + 1]);
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const VertexId& x = path[i];
      if (images.count(x))
        flag("edge " + edge_name(key) + " passes through vertex image " + x);
      auto [owner, fresh] = internal_owner.emplace(x, edge_name(key));
      if (!fresh)
        flag("edges " + owner->second + " and " + edge_name(key) +
             " share internal vertex " + x);
    }
  }
  return rep;
}

}  // namespace planarhost::core
