#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "planarhost/embedder.hpp"
#include "planarhost/host.hpp"
#include "planarhost/mesh.hpp"
#include "planarhost/textio.hpp"
#include "planarhost/wedge.hpp"

namespace py = pybind11;
using namespace planarhost;
using core::Graph;
using core::PlanarMap;
using core::VertexId;

namespace {

using Edge = std::pair<VertexId, VertexId>;

PlanarMap map_from(const std::vector<VertexId>& vertices,
                   const std::vector<Edge>& edges,
                   const std::map<VertexId, std::vector<VertexId>>& rotations) {
  Graph g;
  for (const auto& v : vertices) g.add_vertex(v);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  PlanarMap pm(g);
  for (const auto& [v, rot] : rotations) pm.set_rotation(v, rot);
  return pm;
}

py::dict embedding_to_dict(const core::TopEmbedding& emb) {
  py::dict vmap, paths;
  for (const auto& [gv, hv] : emb.vmap) vmap[py::str(gv)] = hv;
  for (const auto& [e, p] : emb.emap)
    paths[py::make_tuple(e.first, e.second)] = p;
  py::dict out;
  out["vmap"] = vmap;
  out["paths"] = paths;
  return out;
}

}  // namespace

PYBIND11_MODULE(_planarhost, m) {
  m.doc() =
      "embeddings of planar graphs as topological minors of a universal "
      "recursive host";

  m.def(
      "embed",
      [](const std::vector<VertexId>& vertices, const std::vector<Edge>& edges,
         const std::map<VertexId, std::vector<VertexId>>& rotations) {
        auto res = embedder::embed(map_from(vertices, edges, rotations));
        py::dict out = embedding_to_dict(res.embedding);
        std::vector<int> levels;
        for (const auto& c : *res.components) levels.push_back(c.final_level);
        out["levels"] = levels;
        auto rep =
            core::verify_topological_embedding(res.embedding, res.oracle());
        out["verified"] = rep.ok();
        out["violations"] = rep.violations;
        return out;
      },
      py::arg("vertices"), py::arg("edges"), py::arg("rotations"),
      "Embed a planar guest (given by its rotation system) into the "
      "universal host. Returns vmap, per-edge host paths, per-component "
      "host levels, and the independent verifier's verdict.");

  m.def(
      "host_adjacent",
      [](const std::vector<VertexId>& vertices, const std::vector<Edge>& edges,
         const std::map<VertexId, std::vector<VertexId>>& rotations,
         const VertexId& a, const VertexId& b) {
        auto res = embedder::embed(map_from(vertices, edges, rotations));
        return res.oracle()(a, b);
      },
      py::arg("vertices"), py::arg("edges"), py::arg("rotations"),
      py::arg("a"), py::arg("b"),
      "Adjacency of two host addresses in the (implicit) host built while "
      "embedding the given guest.");

  m.def(
      "verify_embedding",
      [](const std::vector<VertexId>& vertices, const std::vector<Edge>& edges,
         const std::map<VertexId, VertexId>& vmap,
         const std::map<Edge, std::vector<VertexId>>& paths,
         const std::vector<Edge>& host_edges) {
        core::TopEmbedding emb;
        for (const auto& v : vertices) emb.guest.add_vertex(v);
        for (const auto& [a, b] : edges) emb.guest.add_edge(a, b);
        emb.vmap = vmap;
        for (const auto& [e, p] : paths)
          emb.emap[core::edge_key(e.first, e.second)] = p;
        Graph host;
        for (const auto& [a, b] : host_edges) {
          host.add_vertex(a);
          host.add_vertex(b);
          host.add_edge(a, b);
        }
        return core::verify_topological_embedding(emb, host).violations;
      },
      py::arg("vertices"), py::arg("edges"), py::arg("vmap"),
      py::arg("paths"), py::arg("host_edges"),
      "Standalone embedding check against an explicit host edge list; "
      "returns the list of violations (empty means valid).");

  m.def(
      "build_host",
      [](int level) {
        auto h = host::build_host(level);
        py::dict out;
        out["level"] = h.level;
        out["vertices"] = std::vector<VertexId>(h.map.graph().vertices().begin(),
                                                h.map.graph().vertices().end());
        out["edges"] = h.map.graph().edges();
        py::list registry;
        for (const auto& lvl : h.registry) {
          py::list cycles;
          for (const auto& c : lvl) cycles.append(c.walk.items());
          registry.append(cycles);
        }
        out["registry"] = registry;
        return out;
      },
      py::arg("level"),
      "Materialize the host truncated at the given level (factorial "
      "growth; keep level small).");

  m.def(
      "build_mesh",
      [](int m, int n) {
        auto M = mesh::build_mesh(m, n);
        py::dict out;
        out["edges"] = M.map.graph().edges();
        out["c1"] = M.c1.walk.items();
        out["c2"] = M.c2.walk.items();
        return out;
      },
      py::arg("m"), py::arg("n"),
      "Cylinder mesh with well-linked boundary cycles of lengths m and n.");

  m.def(
      "route_linkage",
      [](int m, int n, const std::vector<Edge>& phi) {
        auto M = mesh::build_mesh(m, n);
        auto link = mesh::route_linkage(M, phi);
        auto rep = mesh::verify_linkage(M, phi, link);
        if (!rep.empty()) throw core::StructuralError(rep.front());
        return link.paths;
      },
      py::arg("m"), py::arg("n"), py::arg("phi"),
      "Disjoint paths realizing an order-reversing injection between the "
      "mesh's boundary cycles; verified before returning.");

  m.def(
      "route_permutation",
      [](int k, const std::vector<int>& pi) {
        auto r = wedge::route_permutation(k, k, pi);
        std::vector<std::pair<VertexId, VertexId>> eps;
        for (int i = 0; i <= k; ++i)
          eps.emplace_back(wedge::wname({k, i}), wedge::wname({r.n, pi[i]}));
        auto rep = wedge::verify_routing(r.aug, k, r.n, eps, r.paths);
        if (!rep.empty()) throw core::StructuralError(rep.front());
        return r.paths;
      },
      py::arg("k"), py::arg("pi"),
      "Route a permutation of {0..k} through an augmented wedge strip; "
      "verified before returning.");

  m.def(
      "embedding_text",
      [](const std::vector<VertexId>& vertices, const std::vector<Edge>& edges,
         const std::map<VertexId, std::vector<VertexId>>& rotations) {
        auto res = embedder::embed(map_from(vertices, edges, rotations));
        std::ostringstream out;
        core::write_embedding(out, res.embedding);
        return out.str();
      },
      py::arg("vertices"), py::arg("edges"), py::arg("rotations"),
      "Embed and serialize in the text format used by the CLI.");

  py::register_exception<core::StructuralError>(m, "StructuralError");
}
