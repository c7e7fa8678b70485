#include <algorithm>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "planarhost/embedder.hpp"
#include "planarhost/host.hpp"
#include "planarhost/mesh.hpp"
#include "planarhost/textio.hpp"
#include "planarhost/wedge.hpp"

using namespace planarhost;
using core::Graph;
using core::PlanarMap;
using core::StructuralError;
using core::VertexId;

namespace {

std::string g_outdir;

std::string resolve(const std::string& path) {
  if (g_outdir.empty() || path.empty() || path[0] == '/') return path;
  return g_outdir + "/" + path;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(resolve(path));
  if (!out) throw StructuralError("cannot write " + resolve(path));
  return out;
}

// DOT export of a block, classing the structurally distinct vertices.
void write_block_dot(std::ostream& out, const host::MeshBlock& B) {
  std::set<VertexId> spoke_feet;
  for (const auto& [a, b] : B.spokes) {
    spoke_feet.insert(a);
    spoke_feet.insert(b);
  }
  const Graph& g = B.map.graph();
  out << "graph block" << B.n << " {\n";
  for (const auto& v : g.vertices()) {
    out << "  \"" << v << "\"";
    if (v == B.centre)
      out << " [class=\"centre\",color=red]";
    else if (spoke_feet.count(v))
      out << " [class=\"spoke\",color=blue]";
    else if (v.rfind("i.c2.", 0) == 0 || v.rfind("o.c2.", 0) == 0)
      out << " [class=\"perimeter\",color=green]";
    else if (v.rfind("o.c1.", 0) == 0)
      out << " [class=\"boundary\",color=orange]";
    out << ";\n";
  }
  for (const auto& [a, b] : g.edges())
    out << "  \"" << a << "\" -- \"" << b << "\";\n";
  out << "}\n";
}

// DOT of an embedding: the union of all host paths, one color per guest
// edge, guest images labelled.
void write_embedding_dot(std::ostream& out, const core::TopEmbedding& emb) {
  static const char* palette[] = {"red",    "blue",   "green",  "orange",
                                  "purple", "brown",  "cyan",   "magenta",
                                  "gold",   "gray"};
  std::map<VertexId, VertexId> image_of;
  for (const auto& [gv, hv] : emb.vmap) image_of[hv] = gv;
  out << "graph embedding {\n";
  std::set<VertexId> nodes;
  for (const auto& [e, path] : emb.emap)
    nodes.insert(path.begin(), path.end());
  for (const auto& [gv, hv] : emb.vmap) nodes.insert(hv);
  for (const auto& v : nodes) {
    out << "  \"" << v << "\"";
    auto it = image_of.find(v);
    if (it != image_of.end())
      out << " [label=\"" << it->second << "\",shape=doublecircle]";
    else
      out << " [shape=point]";
    out << ";\n";
  }
  std::size_t ci = 0;
  for (const auto& [e, path] : emb.emap) {
    const char* color = palette[ci++ % (sizeof palette / sizeof *palette)];
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      out << "  \"" << path[i] << "\" -- \"" << path[i + 1] << "\" [color="
          << color << "];\n";
  }
  out << "}\n";
}

// Exhaustive rotation search; oracle-grade and exponential, only meant
// for tiny guests without a supplied rotation system.
bool brute_force_rotation(PlanarMap& pm, std::size_t limit = 10) {
  const Graph& g = pm.graph();
  if (g.vertex_count() > limit)
    throw StructuralError("rotation search limited to " +
                          std::to_string(limit) + " vertices");
  std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
  std::vector<std::vector<VertexId>> rots(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    rots[i] = g.neighbors(verts[i]);
    std::sort(rots[i].begin(), rots[i].end());
  }
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == verts.size()) return core::euler_validate(pm);
    auto& r = rots[i];
    if (r.size() <= 2) {
      pm.set_rotation(verts[i], r);
      return search(i + 1);
    }
    // first neighbour stays put: rotations are cyclic
    std::sort(r.begin() + 1, r.end());
    do {
      pm.set_rotation(verts[i], r);
      if (search(i + 1)) return true;
    } while (std::next_permutation(r.begin() + 1, r.end()));
    return false;
  };
  return search(0);
}

int cmd_host_build(int level, const std::string& out_path,
                   const std::string& dot_path) {
  host::HostGraph h = host::build_host(level);
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    host::write_host(out, h);
  }
  if (!dot_path.empty()) {
    auto out = open_out(dot_path);
    core::write_dot(out, h.map.graph(), "host" + std::to_string(level));
  }
  std::cout << "host level " << level << ": " << h.map.graph().vertex_count()
            << " vertices, " << h.map.graph().edge_count() << " edges, "
            << h.registry.back().size() << " cycles at the top level\n";
  return 0;
}

int cmd_host_block(int n, const std::string& out_path,
                   const std::string& dot_path) {
  host::MeshBlock B = host::build_block(n);
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    core::write_map(out, B.map);
  }
  if (!dot_path.empty()) {
    auto out = open_out(dot_path);
    write_block_dot(out, B);
  }
  std::cout << "block M(" << n << "): " << B.map.graph().vertex_count()
            << " vertices, boundary " << B.boundary.length() << ", "
            << B.attachment_cycles.size() << " attachment cycles\n";
  return 0;
}

int cmd_mesh(int m, int n, const std::string& out_path,
             const std::string& dot_path) {
  mesh::Mesh M = mesh::build_mesh(m, n);
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    mesh::write_mesh(out, M);
  }
  if (!dot_path.empty()) {
    auto out = open_out(dot_path);
    core::write_dot(out, M.map.graph(),
                    "mesh" + std::to_string(m) + "x" + std::to_string(n));
  }
  std::cout << "mesh " << m << "-" << n << ": "
            << M.map.graph().vertex_count() << " vertices\n";
  return 0;
}

int cmd_wedge(int k, std::vector<int> pi, const std::string& out_path,
              const std::string& host_out) {
  if (pi.empty()) {  // identity by default
    for (int i = 0; i <= k; ++i) pi.push_back(i);
  }
  auto pr = wedge::route_permutation(k, k, pi);
  // serialize the routing as an embedding of a perfect matching
  core::TopEmbedding emb;
  for (int i = 0; i <= k; ++i) {
    VertexId s = "s" + std::to_string(i), t = "t" + std::to_string(i);
    emb.guest.add_vertex(s);
    emb.guest.add_vertex(t);
    emb.guest.add_edge(s, t);
    emb.vmap[s] = wedge::wname({k, i});
    emb.vmap[t] = wedge::wname({pr.n, pi[i]});
    auto key = core::edge_key(s, t);
    emb.emap[key] = key.first == s
                        ? pr.paths[i]
                        : std::vector<VertexId>(pr.paths[i].rbegin(),
                                                pr.paths[i].rend());
  }
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    core::write_embedding(out, emb);
  }
  if (!host_out.empty()) {
    auto out = open_out(host_out);
    core::write_map(out, PlanarMap(pr.aug.to_graph()));
  }
  auto rep = core::verify_topological_embedding(emb, pr.aug.to_graph());
  for (const auto& v : rep.violations) std::cerr << v << "\n";
  std::cout << "wedge permutation of {0.." << k << "} routed through layers "
            << k << ".." << pr.n << "\n";
  return rep.ok() ? 0 : 1;
}

int cmd_embed(const std::string& graph_path, const std::string& rot_path,
              const std::string& out_path, const std::string& dot_path,
              const std::string& host_out, bool find_rotation) {
  auto parsed = core::parse_map_file(graph_path);
  if (!rot_path.empty()) {
    auto rp = core::parse_map_file(rot_path);
    for (const auto& v : rp.map.graph().vertices())
      if (rp.map.has_rotation(v)) parsed.map.set_rotation(v, rp.map.rotation(v));
    parsed.has_rotations = true;
  }
  if (!parsed.has_rotations) {
    if (!find_rotation)
      throw StructuralError(
          "no rotation system given; pass --rotation FILE or --find-rotation");
    if (!brute_force_rotation(parsed.map))
      throw StructuralError("graph has no planar rotation system");
  }
  auto res = embedder::embed(parsed.map);
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    core::write_embedding(out, res.embedding);
  }
  if (!dot_path.empty()) {
    auto out = open_out(dot_path);
    write_embedding_dot(out, res.embedding);
  }
  if (!host_out.empty()) {
    Graph merged;
    for (std::size_t ci = 0; ci < res.components->size(); ++ci) {
      const auto& ce = (*res.components)[ci];
      if (ce.final_level > 12)
        throw StructuralError(
            "host level " + std::to_string(ce.final_level) +
            " too large to materialize; use the in-process verifier");
      auto h = ce.vhost.materialize();
      std::string prefix = "h" + std::to_string(ci) + ":";
      for (const auto& v : h.map.graph().vertices()) merged.add_vertex(prefix + v);
      for (const auto& [a, b] : h.map.graph().edges())
        merged.add_edge(prefix + a, prefix + b);
    }
    auto out = open_out(host_out);
    core::write_map(out, PlanarMap(merged));
  }
  for (std::size_t ci = 0; ci < res.components->size(); ++ci)
    std::cout << "component " << ci << ": embedded at host level "
              << (*res.components)[ci].final_level << "\n";
  return 0;
}

int cmd_verify(const std::string& guest_path, const std::string& host_path,
               const std::string& emb_path) {
  Graph guest = core::parse_map_file(guest_path).map.graph();
  Graph hostg = core::parse_map_file(host_path).map.graph();
  std::ifstream in(emb_path);
  if (!in) throw StructuralError("cannot open " + emb_path);
  auto emb = core::parse_embedding(in, guest);
  auto rep = core::verify_topological_embedding(emb, hostg);
  for (const auto& v : rep.violations) std::cout << v << "\n";
  std::cout << (rep.ok() ? "OK" : "FAILED") << "\n";
  return rep.ok() ? 0 : 1;
}

int cmd_demo() {
  Graph g;
  for (auto v : {"a", "b", "c"}) g.add_vertex(v);
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  g.add_edge("a", "c");
  PlanarMap pm(g);
  pm.set_rotation("a", {"b", "c"});
  pm.set_rotation("b", {"c", "a"});
  pm.set_rotation("c", {"a", "b"});
  auto res = embedder::embed(pm);
  std::cout << "triangle embedded at host level "
            << res.components->front().final_level << "\n";
  for (const auto& [v, addr] : res.embedding.vmap)
    std::cout << "  " << v << " -> " << addr << "\n";
  auto rep = core::verify_topological_embedding(res.embedding, res.oracle());
  std::cout << "verifier: " << (rep.ok() ? "clean" : "violations") << "\n";

  host::HostGraph h = host::build_host(3);
  std::cout << "host level 3: " << h.map.graph().vertex_count()
            << " vertices, " << h.registry[2].size() << " level-3 cycles\n";
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"universal planar host graphs and topological-minor embeddings"};
  app.require_subcommand(1);
  app.set_config("--config");
  app.add_option("--outdir", g_outdir, "directory for relative output paths")
      ->envname("PLANARHOST_OUTDIR");

  auto* host_cmd = app.add_subcommand("host", "host graph operations");
  host_cmd->require_subcommand(1);
  int level = 2, block_n = 2;
  std::string out_path, dot_path;
  auto* hb = host_cmd->add_subcommand("build", "materialize a host level");
  hb->add_option("--level", level, "host level")->required();
  hb->add_option("--out", out_path, "output file (host text format)");
  hb->add_option("--dot", dot_path, "DOT export");
  auto* hk = host_cmd->add_subcommand("block", "build one block M(n)");
  hk->add_option("--n", block_n, "block parameter")->required();
  hk->add_option("--out", out_path, "output file (graph text format)");
  hk->add_option("--dot", dot_path, "DOT export with node classes");

  auto* mesh_cmd = app.add_subcommand("mesh", "mesh operations");
  mesh_cmd->require_subcommand(1);
  int mesh_m = 4, mesh_n = 4;
  auto* mb = mesh_cmd->add_subcommand("build", "build an m-n-mesh");
  mb->add_option("--m", mesh_m)->required();
  mb->add_option("--n", mesh_n)->required();
  mb->add_option("--out", out_path, "output file (mesh text format)");
  mb->add_option("--dot", dot_path, "DOT export");

  auto* wedge_cmd = app.add_subcommand("wedge", "wedge routing");
  wedge_cmd->require_subcommand(1);
  int wk = 3;
  std::vector<int> perm;
  std::string whost_out;
  auto* wp = wedge_cmd->add_subcommand("permute", "route a permutation");
  wp->add_option("--k", wk, "permutation acts on {0..k}")->required();
  wp->add_option("--perm", perm, "comma-separated images of 0..k")
      ->delimiter(',');
  wp->add_option("--out", out_path, "routing as an embedding file");
  wp->add_option("--host-out", whost_out, "augmented strip graph file");

  auto* embed_cmd = app.add_subcommand("embed", "embed a guest graph");
  std::string graph_path, rot_path, ehost_out;
  bool find_rot = false;
  embed_cmd->add_option("--graph", graph_path, "guest graph file")->required();
  embed_cmd->add_option("--rotation", rot_path, "rotation system file");
  embed_cmd->add_option("--out", out_path, "embedding output file");
  embed_cmd->add_option("--dot", dot_path, "embedding overlay DOT");
  embed_cmd->add_option("--host-out", ehost_out,
                        "materialized host graph (small levels only)");
  embed_cmd->add_flag("--find-rotation", find_rot,
                      "brute-force a planar rotation (<= 10 vertices)");

  auto* verify_cmd =
      app.add_subcommand("verify", "re-check a serialized embedding");
  std::string vguest, vhost, vemb;
  verify_cmd->add_option("--guest", vguest, "guest graph file")->required();
  verify_cmd->add_option("--host", vhost, "host graph file")->required();
  verify_cmd->add_option("--emb", vemb, "embedding file")->required();

  auto* demo_cmd = app.add_subcommand("demo", "embed a triangle and report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (hb->parsed()) return cmd_host_build(level, out_path, dot_path);
    if (hk->parsed()) return cmd_host_block(block_n, out_path, dot_path);
    if (mb->parsed()) return cmd_mesh(mesh_m, mesh_n, out_path, dot_path);
    if (wp->parsed()) return cmd_wedge(wk, perm, out_path, whost_out);
    if (embed_cmd->parsed())
      return cmd_embed(graph_path, rot_path, out_path, dot_path, ehost_out,
                       find_rot);
    if (verify_cmd->parsed()) return cmd_verify(vguest, vhost, vemb);
    if (demo_cmd->parsed()) return cmd_demo();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
