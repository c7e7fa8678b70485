#include "planarhost/textio.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace planarhost::core {

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

ParsedMap parse_map(std::istream& in) {
  ParsedMap result;
  std::string line;
  std::vector<std::pair<VertexId, std::vector<VertexId>>> rotations;
  std::vector<std::pair<VertexId, VertexId>> edges;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      VertexId v;
      if (!(ls >> v)) throw StructuralError("bad v line: " + line);
      result.map.graph().add_vertex(v);
    } else if (tag == "e") {
      VertexId a, b;
      if (!(ls >> a >> b)) throw StructuralError("bad e line: " + line);
      edges.emplace_back(a, b);
    } else if (tag == "r") {
      std::string head;
      if (!(ls >> head) || head.back() != ':')
        throw StructuralError("bad r line: " + line);
      head.pop_back();
      std::string rest;
      std::getline(ls, rest);
      rotations.emplace_back(head, split_commas(rest));
    } else if (tag == "outer:") {
      if (!(ls >> result.outer_face))
        throw StructuralError("bad outer line: " + line);
    } else {
      throw StructuralError("unknown line tag: " + tag);
    }
  }
  for (const auto& [a, b] : edges) result.map.graph().add_edge(a, b);
  for (auto& [v, r] : rotations) result.map.set_rotation(v, std::move(r));
  result.has_rotations = !rotations.empty();
  return result;
}

ParsedMap parse_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  return parse_map(in);
}

void write_map(std::ostream& out, const PlanarMap& map, int outer_face) {
  for (const auto& v : map.graph().vertices()) out << "v " << v << "\n";
  for (const auto& [a, b] : map.graph().edges())
    out << "e " << a << " " << b << "\n";
  for (const auto& v : map.graph().vertices()) {
    if (!map.has_rotation(v)) continue;
    const auto& r = map.rotation(v);
    if (r.empty()) continue;
    out << "r " << v << ":";
    for (std::size_t i = 0; i < r.size(); ++i)
      out << (i ? "," : " ") << r[i];
    out << "\n";
  }
  if (outer_face >= 0) out << "outer: " << outer_face << "\n";
}

void write_embedding(std::ostream& out, const TopEmbedding& emb) {
  for (const auto& [g, h] : emb.vmap) out << "map " << g << " " << h << "\n";
  for (const auto& [e, path] : emb.emap) {
    out << "path " << e.first << " " << e.second << ":";
    for (std::size_t i = 0; i < path.size(); ++i)
      out << (i ? "," : " ") << path[i];
    out << "\n";
  }
}

TopEmbedding parse_embedding(std::istream& in, const Graph& guest) {
  TopEmbedding emb;
  emb.guest = guest;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "map") {
      VertexId g, h;
      if (!(ls >> g >> h)) throw StructuralError("bad map line: " + line);
      emb.vmap[g] = h;
    } else if (tag == "path") {
      VertexId u, v;
      if (!(ls >> u >> v)) throw StructuralError("bad path line: " + line);
      if (v.back() == ':') v.pop_back();
      std::string rest;
      std::getline(ls, rest);
      emb.emap[edge_key(u, v)] = split_commas(rest);
    } else {
      throw StructuralError("unknown line tag: " + tag);
    }
  }
  return emb;
}

void write_dot(std::ostream& out, const Graph& g, const std::string& name) {
  out << "graph " << name << " {\n";
  for (const auto& v : g.vertices()) out << "  \"" << v << "\";\n";
  for (const auto& [a, b] : g.edges())
    out << "  \"" << a << "\" -- \"" << b << "\";\n";
  out << "}\n";
}

}  // namespace planarhost::core
