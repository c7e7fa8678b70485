#pragma once

#include <iosfwd>
#include <string>

#include "planarhost/embedding.hpp"
#include "planarhost/planar_map.hpp"

namespace planarhost::core {

/// Text graph format:
///   v <id>
///   e <id> <id>
///   r <id>: <id>,<id>,...     (rotation, optional)
///   outer: <face-index>       (optional)
/// Blank lines and lines starting with '#' are ignored.
struct ParsedMap {
  PlanarMap map;
  bool has_rotations = false;
  int outer_face = -1;
};

ParsedMap parse_map(std::istream& in);
ParsedMap parse_map_file(const std::string& path);

void write_map(std::ostream& out, const PlanarMap& map, int outer_face = -1);

/// Embedding format:
///   map <guest-v> <host-address>
///   path <u> <v>: <addr>,<addr>,...
void write_embedding(std::ostream& out, const TopEmbedding& emb);
TopEmbedding parse_embedding(std::istream& in, const Graph& guest);

/// Deterministic Graphviz export (vertices and edges in sorted order).
void write_dot(std::ostream& out, const Graph& g, const std::string& name);

}  // namespace planarhost::core
