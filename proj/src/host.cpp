#include "planarhost/host.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "planarhost/textio.hpp"

namespace planarhost::host {

using core::CyclicSeq;
using core::Graph;
using core::StructuralError;

PlanarMap with_prefix(const PlanarMap& map, const std::string& prefix) {
  Graph g;
  for (const auto& v : map.graph().vertices()) g.add_vertex(prefix + v);
  for (const auto& [u, v] : map.graph().edges())
    g.add_edge(prefix + u, prefix + v);
  PlanarMap out(std::move(g));
  for (const auto& v : map.graph().vertices()) {
    std::vector<VertexId> rot;
    for (const auto& w : map.rotation(v)) rot.push_back(prefix + w);
    out.set_rotation(prefix + v, std::move(rot));
  }
  return out;
}

namespace {

FacialWalk prefixed_walk(const FacialWalk& w, const std::string& prefix) {
  std::vector<VertexId> items;
  for (const auto& v : w.walk.items()) items.push_back(prefix + v);
  return FacialWalk{CyclicSeq(std::move(items))};
}

// Trace-independent representative: same cyclic orientation, rotated to
// the lexicographically least shift. Interface walks are stored this
// way so that consumers can reproduce them without re-tracing.
FacialWalk normalized(const FacialWalk& w) {
  return FacialWalk{CyclicSeq(w.walk.canonical())};
}

bool all_prefixed(const FacialWalk& f, const std::string& prefix) {
  for (const auto& v : f.walk.items())
    if (v.rfind(prefix, 0) != 0) return false;
  return true;
}

}  // namespace

MeshBlock build_block(int n) {
  if (n < 2) throw StructuralError("block: n must be >= 2");
  mesh::Mesh base = mesh::build_mesh(2 * n, n * n);
  const int P = n * n;  // perimeter length

  MeshBlock B;
  B.n = n;
  B.centre = "z";
  B.inner_perimeter = prefixed_walk(base.c2, "i.");
  B.outer_perimeter = prefixed_walk(base.c2, "o.");

  PlanarMap inner = with_prefix(base.map, "i.");
  PlanarMap outer = with_prefix(base.map, "o.");

  Graph g;
  for (const auto& v : inner.graph().vertices()) g.add_vertex(v);
  for (const auto& v : outer.graph().vertices()) g.add_vertex(v);
  g.add_vertex(B.centre);
  for (const auto& [u, v] : inner.graph().edges()) g.add_edge(u, v);
  for (const auto& [u, v] : outer.graph().edges()) g.add_edge(u, v);
  auto iname = [&](int j) { return "i." + base.c1_vertex(j); };
  for (int j = 0; j < 2 * n; ++j) g.add_edge(B.centre, iname(j));
  auto ifoot = [&](int t) { return "i." + base.c2_vertex(t * n); };
  auto ofoot = [&](int t) {
    return "o." + base.c2_vertex(((n - t) % n) * n);
  };
  for (int t = 0; t < n; ++t) {
    g.add_edge(ifoot(t), ofoot(t));
    B.spokes.emplace_back(ifoot(t), ofoot(t));
  }

  PlanarMap pm(std::move(g));
  for (const auto& v : inner.graph().vertices())
    pm.set_rotation(v, inner.rotation(v));
  for (const auto& v : outer.graph().vertices())
    pm.set_rotation(v, outer.rotation(v));

  // z sits in the face bounded by the inner mesh's 2n-cycle; each
  // cycle vertex gains z in the slot between its two cycle neighbours
  // (the first and last entries of the mesh rotation).
  {
    std::vector<VertexId> zrot;
    for (int j = 2 * n - 1; j >= 0; --j) zrot.push_back(iname(j));
    pm.set_rotation(B.centre, std::move(zrot));
    for (int j = 0; j < 2 * n; ++j) {
      auto rot = pm.rotation(iname(j));
      rot.push_back(B.centre);
      pm.set_rotation(iname(j), std::move(rot));
    }
  }
  // spokes live in the gap between the perimeters: the slot between a
  // perimeter vertex's two cycle neighbours, which the mesh rotation
  // lists first and second.
  auto add_spoke = [&](const VertexId& foot, const VertexId& other) {
    auto rot = pm.rotation(foot);
    rot.insert(rot.begin() + 1, other);
    pm.set_rotation(foot, std::move(rot));
  };
  for (const auto& [a, b] : B.spokes) {
    add_spoke(a, b);
    add_spoke(b, a);
  }
  pm.validate();
  B.map = std::move(pm);

  // locate the facial substructures
  std::vector<FacialWalk> att(n);
  std::vector<bool> got(n, false);
  bool got_boundary = false;
  for (const auto& f : trace_faces(B.map)) {
    if (f.length() == std::size_t(2 * n) && all_prefixed(f, "o.c1.")) {
      B.boundary = f;
      got_boundary = true;
    }
    if (f.length() != std::size_t(2 * n + 2)) continue;
    bool has_i = false, has_o = false;
    for (const auto& v : f.walk.items()) {
      has_i = has_i || v.rfind("i.c2.", 0) == 0;
      has_o = has_o || v.rfind("o.c2.", 0) == 0;
    }
    if (!has_i || !has_o) continue;
    for (int t = 0; t < n; ++t)
      if (f.walk.unique_index("i." + base.c2_vertex(t * n + 1))) {
        att[t] = f;
        got[t] = true;
      }
  }
  if (!got_boundary) throw StructuralError("block: boundary not facial");
  for (int t = 0; t < n; ++t)
    if (!got[t])
      throw StructuralError("block: attachment cycle " + std::to_string(t) +
                            " not facial");
  B.boundary = normalized(B.boundary);
  for (auto& f : att) f = normalized(f);
  B.attachment_cycles = std::move(att);
  return B;
}

HostGraph build_host(int level) {
  if (level < 1) throw StructuralError("host: level must be >= 1");
  HostGraph h;
  Graph g;
  std::vector<VertexId> ring;
  for (int i = 0; i < 4; ++i) ring.push_back("r." + std::to_string(i));
  for (const auto& v : ring) g.add_vertex(v);
  for (int i = 0; i < 4; ++i) g.add_edge(ring[i], ring[(i + 1) % 4]);
  PlanarMap pm(std::move(g));
  for (int i = 0; i < 4; ++i)
    pm.set_rotation(ring[i], {ring[(i + 1) % 4], ring[(i + 3) % 4]});
  h.map = std::move(pm);
  h.registry.push_back({normalized(trace_faces(h.map).front())});
  h.occupied.push_back({false});

  for (int k = 1; k < level; ++k) {
    HostGraph next = extend_host(h);
    h = std::move(next);
  }
  return h;
}

std::vector<int> attach_block(HostGraph& host, int k, int i) {
  if (k < 1 || k > int(host.registry.size()) || i < 0 ||
      i >= int(host.registry[k - 1].size()))
    throw StructuralError("host: no such registry cycle");
  if (host.occupied[k - 1][i])
    throw StructuralError("host: cycle already carries a block");

  MeshBlock block = build_block(k + 1);
  std::string prefix =
      "b" + std::to_string(k + 1) + "." + std::to_string(host.blocks_attached) + ".";
  ++host.blocks_attached;

  // the block is inserted into the face bounded by the target cycle;
  // its own orientation must oppose the host's there, so glue the
  // mirror image (all walks below are reversed to match)
  PlanarMap bmap = with_prefix(block.map, prefix).mirrored();
  FacialWalk boundary = normalized(
      FacialWalk{prefixed_walk(block.boundary, prefix).walk.reversed()});
  const FacialWalk& target = host.registry[k - 1][i];

  // canonical identification: boundary vertex 0 onto cycle vertex 0,
  // proceeding order-reversingly
  host.map = glue_on_facial_cycles(bmap, boundary.walk.items(), host.map,
                                   target.walk.items(), 0);
  host.occupied[k - 1][i] = true;

  if (int(host.registry.size()) == k) {
    host.registry.emplace_back();
    host.occupied.emplace_back();
    host.level = k + 1;
  }
  std::vector<int> created;
  for (const auto& att : block.attachment_cycles) {
    created.push_back(int(host.registry[k].size()));
    host.registry[k].push_back(normalized(
        FacialWalk{prefixed_walk(att, prefix).walk.reversed()}));
    host.occupied[k].push_back(false);
  }
  return created;
}

HostGraph extend_host(const HostGraph& host) {
  HostGraph out = host;
  const int k = out.level;
  for (int i = 0; i < int(out.registry[k - 1].size()); ++i)
    attach_block(out, k, i);
  return out;
}

const std::vector<FacialWalk>& attachment_cycles(const HostGraph& host,
                                                 int k) {
  if (k < 1 || k > int(host.registry.size()))
    throw StructuralError("host: no registry level " + std::to_string(k));
  return host.registry[k - 1];
}

void write_host(std::ostream& out, const HostGraph& host) {
  out << "host " << host.level << "\n";
  for (std::size_t k = 0; k < host.registry.size(); ++k)
    for (std::size_t i = 0; i < host.registry[k].size(); ++i) {
      out << "cycle " << (k + 1) << " " << i << ":";
      const auto& items = host.registry[k][i].walk.items();
      for (std::size_t s = 0; s < items.size(); ++s)
        out << (s ? "," : " ") << items[s];
      out << "\n";
    }
  core::write_map(out, host.map);
}

HostGraph parse_host(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("host ", 0) != 0)
    throw StructuralError("host: bad header");
  HostGraph h;
  h.level = std::stoi(line.substr(5));
  std::stringstream body;
  while (std::getline(in, line)) {
    if (line.rfind("cycle ", 0) == 0) {
      std::stringstream ss(line.substr(6));
      int k = 0, i = 0;
      char colon = 0;
      std::string rest;
      ss >> k >> i >> colon >> rest;
      if (k < 1 || colon != ':')
        throw StructuralError("host: bad cycle line");
      std::vector<VertexId> items;
      std::stringstream vs(rest);
      for (std::string item; std::getline(vs, item, ',');)
        items.push_back(item);
      while (int(h.registry.size()) < k) {
        h.registry.emplace_back();
        h.occupied.emplace_back();
      }
      if (i != int(h.registry[k - 1].size()))
        throw StructuralError("host: cycle lines out of order");
      h.registry[k - 1].push_back(FacialWalk{CyclicSeq(std::move(items))});
      h.occupied[k - 1].push_back(false);
    } else {
      body << line << "\n";
    }
  }
  core::ParsedMap parsed = core::parse_map(body);
  if (!parsed.has_rotations)
    throw StructuralError("host: serialized host needs rotations");
  h.map = std::move(parsed.map);
  // blocks below the top level are occupied by construction; keep the
  // prefix counter clear of anything the serialized host may contain
  for (std::size_t k = 0; k + 1 < h.registry.size(); ++k) {
    for (std::size_t i = 0; i < h.occupied[k].size(); ++i)
      h.occupied[k][i] = true;
    h.blocks_attached += int(h.registry[k].size());
  }
  return h;
}

}  // namespace planarhost::host
