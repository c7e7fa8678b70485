#include "planarhost/embedder.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace planarhost::embedder {

using core::edge_key;
using core::euler_validate;
using core::OrderRelation;
using core::order_relation;
using core::StructuralError;
using core::trace_faces;

// The one orientation convention: traced guest faces are consumed in the
// direction that makes goodness plain order preservation against the
// stored registry walks. base_embed anchors the correspondence; flipping
// this constant mirrors every face list (and the dart used to identify
// the new faces around a fresh vertex) coherently.
constexpr bool kMirrorTracedFaces = false;

// ---------------------------------------------------------------------------
// subdivision

const VertexId& SubdividedGuest::sub_of(const VertexId& u,
                                        const VertexId& v) const {
  auto key = edge_key(u, v);
  for (const auto& [s, e] : parent)
    if (e == key) return s;
  throw StructuralError("no subdivision vertex for " + u + " " + v);
}

SubdividedGuest subdivide(const PlanarMap& guest) {
  guest.validate();
  if (guest.graph().vertex_count() == 0)
    throw StructuralError("subdivide: empty guest");
  if (guest.graph().component_count() != 1)
    throw StructuralError("subdivide: guest must be connected");
  if (!euler_validate(guest))
    throw StructuralError("subdivide: rotation system is not planar");

  SubdividedGuest sg;
  Graph& g = sg.h.graph();
  for (const auto& v : guest.graph().vertices()) {
    g.add_vertex(v);
    sg.originals.insert(v);
  }
  std::map<std::pair<VertexId, VertexId>, VertexId> sub;
  for (const auto& e : guest.graph().edges()) {
    VertexId name = "s(" + e.first + "," + e.second + ")";
    while (g.has_vertex(name)) name += "'";
    g.add_vertex(name);
    g.add_edge(e.first, name);
    g.add_edge(name, e.second);
    sg.parent[name] = e;
    sub[e] = name;
  }
  for (const auto& v : guest.graph().vertices()) {
    std::vector<VertexId> rot;
    for (const auto& w : guest.rotation(v)) rot.push_back(sub.at(edge_key(v, w)));
    sg.h.set_rotation(v, std::move(rot));
  }
  for (const auto& [s, e] : sg.parent) sg.h.set_rotation(s, {e.first, e.second});
  sg.h.validate();
  return sg;
}

std::vector<VertexId> connected_enumeration(const Graph& g) {
  if (g.vertex_count() == 0) return {};
  std::vector<VertexId> order;
  std::set<VertexId> seen;
  std::vector<VertexId> queue{*g.vertices().begin()};
  seen.insert(queue[0]);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    order.push_back(queue[head]);
    auto nb = g.neighbors(queue[head]);
    std::sort(nb.begin(), nb.end());
    for (const auto& w : nb)
      if (seen.insert(w).second) queue.push_back(w);
  }
  if (order.size() != g.vertex_count())
    throw StructuralError("enumeration: graph is disconnected");
  return order;
}

Stage make_stage(const SubdividedGuest& sg, const std::vector<VertexId>& order,
                 int n) {
  if (n < 1 || n > int(order.size()))
    throw StructuralError("make_stage: bad stage index");
  Stage s;
  s.n = n;
  s.vn.assign(order.begin(), order.begin() + n);
  std::set<VertexId> vset(s.vn.begin(), s.vn.end());

  std::set<VertexId> verts = vset;
  std::set<VertexId> loose;
  for (const auto& [sub, e] : sg.parent) {
    int inside = int(vset.count(e.first)) + int(vset.count(e.second));
    if (inside > 0) verts.insert(sub);
    if (inside == 1) loose.insert(sub);
  }

  Graph g;
  for (const auto& v : verts) g.add_vertex(v);
  for (const auto& e : sg.h.graph().edges())
    if (verts.count(e.first) && verts.count(e.second)) g.add_edge(e.first, e.second);
  s.hn = PlanarMap(g);
  for (const auto& v : verts) {
    std::vector<VertexId> rot;
    for (const auto& w : sg.h.rotation(v))
      if (verts.count(w)) rot.push_back(w);
    s.hn.set_rotation(v, std::move(rot));
  }

  s.loose_ends.assign(loose.begin(), loose.end());
  for (const auto& v : verts)
    if (!loose.count(v)) s.hn_prime.add_vertex(v);
  for (const auto& e : g.edges())
    if (!loose.count(e.first) && !loose.count(e.second))
      s.hn_prime.add_edge(e.first, e.second);

  s.faces = trace_faces(s.hn);
  std::set<VertexId> placed;
  for (const auto& f : s.faces) {
    std::vector<VertexId> lf;
    for (const auto& v : f.walk.canonical())
      if (loose.count(v)) lf.push_back(v);
    if (kMirrorTracedFaces) std::reverse(lf.begin(), lf.end());
    for (const auto& v : lf)
      if (!placed.insert(v).second)
        throw StructuralError("make_stage: loose end on two faces: " + v);
    s.loose_by_face.push_back(std::move(lf));
  }
  if (placed.size() != loose.size())
    throw StructuralError("make_stage: loose end on no face");
  return s;
}

// ---------------------------------------------------------------------------
// virtual host

namespace {

std::optional<int> to_int(std::string_view sv) {
  int out = 0;
  if (sv.empty()) return std::nullopt;
  auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out);
  if (ec != std::errc() || p != sv.data() + sv.size()) return std::nullopt;
  return out;
}

// Block-local vertex address: the centre, or a mesh vertex of the inner
// or outer copy.
struct Loc {
  enum Part { Z, Inner, Outer } part = Z;
  enum Kind { C1, C2, Grid } kind = C1;
  int row = 0;
  int idx = 0;
};

std::optional<Loc> parse_local(const std::string& v) {
  Loc loc;
  if (v == "z") {
    loc.part = Loc::Z;
    return loc;
  }
  std::string_view sv(v);
  if (sv.rfind("i.", 0) == 0) loc.part = Loc::Inner;
  else if (sv.rfind("o.", 0) == 0) loc.part = Loc::Outer;
  else return std::nullopt;
  sv.remove_prefix(2);
  if (sv.rfind("c1.", 0) == 0) {
    loc.kind = Loc::C1;
    auto i = to_int(sv.substr(3));
    if (!i) return std::nullopt;
    loc.idx = *i;
    return loc;
  }
  if (sv.rfind("c2.", 0) == 0) {
    loc.kind = Loc::C2;
    auto i = to_int(sv.substr(3));
    if (!i) return std::nullopt;
    loc.idx = *i;
    return loc;
  }
  if (!sv.empty() && sv[0] == 'g') {
    auto dot = sv.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    auto r = to_int(sv.substr(1, dot - 1));
    auto a = to_int(sv.substr(dot + 1));
    if (!r || !a) return std::nullopt;
    loc.kind = Loc::Grid;
    loc.row = *r;
    loc.idx = *a;
    return loc;
  }
  return std::nullopt;
}

inline bool cyc_adjacent(int a, int b, int len) {
  int d = ((a - b) % len + len) % len;
  return d == 1 || d == len - 1;
}

// Adjacency inside one copy of M(n), by coordinate arithmetic. Both
// meshes are (2n)-(n^2)-meshes: N = 2n^3 columns, bottom row 2n+n^2+1.
bool block_local_adjacent(int n, const Loc& a, const Loc& b) {
  const int mm = 2 * n, nn = n * n;
  const int N = mm * nn, bottom = mm + nn + 1;
  if (a.part == Loc::Z || b.part == Loc::Z) {
    const Loc& o = a.part == Loc::Z ? b : a;
    if (a.part == Loc::Z && b.part == Loc::Z) return false;
    return o.part == Loc::Inner && o.kind == Loc::C1 && o.idx >= 0 && o.idx < mm;
  }
  if (a.part != b.part) {
    // spokes join the perimeters: i.c2.(t*n) -- o.c2.((n^2 - t*n) mod n^2)
    const Loc& in = a.part == Loc::Inner ? a : b;
    const Loc& out = a.part == Loc::Inner ? b : a;
    if (in.part != Loc::Inner || out.part != Loc::Outer) return false;
    if (in.kind != Loc::C2 || out.kind != Loc::C2) return false;
    if (in.idx < 0 || in.idx >= nn || in.idx % n != 0) return false;
    return out.idx == (nn - in.idx) % nn;
  }
  auto in_range = [&](const Loc& l) {
    switch (l.kind) {
      case Loc::C1: return l.idx >= 0 && l.idx < mm;
      case Loc::C2: return l.idx >= 0 && l.idx < nn;
      case Loc::Grid: return l.row >= 0 && l.row <= bottom && l.idx >= 0 && l.idx < N;
    }
    return false;
  };
  if (!in_range(a) || !in_range(b)) return false;
  if (a.kind == Loc::C1 && b.kind == Loc::C1) return cyc_adjacent(a.idx, b.idx, mm);
  if (a.kind == Loc::C2 && b.kind == Loc::C2) return cyc_adjacent(a.idx, b.idx, nn);
  if (a.kind == Loc::Grid && b.kind == Loc::Grid) {
    if (a.row == b.row) return cyc_adjacent(a.idx, b.idx, N);
    return std::abs(a.row - b.row) == 1 && a.idx == b.idx;
  }
  // fan edges
  const Loc& cyc = a.kind == Loc::Grid ? b : a;
  const Loc& grid = a.kind == Loc::Grid ? a : b;
  if (grid.kind != Loc::Grid || cyc.kind == Loc::Grid) return false;
  if (cyc.kind == Loc::C1) {
    if (grid.row != 0) return false;
    int d = ((grid.idx - cyc.idx * nn) % N + N) % N;
    return d <= nn;
  }
  if (grid.row != bottom) return false;
  int d = ((grid.idx - cyc.idx * mm) % N + N) % N;
  return d <= mm;
}

}  // namespace

VirtualHost::VirtualHost() {
  regs_.push_back({{"r.0", "r.1", "r.2", "r.3"}});
  occupied_.push_back({false});
  block_at_.push_back({-1});
}

std::size_t VirtualHost::registry_size(int level) const {
  if (level < 1 || level > int(regs_.size())) return 0;
  return regs_[level - 1].size();
}

const std::vector<VertexId>& VirtualHost::cycle(CycleKey k) const {
  if (k.level < 1 || k.level > int(regs_.size()) || k.index < 0 ||
      k.index >= int(regs_[k.level - 1].size()))
    throw StructuralError("virtual host: no such registry cycle");
  return regs_[k.level - 1][k.index];
}

bool VirtualHost::occupied(CycleKey k) const {
  cycle(k);
  return occupied_[k.level - 1][k.index];
}

const VirtualHost::Placement& VirtualHost::placement_on(CycleKey k) const {
  cycle(k);
  int bi = block_at_[k.level - 1][k.index];
  if (bi < 0) throw StructuralError("virtual host: cycle carries no block");
  return blocks_[bi];
}

const VirtualHost::Placement& VirtualHost::attach(CycleKey k) {
  const auto& target = cycle(k);
  if (occupied_[k.level - 1][k.index])
    throw StructuralError("virtual host: cycle already occupied");
  const int n = k.level + 1, nn = n * n;
  if (int(target.size()) != 2 * n)
    throw StructuralError("virtual host: registry cycle has wrong length");

  Placement p;
  p.n = n;
  p.prefix = "b" + std::to_string(n) + "." +
             std::to_string(attach_order_.size()) + ".";
  p.parent = k;
  p.boundary_host = target;

  occupied_[k.level - 1][k.index] = true;
  if (level_ == k.level) {
    ++level_;
    regs_.emplace_back();
    occupied_.emplace_back();
    block_at_.emplace_back();
  }
  for (int t = 0; t < n; ++t) {
    std::vector<VertexId> items;
    for (int s = 0; s <= n; ++s)
      items.push_back(p.prefix + "i.c2." + std::to_string((t * n + s) % nn));
    for (int s = 0; s <= n; ++s)
      items.push_back(p.prefix + "o.c2." +
                      std::to_string((nn - (t + 1) * n + s) % nn));
    p.children.push_back({k.level + 1, int(regs_[k.level].size())});
    regs_[k.level].push_back(CyclicSeq(std::move(items)).canonical());
    occupied_[k.level].push_back(false);
    block_at_[k.level].push_back(-1);
  }
  int bi = int(blocks_.size());
  for (int j = 0; j < int(target.size()); ++j)
    seam_[target[j]].push_back({bi, j});
  block_at_[k.level - 1][k.index] = bi;
  by_prefix_[p.prefix] = bi;
  attach_order_.push_back(k);
  blocks_.push_back(std::move(p));
  return blocks_[bi];
}

VertexId VirtualHost::host_name(const Placement& p, const VertexId& local) const {
  if (local.rfind("o.c1.", 0) == 0) {
    auto j = to_int(std::string_view(local).substr(5));
    if (!j || *j < 0 || *j >= int(p.boundary_host.size()))
      throw StructuralError("virtual host: bad boundary vertex " + local);
    return p.boundary_host[*j];
  }
  return p.prefix + local;
}

std::vector<VirtualHost::Context> VirtualHost::contexts_of(
    const VertexId& v) const {
  std::vector<Context> out;
  if (v.rfind("r.", 0) == 0) {
    out.push_back({-1, v});
  } else if (!v.empty() && v[0] == 'b') {
    auto d1 = v.find('.');
    auto d2 = d1 == std::string::npos ? d1 : v.find('.', d1 + 1);
    if (d2 != std::string::npos) {
      auto it = by_prefix_.find(v.substr(0, d2 + 1));
      if (it != by_prefix_.end()) out.push_back({it->second, v.substr(d2 + 1)});
    }
  }
  auto it = seam_.find(v);
  if (it != seam_.end())
    for (const auto& [bi, j] : it->second)
      out.push_back({bi, "o.c1." + std::to_string(j)});
  return out;
}

bool VirtualHost::adjacent(const VertexId& a, const VertexId& b) const {
  if (a == b) return false;
  auto ca = contexts_of(a), cb = contexts_of(b);
  for (const auto& x : ca)
    for (const auto& y : cb) {
      if (x.block != y.block) continue;
      if (x.block < 0) {
        auto i = to_int(std::string_view(x.local).substr(2));
        auto j = to_int(std::string_view(y.local).substr(2));
        if (i && j && *i >= 0 && *i < 4 && *j >= 0 && *j < 4 &&
            cyc_adjacent(*i, *j, 4))
          return true;
        continue;
      }
      auto la = parse_local(x.local), lb = parse_local(y.local);
      if (la && lb && block_local_adjacent(blocks_[x.block].n, *la, *lb))
        return true;
    }
  return false;
}

AdjacencyOracle VirtualHost::oracle() const {
  return [this](const VertexId& a, const VertexId& b) { return adjacent(a, b); };
}

host::HostGraph VirtualHost::materialize() const {
  host::HostGraph h = host::build_host(1);
  for (const auto& k : attach_order_) host::attach_block(h, k.level, k.index);
  return h;
}

// ---------------------------------------------------------------------------
// arithmetic linkage

mesh::Linkage arithmetic_linkage(
    int m, int n, const std::vector<std::pair<VertexId, VertexId>>& phi) {
  if (m < 3 || n < 3) throw StructuralError("linkage: mesh sides must be >= 3");
  mesh::Linkage out;
  out.pairs = phi;
  const int k = int(phi.size());
  if (k == 0) return out;
  const long long N = 1LL * m * n;
  const int bottom = m + n + 1;

  auto side_index = [&](const VertexId& v, bool& is_c1) -> int {
    if (v.rfind("c1.", 0) == 0) {
      is_c1 = true;
      auto i = to_int(std::string_view(v).substr(3));
      if (i && *i >= 0 && *i < m) return *i;
    } else if (v.rfind("c2.", 0) == 0) {
      is_c1 = false;
      auto i = to_int(std::string_view(v).substr(3));
      if (i && *i >= 0 && *i < n) return *i;
    }
    throw StructuralError("linkage: not a rim vertex: " + v);
  };

  bool from_c2 = false;
  std::vector<int> js(k), ts(k);
  for (int i = 0; i < k; ++i) {
    bool a1 = false, b1 = false;
    int ai = side_index(phi[i].first, a1);
    int bi = side_index(phi[i].second, b1);
    if (a1 == b1) throw StructuralError("linkage: pair on one rim");
    if (i == 0) from_c2 = !a1;
    else if ((!a1) != from_c2)
      throw StructuralError("linkage: mixed pair orientations");
    js[i] = a1 ? ai : bi;
    ts[i] = a1 ? bi : ai;
  }
  {
    std::set<int> sj(js.begin(), js.end()), st(ts.begin(), ts.end());
    if (int(sj.size()) != k || int(st.size()) != k)
      throw StructuralError("linkage: pairing is not injective");
  }

  // entry/exit columns: the middle of each fan window
  std::vector<int> ord(k);
  for (int i = 0; i < k; ++i) ord[i] = i;
  std::sort(ord.begin(), ord.end(), [&](int a, int b) { return js[a] < js[b]; });
  std::vector<long long> e(k), x(k);
  for (int q = 0; q < k; ++q) {
    e[q] = 1LL * js[ord[q]] * n + n / 2;
    x[q] = 1LL * ts[ord[q]] * m + m / 2;
  }
  // lift the exits so they increase with the entries; the pairing is
  // routable iff one winding fits all
  std::vector<long long> xt(k);
  xt[0] = x[0];
  for (int q = 1; q < k; ++q) {
    long long d = ((x[q] - xt[q - 1]) % N + N) % N;
    if (d == 0) throw StructuralError("linkage: coincident exits");
    xt[q] = xt[q - 1] + d;
  }
  if (xt[k - 1] - xt[0] >= N)
    throw StructuralError("linkage: pairing is not cyclically monotone");
  long long dmin = xt[0] - e[0];
  for (int q = 0; q < k; ++q) dmin = std::min(dmin, xt[q] - e[q]);
  long long shift = ((dmin % N) + N) % N - dmin;  // least shift with all >= 0
  for (int q = 0; q < k; ++q) xt[q] += shift;

  auto grid = [&](int r, long long a) {
    return "g" + std::to_string(r) + "." + std::to_string(((a % N) + N) % N);
  };

  std::vector<std::vector<VertexId>> paths(k);
  std::vector<long long> p = e;
  for (int q = 0; q < k; ++q) {
    paths[q].push_back("c1." + std::to_string(js[ord[q]]));
    paths[q].push_back(grid(0, e[q]));
  }
  int row = 1;
  // every path shifts right as far as its exit and its right neighbour
  // allow; one pass per row keeps the runs of a row pairwise disjoint
  while (true) {
    bool done = true;
    for (int q = 0; q < k; ++q) done = done && p[q] == xt[q];
    if (done) break;
    if (row > bottom - 1)
      throw StructuralError("linkage: out of rows");
    std::vector<long long> np(k);
    for (int q = 0; q < k; ++q) {
      long long cap = (q + 1 < k ? p[q + 1] : p[0] + N) - 1;
      np[q] = std::min(xt[q], cap);
    }
    for (int q = 0; q < k; ++q)
      for (long long c = p[q]; c <= np[q]; ++c) paths[q].push_back(grid(row, c));
    p = np;
    ++row;
  }
  for (int q = 0; q < k; ++q) {
    for (int r = row; r <= bottom; ++r) paths[q].push_back(grid(r, xt[q]));
    paths[q].push_back("c2." + std::to_string(ts[ord[q]]));
  }

  out.paths.resize(k);
  for (int q = 0; q < k; ++q) {
    if (from_c2) std::reverse(paths[q].begin(), paths[q].end());
    out.paths[ord[q]] = std::move(paths[q]);
  }
  return out;
}

namespace {

// Arithmetic router first; on failure fall back to the flow router when
// the mesh is small enough to build.
mesh::Linkage robust_linkage(int m, int n,
                             const std::vector<std::pair<VertexId, VertexId>>& phi) {
  try {
    return arithmetic_linkage(m, n, phi);
  } catch (const StructuralError&) {
    if (1LL * m * n * (m + n + 2) > 4'000'000) throw;
    auto M = mesh::build_mesh(m, n);
    return mesh::route_linkage(M, phi);
  }
}

// ---------------------------------------------------------------------------
// good embeddings

// Rotates `lf` so that the positions of the images on `walk` are
// strictly increasing; goodness guarantees such a rotation exists.
std::vector<VertexId> rotate_ascending(
    const std::vector<VertexId>& lf,
    const std::map<VertexId, int>& pos) {
  if (lf.size() <= 1) return lf;
  int k = int(lf.size());
  for (int s = 0; s < k; ++s) {
    bool ok = true;
    for (int i = 0; ok && i + 1 < k; ++i)
      ok = pos.at(lf[(s + i) % k]) < pos.at(lf[(s + i + 1) % k]);
    if (ok) {
      std::vector<VertexId> out;
      for (int i = 0; i < k; ++i) out.push_back(lf[(s + i) % k]);
      return out;
    }
  }
  throw StructuralError("loose ends are not in cycle order");
}

std::map<VertexId, int> walk_positions(const std::vector<VertexId>& walk,
                                       const std::vector<VertexId>& needles,
                                       const std::map<VertexId, VertexId>& vmap) {
  std::map<VertexId, int> pos;
  for (const auto& l : needles) {
    const VertexId& img = vmap.at(l);
    auto it = std::find(walk.begin(), walk.end(), img);
    if (it == walk.end())
      throw StructuralError("image of " + l + " not on its registry cycle");
    pos[l] = int(it - walk.begin());
  }
  return pos;
}

// Extends the host path of the pendant edge at loose end l by hostpath
// (which starts at the current image of l).
void extend_loose_path(TopEmbedding& emb, const VertexId& l,
                       const VertexId& other,
                       const std::vector<VertexId>& hostpath) {
  auto key = edge_key(l, other);
  auto& path = emb.emap.at(key);
  if (hostpath.front() != emb.vmap.at(l))
    throw StructuralError("path extension does not start at the image of " + l);
  if (key.first == l) {
    std::vector<VertexId> np(hostpath.rbegin(), hostpath.rend());
    np.insert(np.end(), path.begin() + 1, path.end());
    path = std::move(np);
  } else {
    path.insert(path.end(), hostpath.begin() + 1, hostpath.end());
  }
  emb.vmap[l] = hostpath.back();
}

// Routes loose ends from the boundary of a fresh block to given o.c2
// indices and extends their pendant paths. `targets` pairs each loose
// end with its outer-perimeter index, in any order.
void route_outward(GoodEmbedding& out, const Stage& s, VirtualHost& vh,
                   const VirtualHost::Placement& P,
                   const std::vector<std::pair<VertexId, int>>& targets) {
  if (targets.empty()) return;
  const int n = P.n, nn = n * n;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (const auto& [l, tau] : targets) {
    auto it = std::find(P.boundary_host.begin(), P.boundary_host.end(),
                        out.emb.vmap.at(l));
    if (it == P.boundary_host.end())
      throw StructuralError("image of " + l + " not on the glued cycle");
    pairs.push_back({"c1." + std::to_string(int(it - P.boundary_host.begin())),
                     "c2." + std::to_string(tau)});
  }
  auto linkage = robust_linkage(2 * n, nn, pairs);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const VertexId& l = targets[i].first;
    std::vector<VertexId> hostpath;
    for (const auto& v : linkage.paths[i])
      hostpath.push_back(vh.host_name(P, "o." + v));
    auto nb = s.hn.graph().neighbors(l);
    if (nb.size() != 1)
      throw StructuralError("route_outward: " + l + " is not a loose end");
    extend_loose_path(out.emb, l, nb[0], hostpath);
  }
}

// level_up treatment of one face: attach a block on its cycle, route the
// loose ends into the interior of the first attachment arc, point the
// face at that cycle.
void advance_face(GoodEmbedding& out, const Stage& s, VirtualHost& vh,
                  CycleKey cyc, const FacialWalk& face,
                  const std::vector<VertexId>& lf) {
  const auto& P = vh.attach(cyc);
  out.face_map[face.key()] = P.children[0];
  if (lf.empty()) return;
  const int n = P.n, nn = n * n;
  if (int(lf.size()) > n - 1)
    throw StructuralError("too many loose ends on a face");
  auto pos = walk_positions(vh.cycle(cyc), lf, out.emb.vmap);
  auto ordered = rotate_ascending(lf, pos);
  std::vector<std::pair<VertexId, int>> targets;
  for (std::size_t i = 0; i < ordered.size(); ++i)
    targets.push_back({ordered[i], int((nn - n + 1 + i) % nn)});
  route_outward(out, s, vh, P, targets);
}

}  // namespace

GoodEmbedding base_embed(const Stage& s1, VirtualHost& vh) {
  if (s1.n != 1) throw StructuralError("base_embed: stage 1 expected");
  GoodEmbedding out;
  out.emb.guest = s1.hn.graph();
  const VertexId& v1 = s1.vn[0];
  const int d = int(s1.loose_ends.size());
  if (d == 0) {  // isolated guest vertex
    out.m = 1;
    out.emb.vmap[v1] = "r.0";
    return out;
  }
  const int m0 = std::max(2, d), nn = m0 * m0;
  CycleKey cur{1, 0};
  const VirtualHost::Placement* P = nullptr;
  for (int lev = 1; lev < m0; ++lev) {
    P = &vh.attach(cur);
    cur = P->children[0];
  }
  out.m = m0;
  out.emb.vmap[v1] = P->prefix + "z";
  if (s1.faces.size() != 1)
    throw StructuralError("base_embed: a star has one face");
  const auto& lf = s1.loose_by_face[0];

  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (int q = 1; q <= d; ++q)
    pairs.push_back({"c1." + std::to_string(q), "c2." + std::to_string(q)});
  auto linkage = robust_linkage(2 * m0, nn, pairs);
  for (int q = 1; q <= d; ++q) {
    const VertexId& l = lf[q - 1];
    std::vector<VertexId> hostpath{P->prefix + "z"};
    for (const auto& v : linkage.paths[q - 1]) hostpath.push_back(P->prefix + "i." + v);
    out.emb.vmap[l] = hostpath.back();
    auto key = edge_key(v1, l);
    out.emb.emap[key] = key.first == v1
                            ? hostpath
                            : std::vector<VertexId>(hostpath.rbegin(), hostpath.rend());
  }
  out.face_map[s1.faces[0].key()] = cur;
  return out;
}

GoodEmbedding level_up(const GoodEmbedding& g, const Stage& s, VirtualHost& vh) {
  GoodEmbedding out = g;
  out.m = g.m + 1;
  out.face_map.clear();
  for (std::size_t fi = 0; fi < s.faces.size(); ++fi) {
    CycleKey cyc = g.face_map.at(s.faces[fi].key());
    advance_face(out, s, vh, cyc, s.faces[fi], s.loose_by_face[fi]);
  }
  return out;
}

GoodEmbedding add_vertex(const GoodEmbedding& g, const Stage& cur,
                         const Stage& next, VirtualHost& vh) {
  if (next.n != cur.n + 1)
    throw StructuralError("add_vertex: stages must be consecutive");
  const VertexId& v = next.vn.back();
  GoodEmbedding out = g;
  out.m = g.m + 1;
  out.face_map.clear();

  // the new vertex's pendant stubs all sit on one face of the current stage
  std::set<VertexId> incident;
  for (const auto& l : cur.loose_ends)
    if (next.hn.graph().has_edge(l, v)) incident.insert(l);
  if (incident.empty())
    throw StructuralError("add_vertex: new vertex not attached to the stage");
  int fi0 = -1;
  for (std::size_t fi = 0; fi < cur.faces.size(); ++fi)
    for (const auto& l : cur.loose_by_face[fi])
      if (incident.count(l)) {
        if (fi0 >= 0 && fi0 != int(fi))
          throw StructuralError("add_vertex: attachment face is not unique");
        fi0 = int(fi);
      }

  for (std::size_t fi = 0; fi < cur.faces.size(); ++fi)
    if (int(fi) != fi0)
      advance_face(out, cur, vh, g.face_map.at(cur.faces[fi].key()),
                   cur.faces[fi], cur.loose_by_face[fi]);

  // the attachment face gets the new block; its loose ends go onto the
  // outer perimeter, feet of consecutive spokes at the stubs of v
  CycleKey cyc0 = g.face_map.at(cur.faces[fi0].key());
  const auto& P = vh.attach(cyc0);
  const int n = P.n, nn = n * n;
  std::vector<VertexId> lf0 = cur.loose_by_face[fi0];
  {
    int start = 0;
    while (!incident.count(lf0[start])) ++start;
    std::rotate(lf0.begin(), lf0.begin() + start, lf0.end());
  }
  const int k = int(lf0.size());
  if (k > g.m) throw StructuralError("add_vertex: capacity exceeded");

  std::vector<std::pair<VertexId, int>> targets;
  std::map<VertexId, int> foot_of;  // incident loose end -> 1-based spoke count
  int feet = 0, nextfree = 0;
  for (const auto& l : lf0) {
    if (incident.count(l)) {
      int tau = feet * n;
      if (nextfree > tau)
        throw StructuralError("add_vertex: attachment arc overflow");
      targets.push_back({l, tau});
      ++feet;
      foot_of[l] = feet;
      nextfree = tau + 1;
    } else {
      if (nextfree >= feet * n)
        throw StructuralError("add_vertex: attachment arc overflow");
      targets.push_back({l, nextfree++});
    }
  }
  route_outward(out, cur, vh, P, targets);

  out.emb.guest = next.hn.graph();
  out.emb.vmap[v] = P.prefix + "z";

  // pull the stubs of v through the spokes onto the inner perimeter
  std::map<VertexId, int> inner_idx;  // members of N -> i.c2 index
  for (const auto& [l, j] : foot_of) {
    int tsp = ((1 - j) % n + n) % n;
    int idx = (tsp * n) % nn;
    inner_idx[l] = idx;
    VertexId ifoot = P.prefix + "i.c2." + std::to_string(idx);
    // extend the pendant path across the spoke
    auto nb = cur.hn.graph().neighbors(l);
    extend_loose_path(out.emb, l, nb[0],
                      {out.emb.vmap.at(l), ifoot});
  }

  // new faces: one per stub of v, found by the dart from the stub's
  // cyclic successor among the incident loose ends into v
  std::vector<VertexId> inc_order;
  for (const auto& l : lf0)
    if (incident.count(l)) inc_order.push_back(l);
  const int r = int(inc_order.size());

  std::set<std::string> gap_keys;
  std::vector<std::pair<VertexId, int>> gap_members;  // with i.c2 index
  for (int j = 1; j <= r; ++j) {
    const VertexId& lnext = inc_order[j % r];
    int gf = -1;
    for (std::size_t fi = 0; fi < next.faces.size(); ++fi) {
      const auto& items = next.faces[fi].walk.items();
      for (std::size_t i = 0; i < items.size(); ++i) {
        const VertexId& a = items[i];
        const VertexId& b = items[(i + 1) % items.size()];
        bool hit = kMirrorTracedFaces ? (a == v && b == lnext)
                                      : (a == lnext && b == v);
        if (hit) gf = int(fi);
      }
      if (gf >= 0) break;
    }
    if (gf < 0) throw StructuralError("add_vertex: new face not found");
    const int cj = (n - j) % n;
    const std::string key = next.faces[gf].key();
    if (!gap_keys.insert(key).second)
      throw StructuralError("add_vertex: new faces are not distinct");
    out.face_map[key] = P.children[cj];

    std::vector<VertexId> members;
    for (const auto& x : next.loose_by_face[gf])
      if (next.hn.graph().has_edge(x, v)) members.push_back(x);
    if (int(members.size()) > n - 1)
      throw StructuralError("add_vertex: inner arc overflow");
    for (std::size_t q = 0; q < members.size(); ++q) {
      int idx = int(((cj + 1) * n - int(members.size()) + int(q)) % nn);
      inner_idx[members[q]] = idx;
      out.emb.vmap[members[q]] = P.prefix + "i.c2." + std::to_string(idx);
    }
    // keep the inner routing order: descending around the perimeter
    std::sort(members.begin(), members.end(),
              [&](const VertexId& a, const VertexId& b) {
                return inner_idx[a] > inner_idx[b];
              });
    for (const auto& x : members) gap_members.push_back({x, inner_idx[x]});
  }

  // one linkage from the centre's neighbours to all inner images,
  // descending around both perimeters in step
  std::vector<VertexId> seq;
  {
    std::size_t gi = 0;
    std::vector<std::vector<std::pair<VertexId, int>>> by_gap(r);
    // gap_members was appended gap by gap, already descending per gap
    for (int j = 1; j <= r; ++j) {
      seq.push_back(inc_order[j - 1]);
      const int cj = (n - j) % n;
      const int lo = cj * n, hi = (cj + 1) * n;
      while (gi < gap_members.size() && gap_members[gi].second > lo &&
             gap_members[gi].second < hi)
        seq.push_back(gap_members[gi++].first);
    }
    if (gi != gap_members.size())
      throw StructuralError("add_vertex: inner images out of order");
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (std::size_t q = 0; q < seq.size(); ++q) {
    int jq = int((2 * n - int(q)) % (2 * n));
    pairs.push_back({"c1." + std::to_string(jq),
                     "c2." + std::to_string(inner_idx.at(seq[q]))});
  }
  auto linkage = robust_linkage(2 * n, nn, pairs);
  for (std::size_t q = 0; q < seq.size(); ++q) {
    std::vector<VertexId> hostpath{P.prefix + "z"};
    for (const auto& w : linkage.paths[q]) hostpath.push_back(P.prefix + "i." + w);
    if (hostpath.back() != out.emb.vmap.at(seq[q]))
      throw StructuralError("add_vertex: inner path misses its image");
    auto key = edge_key(v, seq[q]);
    out.emb.emap[key] = key.first == v
                            ? hostpath
                            : std::vector<VertexId>(hostpath.rbegin(), hostpath.rend());
  }
  return out;
}

std::vector<std::string> check_good(const GoodEmbedding& g, const Stage& s,
                                    const VirtualHost& vh) {
  std::vector<std::string> viols;
  if (!(g.emb.guest == s.hn.graph()))
    viols.push_back("embedding guest differs from the stage graph");
  auto rep = core::verify_topological_embedding(
      g.emb, [&vh](const VertexId& a, const VertexId& b) {
        return vh.adjacent(a, b);
      });
  viols.insert(viols.end(), rep.violations.begin(), rep.violations.end());

  std::set<std::string> face_keys;
  for (const auto& f : s.faces) face_keys.insert(f.key());
  std::set<std::string> mapped;
  for (const auto& [key, cyc] : g.face_map) mapped.insert(key);
  if (face_keys != mapped)
    viols.push_back("face map keys differ from the stage faces");
  std::set<CycleKey> used;
  for (const auto& [key, cyc] : g.face_map) {
    if (!used.insert(cyc).second) viols.push_back("face map is not injective");
    if (cyc.level != g.m)
      viols.push_back("face mapped to a cycle of level " +
                      std::to_string(cyc.level) + ", not " + std::to_string(g.m));
    try {
      if (vh.occupied(cyc)) viols.push_back("face mapped to an occupied cycle");
    } catch (const StructuralError& e) {
      viols.push_back(e.what());
    }
  }

  for (std::size_t fi = 0; fi < s.faces.size(); ++fi) {
    const auto& lf = s.loose_by_face[fi];
    if (int(lf.size()) > g.m) viols.push_back("face exceeds loose-end capacity");
    if (lf.empty()) continue;
    auto it = g.face_map.find(s.faces[fi].key());
    if (it == g.face_map.end()) continue;
    std::vector<VertexId> walk;
    try {
      walk = vh.cycle(it->second);
    } catch (const StructuralError& e) {
      viols.push_back(e.what());
      continue;
    }
    std::vector<std::pair<VertexId, VertexId>> phi;
    bool ok = true;
    for (const auto& l : lf) {
      auto im = g.emb.vmap.find(l);
      if (im == g.emb.vmap.end() ||
          std::find(walk.begin(), walk.end(), im->second) == walk.end()) {
        viols.push_back("loose end " + l + " not mapped onto its cycle");
        ok = false;
        break;
      }
      phi.push_back({l, im->second});
    }
    if (!ok) continue;
    if (order_relation(phi, CyclicSeq(lf), CyclicSeq(walk)) !=
        OrderRelation::Preserving)
      viols.push_back("loose ends out of cyclic order on face " +
                      s.faces[fi].key());
  }
  return viols;
}

// ---------------------------------------------------------------------------
// driver

namespace {

void require_good(const GoodEmbedding& g, const Stage& s, const VirtualHost& vh,
                  const std::string& where) {
  auto viols = check_good(g, s, vh);
  if (!viols.empty()) {
    std::string msg = "goodness lost after " + where + ":";
    for (const auto& v : viols) msg += "\n  " + v;
    throw StructuralError(msg);
  }
}

void require_monotone(const GoodEmbedding& before, const GoodEmbedding& after,
                      const Stage& s, const std::string& where) {
  for (const auto& v : s.hn_prime.vertices())
    if (before.emb.vmap.at(v) != after.emb.vmap.at(v))
      throw StructuralError("image of " + v + " moved during " + where);
  for (const auto& e : s.hn_prime.edges())
    if (before.emb.emap.at(e) != after.emb.emap.at(e))
      throw StructuralError("path of " + e.first + "-" + e.second +
                            " changed during " + where);
}

ComponentEmbedding embed_component(const PlanarMap& comp) {
  ComponentEmbedding ce;
  SubdividedGuest sg = subdivide(comp);
  std::vector<VertexId> order = connected_enumeration(comp.graph());

  Stage stage = make_stage(sg, order, 1);
  GoodEmbedding g = base_embed(stage, ce.vhost);
  require_good(g, stage, ce.vhost, "base_embed");

  for (int t = 2; t <= int(order.size()); ++t) {
    Stage nxt = make_stage(sg, order, t);
    while (int(nxt.loose_ends.size()) > g.m) {
      GoodEmbedding g2 = level_up(g, stage, ce.vhost);
      require_good(g2, stage, ce.vhost, "level_up");
      require_monotone(g, g2, stage, "level_up");
      g = std::move(g2);
    }
    GoodEmbedding g2 = add_vertex(g, stage, nxt, ce.vhost);
    require_good(g2, nxt, ce.vhost, "add_vertex");
    require_monotone(g, g2, stage, "add_vertex");
    g = std::move(g2);
    stage = std::move(nxt);
  }
  ce.good = std::move(g);
  ce.final_stage = std::move(stage);
  ce.final_level = ce.good.m;
  return ce;
}

std::optional<std::pair<int, VertexId>> split_component_address(
    const VertexId& v) {
  if (v.empty() || v[0] != 'h') return std::nullopt;
  auto colon = v.find(':');
  if (colon == std::string::npos) return std::nullopt;
  auto idx = to_int(std::string_view(v).substr(1, colon - 1));
  if (!idx) return std::nullopt;
  return std::make_pair(*idx, v.substr(colon + 1));
}

}  // namespace

AdjacencyOracle EmbedResult::oracle() const {
  auto comps = components;
  return [comps](const VertexId& a, const VertexId& b) {
    auto pa = split_component_address(a);
    auto pb = split_component_address(b);
    if (!pa || !pb || pa->first != pb->first) return false;
    if (pa->first < 0 || pa->first >= int(comps->size())) return false;
    return (*comps)[pa->first].vhost.adjacent(pa->second, pb->second);
  };
}

EmbedResult embed(const PlanarMap& guest) {
  guest.validate();
  if (!euler_validate(guest))
    throw StructuralError("embed: rotation system is not planar");

  auto labels = guest.graph().component_labels();
  std::size_t ncomp = guest.graph().component_count();

  EmbedResult res;
  res.components = std::make_shared<std::vector<ComponentEmbedding>>();
  res.embedding.guest = guest.graph();

  for (std::size_t ci = 0; ci < ncomp; ++ci) {
    Graph g;
    for (const auto& [v, l] : labels)
      if (l == ci) g.add_vertex(v);
    for (const auto& e : guest.graph().edges())
      if (g.has_vertex(e.first)) g.add_edge(e.first, e.second);
    PlanarMap comp(g);
    for (const auto& v : g.vertices()) comp.set_rotation(v, guest.rotation(v));

    ComponentEmbedding ce = embed_component(comp);
    const std::string prefix = "h" + std::to_string(ci) + ":";

    // fuse the subdivision back onto the guest edges
    const SubdividedGuest sgview = subdivide(comp);  // same names: deterministic
    for (const auto& v : g.vertices())
      res.embedding.vmap[v] = prefix + ce.good.emb.vmap.at(v);
    for (const auto& e : g.edges()) {
      const VertexId& s = sgview.sub_of(e.first, e.second);
      auto leg = [&](const VertexId& from, const VertexId& to) {
        auto key = edge_key(from, to);
        std::vector<VertexId> p = ce.good.emb.emap.at(key);
        if (key.first != from) std::reverse(p.begin(), p.end());
        return p;
      };
      std::vector<VertexId> p = leg(e.first, s);
      std::vector<VertexId> q = leg(s, e.second);
      p.insert(p.end(), q.begin() + 1, q.end());
      for (auto& a : p) a = prefix + a;
      res.embedding.emap[e] = std::move(p);
    }
    res.components->push_back(std::move(ce));
  }

  auto rep = core::verify_topological_embedding(res.embedding, res.oracle());
  if (!rep.ok()) {
    std::string msg = "embed: final verification failed:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw StructuralError(msg);
  }
  return res;
}

}  // namespace planarhost::embedder
