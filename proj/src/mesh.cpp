#include "planarhost/mesh.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "planarhost/textio.hpp"

namespace planarhost::mesh {

using core::CyclicSeq;
using core::Graph;
using core::StructuralError;

VertexId Mesh::grid(int r, int a) const {
  a = ((a % rings) + rings) % rings;
  return "g" + std::to_string(r) + "." + std::to_string(a);
}

VertexId Mesh::c1_vertex(int j) const {
  return "c1." + std::to_string(((j % m) + m) % m);
}

VertexId Mesh::c2_vertex(int t) const {
  return "c2." + std::to_string(((t % n) + n) % n);
}

Mesh build_mesh(int m, int n) {
  if (m < 3 || n < 3) throw StructuralError("mesh: m and n must be >= 3");
  Mesh M;
  M.m = m;
  M.n = n;
  M.rings = m * n;
  M.layers = m + n + 2;
  const int N = M.rings;
  const int H = M.layers - 1;  // bottom row index

  Graph g;
  for (int r = 0; r <= H; ++r)
    for (int a = 0; a < N; ++a) g.add_vertex(M.grid(r, a));
  for (int j = 0; j < m; ++j) g.add_vertex(M.c1_vertex(j));
  for (int t = 0; t < n; ++t) g.add_vertex(M.c2_vertex(t));

  for (int r = 0; r <= H; ++r)
    for (int a = 0; a < N; ++a) {
      g.add_edge(M.grid(r, a), M.grid(r, a + 1));
      if (r < H) g.add_edge(M.grid(r, a), M.grid(r + 1, a));
    }
  for (int j = 0; j < m; ++j) {
    g.add_edge(M.c1_vertex(j), M.c1_vertex(j + 1));
    for (int s = 0; s <= n; ++s)
      g.add_edge(M.c1_vertex(j), M.grid(0, j * n + s));
  }
  for (int t = 0; t < n; ++t) {
    g.add_edge(M.c2_vertex(t), M.c2_vertex(t + 1));
    for (int s = 0; s <= m; ++s)
      g.add_edge(M.c2_vertex(t), M.grid(H, t * m + s));
  }

  core::PlanarMap pm(std::move(g));

  // Counterclockwise rotations for the annulus drawing with row 0
  // outermost: at a grid vertex the order is outward, +1, inward, -1.
  for (int j = 0; j < m; ++j) {
    std::vector<VertexId> rot{M.c1_vertex(j + 1)};
    for (int s = n; s >= 0; --s) rot.push_back(M.grid(0, j * n + s));
    rot.push_back(M.c1_vertex(j - 1));
    pm.set_rotation(M.c1_vertex(j), std::move(rot));
  }
  for (int a = 0; a < N; ++a) {
    std::vector<VertexId> rot;
    if (a % n == 0) {
      rot.push_back(M.c1_vertex(a / n - 1));
      rot.push_back(M.c1_vertex(a / n));
    } else {
      rot.push_back(M.c1_vertex(a / n));
    }
    rot.push_back(M.grid(0, a + 1));
    rot.push_back(M.grid(1, a));
    rot.push_back(M.grid(0, a - 1));
    pm.set_rotation(M.grid(0, a), std::move(rot));
  }
  for (int r = 1; r < H; ++r)
    for (int a = 0; a < N; ++a)
      pm.set_rotation(M.grid(r, a), {M.grid(r - 1, a), M.grid(r, a + 1),
                                     M.grid(r + 1, a), M.grid(r, a - 1)});
  for (int a = 0; a < N; ++a) {
    std::vector<VertexId> rot{M.grid(H - 1, a), M.grid(H, a + 1)};
    rot.push_back(M.c2_vertex(a / m));
    if (a % m == 0) rot.push_back(M.c2_vertex(a / m - 1));
    rot.push_back(M.grid(H, a - 1));
    pm.set_rotation(M.grid(H, a), std::move(rot));
  }
  for (int t = 0; t < n; ++t) {
    std::vector<VertexId> rot{M.c2_vertex(t + 1), M.c2_vertex(t - 1)};
    for (int s = 0; s <= m; ++s) rot.push_back(M.grid(H, t * m + s));
    pm.set_rotation(M.c2_vertex(t), std::move(rot));
  }

  pm.validate();
  M.map = std::move(pm);

  auto is_cycle_face = [](const FacialWalk& f, const char* prefix,
                          std::size_t len) {
    if (f.length() != len) return false;
    for (const auto& v : f.walk.items())
      if (v.rfind(prefix, 0) != 0) return false;
    return true;
  };
  bool got1 = false, got2 = false;
  for (const auto& f : trace_faces(M.map)) {
    if (is_cycle_face(f, "c1.", std::size_t(m))) M.c1 = f, got1 = true;
    if (is_cycle_face(f, "c2.", std::size_t(n))) M.c2 = f, got2 = true;
  }
  if (!got1 || !got2)
    throw StructuralError("mesh: designated cycle is not facial");
  // store the cycles in a trace-independent representative
  M.c1 = FacialWalk{CyclicSeq(M.c1.walk.canonical())};
  M.c2 = FacialWalk{CyclicSeq(M.c2.walk.canonical())};
  return M;
}

namespace {

// Unit-capacity max flow (BFS augmentation) over node-split vertices.
struct FlowNet {
  struct Arc {
    int to, cap, rev;
  };
  std::vector<std::vector<Arc>> g;

  explicit FlowNet(int nodes) : g(nodes) {}

  void add(int u, int v, int cap = 1) {
    g[u].push_back({v, cap, int(g[v].size())});
    g[v].push_back({u, 0, int(g[u].size()) - 1});
  }

  bool augment(int s, int t) {
    std::vector<std::pair<int, int>> parent(g.size(), {-1, -1});
    parent[s] = {s, 0};
    std::deque<int> queue{s};
    while (!queue.empty() && parent[t].first < 0) {
      int u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < g[u].size(); ++i) {
        const Arc& a = g[u][i];
        if (a.cap > 0 && parent[a.to].first < 0) {
          parent[a.to] = {u, int(i)};
          queue.push_back(a.to);
        }
      }
    }
    if (parent[t].first < 0) return false;
    for (int v = t; v != s;) {
      auto [u, i] = parent[v];
      g[u][i].cap -= 1;
      g[g[u][i].to][g[u][i].rev].cap += 1;
      v = u;
    }
    return true;
  }
};

struct Terminal {
  VertexId v;
  int pos;  // window start column on its rim
};

// Flow network of a whole mesh, built once per (m,n) and reused: the
// staircase cut and the terminal choice of each routing attempt are
// applied by capacity edits on the fixed arc structure. Node order:
// grid (r*N+a), then the m c1 vertices, then the n c2 vertices. The
// internal split arc of node i is g[2i][0].
struct MeshFlow {
  FlowNet net{0};
  std::vector<std::vector<int>> caps0;        // template capacities
  std::vector<std::pair<int, int>> sink_arc;  // per c2 vertex: (node, idx)
  int VG = 0, S = 0, T = 0;

  explicit MeshFlow(const Mesh& M) {
    const int N = M.rings, H = M.layers - 1;
    VG = M.layers * N;
    const int nodes = VG + M.m + M.n;
    S = 2 * nodes;
    T = S + 1;
    net = FlowNet(T + 1);
    for (int i = 0; i < nodes; ++i) net.add(2 * i, 2 * i + 1);
    auto link = [&](int i, int j) {
      net.add(2 * i + 1, 2 * j);
      net.add(2 * j + 1, 2 * i);
    };
    for (int r = 0; r <= H; ++r)
      for (int a = 0; a < N; ++a) {
        link(r * N + a, r * N + (a + 1) % N);
        if (r < H) link(r * N + a, (r + 1) * N + a);
      }
    for (int j = 0; j < M.m; ++j)
      for (int f = 0; f <= M.n; ++f) link(VG + j, (j * M.n + f) % N);
    for (int t = 0; t < M.n; ++t)
      for (int f = 0; f <= M.m; ++f)
        link(VG + M.m + t, H * N + (t * M.m + f) % N);
    // source arcs, one per c1 vertex, in index order: g[S][j]
    for (int j = 0; j < M.m; ++j) net.add(S, 2 * (VG + j), 0);
    for (int t = 0; t < M.n; ++t) {
      int out = 2 * (VG + M.m + t) + 1;
      sink_arc.emplace_back(out, int(net.g[out].size()));
      net.add(out, T, 0);
    }
    caps0.resize(net.g.size());
    for (std::size_t u = 0; u < net.g.size(); ++u) {
      caps0[u].resize(net.g[u].size());
      for (std::size_t i = 0; i < net.g[u].size(); ++i)
        caps0[u][i] = net.g[u][i].cap;
    }
  }

  void reset() {
    for (std::size_t u = 0; u < net.g.size(); ++u)
      for (std::size_t i = 0; i < net.g[u].size(); ++i)
        net.g[u][i].cap = caps0[u][i];
  }
};

MeshFlow& flow_for(const Mesh& M) {
  thread_local std::map<std::pair<int, int>, MeshFlow> cache;
  auto key = std::make_pair(M.m, M.n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, MeshFlow(M)).first;
  return it->second;
}

// One attempt: delete the staircase cut (column top_col rows 0..mid,
// the short arc of row mid from top_col to bot_col, column bot_col
// rows mid..H) plus all non-terminal cycle vertices, then ask for
// k vertex-disjoint source-target paths by flow. Nodes are indexed
// arithmetically (grid vertex (r,a) -> r*N+a, then the 2k terminals)
// so an attempt never touches the string-keyed graph.
std::optional<std::map<VertexId, VertexId>> try_route(
    const Mesh& M, const std::vector<Terminal>& sources,
    const std::vector<Terminal>& targets, int top_col, int bot_col,
    std::map<VertexId, Path>* out_paths) {
  const int N = M.rings;
  const int H = M.layers - 1;
  const int mid = M.layers / 2;
  const int k = int(sources.size());

  MeshFlow& mf = flow_for(M);
  FlowNet& net = mf.net;
  const int VG = mf.VG;
  mf.reset();
  auto kill = [&](int node) { net.g[2 * node][0].cap = 0; };
  for (int r = 0; r <= mid; ++r) kill(r * N + top_col);
  for (int r = mid; r <= H; ++r) kill(r * N + bot_col);
  int fwd = ((bot_col - top_col) % N + N) % N;  // arc length going +1
  if (fwd <= N - fwd)
    for (int c = 0; c <= fwd; ++c) kill(mid * N + (top_col + c) % N);
  else
    for (int c = 0; c <= N - fwd; ++c)
      kill(mid * N + ((top_col - c) % N + N) % N);

  // non-terminal cycle vertices are off limits entirely
  std::vector<char> is_source(M.m, 0), is_target(M.n, 0);
  for (const auto& s : sources) is_source[s.pos / M.n] = 1;
  for (const auto& t : targets) is_target[t.pos / M.m] = 1;
  for (int j = 0; j < M.m; ++j) {
    if (!is_source[j]) kill(VG + j);
    net.g[mf.S][j].cap = is_source[j] ? 1 : 0;
  }
  for (int t = 0; t < M.n; ++t) {
    if (!is_target[t]) kill(VG + M.m + t);
    auto [node, idx] = mf.sink_arc[t];
    net.g[node][idx].cap = is_target[t] ? 1 : 0;
  }

  int flow = 0;
  while (net.augment(mf.S, mf.T)) ++flow;
  if (flow != k) return std::nullopt;

  auto name_of = [&](int i) -> VertexId {
    if (i < VG) return M.grid(i / N, i % N);
    if (i < VG + M.m) return M.c1_vertex(i - VG);
    return M.c2_vertex(i - VG - M.m);
  };
  // follow net flow: at a node's out-half, the used forward arc is the
  // saturated one whose reverse holds the unit
  auto successor = [&](int i) -> int {
    for (const auto& a : net.g[2 * i + 1])
      if (a.to != mf.T && a.to != mf.S && a.to % 2 == 0 && a.to / 2 != i &&
          a.cap == 0 && net.g[a.to][a.rev].cap == 1)
        return a.to / 2;
    return -1;
  };

  std::map<VertexId, VertexId> realized;
  for (const auto& s : sources) {
    Path path{s.v};
    int cur = VG + s.pos / M.n;
    std::set<int> guard{cur};
    while (cur < VG + M.m) {
      cur = successor(cur);
      if (cur < 0 || !guard.insert(cur).second) return std::nullopt;
      path.push_back(name_of(cur));
    }
    realized[s.v] = name_of(cur);
    (*out_paths)[s.v] = std::move(path);
  }
  return realized;
}

}  // namespace

Linkage route_linkage(const Mesh& M,
                      const std::vector<std::pair<VertexId, VertexId>>& phi) {
  Linkage out;
  out.pairs = phi;
  if (phi.empty()) return out;

  auto side = [&](const VertexId& v) -> int {
    if (M.c1.walk.unique_index(v)) return 1;
    if (M.c2.walk.unique_index(v)) return 2;
    return 0;
  };
  const int from_side = side(phi[0].first);
  if (from_side == 0)
    throw StructuralError("linkage: endpoint not on a designated cycle");
  std::set<VertexId> seen_first, seen_second;
  for (const auto& [w, fw] : phi) {
    if (side(w) != from_side || side(fw) != 3 - from_side)
      throw StructuralError("linkage: pair endpoints on wrong cycles");
    if (!seen_first.insert(w).second || !seen_second.insert(fw).second)
      throw StructuralError("linkage: phi is not injective");
  }
  const CyclicSeq& from_cycle = from_side == 1 ? M.c1.walk : M.c2.walk;
  const CyclicSeq& to_cycle = from_side == 1 ? M.c2.walk : M.c1.walk;
  if (phi.size() > 2 &&
      core::order_relation(phi, from_cycle, to_cycle) !=
          core::OrderRelation::Reversing)
    throw StructuralError("linkage: phi is not order-reversing");

  // Work with sources on c1; flip back at the end if needed.
  std::vector<std::pair<VertexId, VertexId>> work = phi;
  if (from_side == 2)
    for (auto& p : work) std::swap(p.first, p.second);

  auto index_of = [](const VertexId& v) {
    return std::stoi(v.substr(v.find('.') + 1));
  };
  std::vector<Terminal> sources, targets;
  for (const auto& [w, fw] : work) {
    sources.push_back({w, M.c1_window_start(index_of(w))});
    targets.push_back({fw, M.c2_window_start(index_of(fw))});
  }

  const int N = M.rings;
  const int k = int(work.size());
  // Cuts run through shared window-endpoint columns only, so that no
  // surviving fan window straddles the cut: then every terminal lies
  // cleanly on one side and the cut disk forces a unique non-crossing
  // pairing of the boundary pattern.
  const int top_col = sources[0].pos;

  // Predicted forced pairing: sources in column order from the top cut,
  // targets in reverse column order from the bottom cut. Candidate
  // bottom columns whose prediction matches phi are tried first; every
  // shared endpoint is tried before giving up.
  auto sorted_after = [&](std::vector<Terminal> ts, int col) {
    std::sort(ts.begin(), ts.end(), [&](const Terminal& a, const Terminal& b) {
      int ka = ((a.pos - col) % N + N) % N;
      int kb = ((b.pos - col) % N + N) % N;
      return ka != kb ? ka < kb : a.v < b.v;
    });
    return ts;
  };
  auto want = [&]() {
    std::map<VertexId, VertexId> w;
    for (const auto& [a, b] : work) w[a] = b;
    return w;
  }();
  auto predicts = [&](int bot_col) {
    auto u = sorted_after(sources, top_col);
    auto v = sorted_after(targets, bot_col);
    for (int i = 0; i < k; ++i)
      if (want.at(u[i].v) != v[k - 1 - i].v) return false;
    return true;
  };
  std::vector<int> candidates;
  for (int t = 0; t < M.n; ++t)
    if (predicts(t * M.m)) candidates.push_back(t * M.m);
  for (int t = 0; t < M.n; ++t)
    if (!predicts(t * M.m)) candidates.push_back(t * M.m);

  for (int bot_col : candidates) {
    std::map<VertexId, Path> paths;
    auto realized = try_route(M, sources, targets, top_col, bot_col, &paths);
    if (!realized) continue;
    bool match = true;
    for (const auto& [a, b] : work)
      if (realized->at(a) != b) {
        match = false;
        break;
      }
    if (!match) continue;
    for (const auto& [a, b] : phi) {
      Path p = paths.at(from_side == 1 ? a : b);
      if (from_side == 2) std::reverse(p.begin(), p.end());
      out.paths.push_back(std::move(p));
    }
    return out;
  }
  throw StructuralError("linkage: router failed to realize phi");
}

std::vector<std::string> verify_linkage(
    const Mesh& M, const std::vector<std::pair<VertexId, VertexId>>& phi,
    const Linkage& linkage) {
  std::vector<std::string> out;
  if (linkage.pairs != phi) out.push_back("pairs differ from phi");
  if (linkage.paths.size() != linkage.pairs.size()) {
    out.push_back("path count mismatch");
    return out;
  }
  auto on_cycle = [&](const VertexId& v) {
    return M.c1.walk.unique_index(v).has_value() ||
           M.c2.walk.unique_index(v).has_value();
  };
  std::map<VertexId, std::size_t> owner;
  for (std::size_t i = 0; i < linkage.paths.size(); ++i) {
    const Path& p = linkage.paths[i];
    std::string tag = "path " + std::to_string(i);
    if (p.size() < 2) {
      out.push_back(tag + " degenerate");
      continue;
    }
    if (p.front() != linkage.pairs[i].first ||
        p.back() != linkage.pairs[i].second)
      out.push_back(tag + " endpoint mismatch");
    std::set<VertexId> mine;
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (!mine.insert(p[s]).second) out.push_back(tag + " repeats " + p[s]);
      if (s + 1 < p.size() && !M.map.graph().has_edge(p[s], p[s + 1]))
        out.push_back(tag + " non-edge " + p[s] + " " + p[s + 1]);
      if (s > 0 && s + 1 < p.size() && on_cycle(p[s]))
        out.push_back(tag + " touches a designated cycle at " + p[s]);
      auto [it, fresh] = owner.emplace(p[s], i);
      if (!fresh && it->second != i)
        out.push_back(tag + " shares " + p[s] + " with path " +
                      std::to_string(it->second));
    }
  }
  return out;
}

void write_mesh(std::ostream& out, const Mesh& M) {
  out << "mesh " << M.m << " " << M.n << "\n";
  auto line = [&](const char* label, const CyclicSeq& c) {
    out << label;
    const auto& items = c.items();
    for (std::size_t i = 0; i < items.size(); ++i)
      out << (i ? "," : " ") << items[i];
    out << "\n";
  };
  line("c1", M.c1.walk);
  line("c2", M.c2.walk);
  core::write_map(out, M.map);
}

Mesh parse_mesh(std::istream& in) {
  std::string word;
  int m = 0, n = 0;
  if (!(in >> word) || word != "mesh" || !(in >> m >> n))
    throw StructuralError("mesh: bad header");
  auto cycle_line = [&](const std::string& label) {
    std::string lab, rest;
    in >> lab;
    if (lab != label) throw StructuralError("mesh: expected " + label);
    in >> rest;
    std::vector<VertexId> items;
    std::stringstream ss(rest);
    for (std::string item; std::getline(ss, item, ',');)
      items.push_back(item);
    return CyclicSeq(std::move(items));
  };
  CyclicSeq c1 = cycle_line("c1");
  CyclicSeq c2 = cycle_line("c2");
  Mesh M = build_mesh(m, n);
  if (M.c1.walk != c1 || M.c2.walk != c2)
    throw StructuralError("mesh: cycle lines disagree with construction");
  core::ParsedMap parsed = core::parse_map(in);
  if (!(parsed.map.graph() == M.map.graph()))
    throw StructuralError("mesh: serialized graph disagrees");
  return M;
}

}  // namespace planarhost::mesh
