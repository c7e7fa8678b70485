#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "planarhost/embedder.hpp"
#include "planarhost/host.hpp"
#include "planarhost/textio.hpp"

using namespace planarhost;
using namespace planarhost::embedder;
using core::Graph;
using core::PlanarMap;
using core::StructuralError;
using core::VertexId;

namespace {

PlanarMap make_map(const std::vector<std::pair<std::string, std::string>>& edges,
                   const std::map<std::string, std::vector<std::string>>& rot) {
  Graph g;
  for (const auto& [a, b] : edges) {
    g.add_vertex(a);
    g.add_vertex(b);
  }
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  PlanarMap pm(g);
  for (const auto& [v, r] : rot) pm.set_rotation(v, r);
  return pm;
}

PlanarMap triangle() {
  return make_map({{"a", "b"}, {"b", "c"}, {"a", "c"}},
                  {{"a", {"b", "c"}}, {"b", {"c", "a"}}, {"c", {"a", "b"}}});
}

PlanarMap k4() {
  return make_map(
      {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}},
      {{"a", {"b", "c", "d"}},
       {"b", {"c", "a", "d"}},
       {"c", {"a", "b", "d"}},
       {"d", {"a", "c", "b"}}});
}

PlanarMap star3() {
  return make_map({{"z", "a"}, {"z", "b"}, {"z", "c"}},
                  {{"z", {"a", "b", "c"}}, {"a", {"z"}}, {"b", {"z"}}, {"c", {"z"}}});
}

// Random tree with random rotations: always a planar rotation system.
PlanarMap random_tree(int n, unsigned seed) {
  std::mt19937 rng(seed);
  Graph g;
  auto nm = [](int i) { return "t" + std::to_string(i); };
  for (int i = 0; i < n; ++i) g.add_vertex(nm(i));
  for (int i = 1; i < n; ++i) g.add_edge(nm(i), nm(int(rng() % i)));
  PlanarMap pm(g);
  for (int i = 0; i < n; ++i) {
    auto nb = g.neighbors(nm(i));
    std::shuffle(nb.begin(), nb.end(), rng);
    pm.set_rotation(nm(i), nb);
  }
  return pm;
}

std::string dump(const core::TopEmbedding& emb) {
  std::ostringstream ss;
  core::write_embedding(ss, emb);
  return ss.str();
}

}  // namespace

TEST_CASE("subdivide: triangle becomes a 6-cycle with alternating classes") {
  auto sg = subdivide(triangle());
  CHECK(sg.h.graph().vertex_count() == 6);
  CHECK(sg.h.graph().edge_count() == 6);
  for (const auto& e : sg.h.graph().edges()) {
    // every edge joins an original to a subdivision vertex
    CHECK(sg.originals.count(e.first) + sg.originals.count(e.second) == 1);
  }
  for (const auto& [s, e] : sg.parent) {
    CHECK(sg.h.graph().has_edge(s, e.first));
    CHECK(sg.h.graph().has_edge(s, e.second));
  }
  CHECK(sg.parent.size() == 3);
}

TEST_CASE("subdivide: K_{1,3} becomes a spider") {
  auto sg = subdivide(star3());
  CHECK(sg.h.graph().vertex_count() == 7);
  CHECK(sg.parent.size() == 3);
  for (const auto& [s, e] : sg.parent) {
    CHECK(sg.h.graph().neighbors(s).size() == 2);
  }
  // originals only have subdivision neighbours
  for (const auto& v : sg.originals)
    for (const auto& w : sg.h.graph().neighbors(v))
      CHECK(sg.originals.count(w) == 0);
}

TEST_CASE("subdivide preserves the face count") {
  for (const auto& pm : {triangle(), k4(), star3()}) {
    auto before = core::trace_faces(pm).size();
    auto sg = subdivide(pm);
    CHECK(core::trace_faces(sg.h).size() == before);
  }
}

TEST_CASE("subdivide rejects bad input") {
  Graph g;
  g.add_vertex("a");
  g.add_vertex("b");
  PlanarMap pm(g);
  pm.set_rotation("a", {});
  pm.set_rotation("b", {});
  CHECK_THROWS_AS(subdivide(pm), StructuralError);  // disconnected
  // K4 with a mirrored vertex rotation is not planar
  auto bad = k4();
  bad.set_rotation("a", {"d", "c", "b"});
  CHECK(!core::euler_validate(bad));
  CHECK_THROWS_AS(subdivide(bad), StructuralError);
}

TEST_CASE("connected_enumeration: BFS order, connected prefixes, deterministic") {
  auto pm = make_map({{"a", "b"}, {"b", "c"}},
                     {{"a", {"b"}}, {"b", {"a", "c"}}, {"c", {"b"}}});
  auto order = connected_enumeration(pm.graph());
  CHECK(order == std::vector<VertexId>{"a", "b", "c"});

  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto t = random_tree(11, seed);
    auto o1 = connected_enumeration(t.graph());
    auto o2 = connected_enumeration(t.graph());
    CHECK(o1 == o2);
    std::set<VertexId> prefix;
    for (const auto& v : o1) {
      prefix.insert(v);
      Graph sub;
      for (const auto& u : prefix) sub.add_vertex(u);
      for (const auto& e : t.graph().edges())
        if (prefix.count(e.first) && prefix.count(e.second))
          sub.add_edge(e.first, e.second);
      CHECK(sub.component_count() == 1);
    }
  }
}

TEST_CASE("make_stage: n=1 is the star around v1") {
  auto sg = subdivide(k4());
  auto order = connected_enumeration(k4().graph());
  auto s1 = make_stage(sg, order, 1);
  CHECK(s1.vn == std::vector<VertexId>{order[0]});
  CHECK(s1.loose_ends.size() == 3);
  CHECK(s1.faces.size() == 1);
  CHECK(s1.loose_by_face[0].size() == 3);
  CHECK(s1.hn_prime.vertex_count() == 1);
}

TEST_CASE("make_stage: loose ends have degree 1 and H_n' drops exactly them") {
  for (unsigned seed = 1; seed <= 15; ++seed) {
    auto t = random_tree(10, seed);
    auto sg = subdivide(t);
    auto order = connected_enumeration(t.graph());
    for (int n = 1; n <= int(order.size()); ++n) {
      auto s = make_stage(sg, order, n);
      std::set<VertexId> loose(s.loose_ends.begin(), s.loose_ends.end());
      for (const auto& l : s.loose_ends)
        CHECK(s.hn.graph().neighbors(l).size() == 1);
      CHECK(s.hn.graph().vertex_count() ==
            s.hn_prime.vertex_count() + loose.size());
      for (const auto& v : s.hn_prime.vertices()) CHECK(loose.count(v) == 0);
      // each loose end sits on exactly one face list
      std::size_t listed = 0;
      for (const auto& lf : s.loose_by_face) listed += lf.size();
      CHECK(listed == loose.size());
    }
  }
}

TEST_CASE("virtual host replays into the explicit host exactly") {
  VirtualHost vh;
  vh.attach({1, 0});
  // occupy every level-2 cycle, then one level-3 cycle
  for (int i = 0; i < 2; ++i) vh.attach({2, i});
  vh.attach({3, 0});
  auto h = vh.materialize();
  CHECK(h.level == 4);
  CHECK(h.blocks_attached == vh.blocks_attached());
  for (int k = 1; k <= h.level; ++k) {
    REQUIRE(vh.registry_size(k) == h.registry[k - 1].size());
    for (int i = 0; i < int(h.registry[k - 1].size()); ++i) {
      CHECK(vh.cycle({k, i}) == h.registry[k - 1][i].walk.items());
      CHECK(vh.occupied({k, i}) == h.occupied[k - 1][i]);
    }
  }
}

TEST_CASE("virtual host adjacency oracle matches the explicit graph") {
  VirtualHost vh;
  vh.attach({1, 0});
  vh.attach({2, 1});
  vh.attach({3, 2});
  auto h = vh.materialize();
  const auto& g = h.map.graph();

  for (const auto& [a, b] : g.edges()) {
    CHECK(vh.adjacent(a, b));
    CHECK(vh.adjacent(b, a));
  }
  // sampled non-edges
  std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
  std::mt19937 rng(7);
  int checked = 0;
  while (checked < 30000) {
    const auto& a = verts[rng() % verts.size()];
    const auto& b = verts[rng() % verts.size()];
    if (a == b || g.has_edge(a, b)) continue;
    CHECK(!vh.adjacent(a, b));
    ++checked;
  }
  // addresses outside the host are never adjacent to anything
  CHECK(!vh.adjacent("b2.0.z", "nonsense"));
  CHECK(!vh.adjacent("b9.9.z", "r.0"));
}

TEST_CASE("arithmetic linkage agrees with the flow router exhaustively") {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{4, 4}, {4, 9}}) {
    auto M = mesh::build_mesh(m, n);
    int kmax = 3;
    long agreements = 0;
    std::vector<int> sidx(kmax), tidx(kmax);
    std::vector<bool> used(n, false);
    std::function<void(int, int, int)> recS = [&](int k, int pos, int start) {
      if (pos == k) {
        std::function<void(int, int)> recT = [&](int kk, int p) {
          if (p == kk) {
            std::vector<std::pair<VertexId, VertexId>> phi;
            for (int i = 0; i < kk; ++i)
              phi.push_back({M.c1_vertex(sidx[i]), M.c2_vertex(tidx[i])});
            bool route_ok = true, arith_ok = true;
            mesh::Linkage la;
            try {
              mesh::route_linkage(M, phi);
            } catch (const StructuralError&) {
              route_ok = false;
            }
            try {
              la = arithmetic_linkage(m, n, phi);
            } catch (const StructuralError&) {
              arith_ok = false;
            }
            CHECK(route_ok == arith_ok);
            if (arith_ok) {
              CHECK(mesh::verify_linkage(M, phi, la).empty());
              ++agreements;
            }
            return;
          }
          for (int t = 0; t < n; ++t)
            if (!used[t]) {
              used[t] = true;
              tidx[p] = t;
              recT(kk, p + 1);
              used[t] = false;
            }
        };
        recT(k, 0);
        return;
      }
      for (int s = start; s < m; ++s) {
        sidx[pos] = s;
        recS(k, pos + 1, s + 1);
      }
    };
    for (int k = 1; k <= kmax; ++k) recS(k, 0, 0);
    CHECK(agreements > 0);
  }
}

TEST_CASE("arithmetic linkage routes from either rim and rejects junk") {
  auto M = mesh::build_mesh(4, 9);
  std::vector<std::pair<VertexId, VertexId>> phi{{"c2.1", "c1.0"},
                                                 {"c2.0", "c1.1"}};
  auto l = arithmetic_linkage(4, 9, phi);
  CHECK(mesh::verify_linkage(M, phi, l).empty());
  CHECK(l.paths[0].front() == "c2.1");
  CHECK(l.paths[0].back() == "c1.0");

  CHECK_THROWS_AS(arithmetic_linkage(4, 9, {{"c1.0", "c1.1"}}), StructuralError);
  CHECK_THROWS_AS(arithmetic_linkage(4, 9, {{"c1.0", "c2.0"}, {"c1.0", "c2.1"}}),
                  StructuralError);
  CHECK_THROWS_AS(arithmetic_linkage(4, 9, {{"c1.9", "c2.0"}}), StructuralError);
}

TEST_CASE("arithmetic linkage scales to meshes that cannot be built") {
  // a (40)-(400)-mesh has 16000 columns and 442 rows
  const int m = 40, n = 400;
  std::vector<std::pair<VertexId, VertexId>> phi;
  for (int i = 0; i < 20; ++i)
    phi.push_back({"c1." + std::to_string(2 * i), "c2." + std::to_string(17 * i)});
  auto l = arithmetic_linkage(m, n, phi);
  REQUIRE(l.paths.size() == 20);
  // endpoint correctness and pairwise disjointness
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    CHECK(l.paths[i].front() == phi[i].first);
    CHECK(l.paths[i].back() == phi[i].second);
    for (const auto& v : l.paths[i]) CHECK(seen.insert(v).second);
  }
}

TEST_CASE("base_embed of a 3-star is good and survives level_up") {
  auto sg = subdivide(star3());
  auto order = connected_enumeration(star3().graph());
  REQUIRE(order[0] == "a");  // BFS starts at the least name
  auto s1 = make_stage(sg, order, 1);
  VirtualHost vh;
  auto g = base_embed(s1, vh);
  CHECK(g.m == 2);  // deg(a) = 1, m0 = max(2, 1)
  CHECK(check_good(g, s1, vh).empty());

  auto g2 = level_up(g, s1, vh);
  CHECK(g2.m == 3);
  CHECK(check_good(g2, s1, vh).empty());
  // monotone agreement: the non-loose images are untouched
  for (const auto& v : s1.hn_prime.vertices())
    CHECK(g.emb.vmap.at(v) == g2.emb.vmap.at(v));
}

TEST_CASE("base_embed centres a high-degree root") {
  // K_{1,5}-ish root forces m0 = 5
  std::vector<std::pair<std::string, std::string>> edges;
  std::map<std::string, std::vector<std::string>> rot;
  std::vector<std::string> leaves;
  for (int i = 0; i < 5; ++i) {
    std::string l = "l" + std::to_string(i);
    edges.push_back({"a", l});
    rot[l] = {"a"};
    leaves.push_back(l);
  }
  rot["a"] = leaves;
  auto pm = make_map(edges, rot);
  auto sg = subdivide(pm);
  auto order = connected_enumeration(pm.graph());
  auto s1 = make_stage(sg, order, 1);
  VirtualHost vh;
  auto g = base_embed(s1, vh);
  CHECK(g.m == 5);
  CHECK(vh.level() == 5);
  CHECK(check_good(g, s1, vh).empty());
}

TEST_CASE("embed: single edge") {
  auto pm = make_map({{"a", "b"}}, {{"a", {"b"}}, {"b", {"a"}}});
  auto res = embed(pm);
  CHECK(res.components->size() == 1);
  CHECK(core::verify_topological_embedding(res.embedding, res.oracle()).ok());
  CHECK(res.embedding.emap.size() == 1);
}

TEST_CASE("embed: triangle exercises the r=2 claim-2 case") {
  auto res = embed(triangle());
  CHECK(res.components->front().final_level == 4);
  CHECK(core::verify_topological_embedding(res.embedding, res.oracle()).ok());
}

TEST_CASE("embed: K4 and the determinism of repeated runs") {
  auto r1 = embed(k4());
  auto r2 = embed(k4());
  CHECK(core::verify_topological_embedding(r1.embedding, r1.oracle()).ok());
  CHECK(dump(r1.embedding) == dump(r2.embedding));
  CHECK(r1.components->front().final_level == r2.components->front().final_level);
}

TEST_CASE("embed: isolated vertex") {
  Graph g;
  g.add_vertex("solo");
  PlanarMap pm(g);
  pm.set_rotation("solo", {});
  auto res = embed(pm);
  CHECK(res.embedding.vmap.at("solo") == "h0:r.0");
  CHECK(res.components->front().final_level == 1);
}

TEST_CASE("embed: two disjoint triangles land in two host copies") {
  Graph g;
  for (auto v : {"a", "b", "c", "x", "y", "z"}) g.add_vertex(v);
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  g.add_edge("a", "c");
  g.add_edge("x", "y");
  g.add_edge("y", "z");
  g.add_edge("x", "z");
  PlanarMap pm(g);
  pm.set_rotation("a", {"b", "c"});
  pm.set_rotation("b", {"c", "a"});
  pm.set_rotation("c", {"a", "b"});
  pm.set_rotation("x", {"y", "z"});
  pm.set_rotation("y", {"z", "x"});
  pm.set_rotation("z", {"x", "y"});
  auto res = embed(pm);
  REQUIRE(res.components->size() == 2);
  CHECK(res.embedding.vmap.at("a").rfind("h0:", 0) == 0);
  CHECK(res.embedding.vmap.at("x").rfind("h1:", 0) == 0);
  CHECK(core::verify_topological_embedding(res.embedding, res.oracle()).ok());
  // the oracle never relates addresses across copies
  auto oracle = res.oracle();
  CHECK(!oracle(res.embedding.vmap.at("a"), res.embedding.vmap.at("x")));
}

TEST_CASE("embed: random trees with random rotations") {
  for (unsigned seed = 1; seed <= 6; ++seed) {
    auto t = random_tree(9, seed);
    auto res = embed(t);
    CHECK(core::verify_topological_embedding(res.embedding, res.oracle()).ok());
  }
}

TEST_CASE("embedding text round-trip") {
  auto res = embed(triangle());
  std::ostringstream ss;
  core::write_embedding(ss, res.embedding);
  std::istringstream in(ss.str());
  auto back = core::parse_embedding(in, res.embedding.guest);
  CHECK(back.vmap == res.embedding.vmap);
  CHECK(back.emap == res.embedding.emap);
}
