#include "planarhost/wedge.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace planarhost::wedge {

using core::StructuralError;

VertexId wname(Coord c) {
  return "w" + std::to_string(c.k) + "." + std::to_string(c.i);
}

namespace {

std::optional<Coord> parse_coord(const VertexId& v, char prefix) {
  if (v.empty() || v[0] != prefix) return std::nullopt;
  auto dot = v.find('.');
  if (dot == std::string::npos) return std::nullopt;
  try {
    Coord c{std::stoi(v.substr(1, dot - 1)), std::stoi(v.substr(dot + 1))};
    if (!c.valid()) return std::nullopt;
    return c;
  } catch (...) {
    return std::nullopt;
  }
}

}  // namespace

bool wedge_adjacent(Coord a, Coord b) {
  if (!a.valid() || !b.valid()) return false;
  if (b < a) std::swap(a, b);
  if (a.k == b.k) return b.i == a.i + 1;
  if (b.k == a.k + 1) return b.i == a.i || b.i == a.i + 1;
  return false;
}

Path Bypass::realized() const {
  Path p{wname({a, 0})};
  p.insert(p.end(), internal.begin(), internal.end());
  p.push_back(wname({b, b}));
  return p;
}

bool crossing(const Bypass& p, const Bypass& q) {
  return (p.a < q.a && q.b < p.b) || (p.a > q.a && q.b > p.b);
}

Graph AugmentedStrip::to_graph() const {
  Graph g;
  for (int k = strip.m; k <= strip.n; ++k)
    for (int i = 0; i <= k; ++i) g.add_vertex(wname({k, i}));
  for (int k = strip.m; k <= strip.n; ++k)
    for (int i = 0; i <= k; ++i) {
      Coord c{k, i};
      for (Coord d : {Coord{k, i + 1}, Coord{k + 1, i}, Coord{k + 1, i + 1}})
        if (strip.contains(d)) g.add_edge(wname(c), wname(d));
    }
  for (const auto& bp : bypasses) {
    for (const auto& v : bp.internal) g.add_vertex(v);
    auto chain = bp.realized();
    for (std::size_t s = 0; s + 1 < chain.size(); ++s)
      g.add_edge(chain[s], chain[s + 1]);
  }
  return g;
}

bool AugmentedStrip::has_vertex(const VertexId& v) const {
  auto c = parse_coord(v, 'w');
  if (c) return strip.contains(*c);
  for (const auto& bp : bypasses)
    for (const auto& iv : bp.internal)
      if (iv == v) return true;
  return false;
}

std::vector<VertexId> AugmentedStrip::neighbors(const VertexId& v) const {
  std::vector<VertexId> out;
  auto c = parse_coord(v, 'w');
  if (c && strip.contains(*c)) {
    for (Coord d : {Coord{c->k, c->i - 1}, Coord{c->k, c->i + 1},
                    Coord{c->k - 1, c->i - 1}, Coord{c->k - 1, c->i},
                    Coord{c->k + 1, c->i}, Coord{c->k + 1, c->i + 1}})
      if (strip.contains(d)) out.push_back(wname(d));
  }
  for (const auto& bp : bypasses) {
    auto chain = bp.realized();
    for (std::size_t s = 0; s < chain.size(); ++s)
      if (chain[s] == v) {
        if (s > 0) out.push_back(chain[s - 1]);
        if (s + 1 < chain.size()) out.push_back(chain[s + 1]);
      }
  }
  return out;
}

bool AugmentedStrip::adjacent(const VertexId& u, const VertexId& v) const {
  auto cu = parse_coord(u, 'w');
  auto cv = parse_coord(v, 'w');
  if (cu && cv)
    return strip.contains(*cu) && strip.contains(*cv) &&
           wedge_adjacent(*cu, *cv);
  for (const auto& bp : bypasses) {
    auto chain = bp.realized();
    for (std::size_t s = 0; s + 1 < chain.size(); ++s)
      if ((chain[s] == u && chain[s + 1] == v) ||
          (chain[s] == v && chain[s + 1] == u))
        return true;
  }
  return false;
}

namespace {

Bypass fresh_bypass(int a, int b, int& counter) {
  Bypass bp{a, b, {}};
  for (int s = 0; s < 3; ++s)
    bp.internal.push_back("p" + std::to_string(counter) + "." +
                          std::to_string(s));
  ++counter;
  return bp;
}

}  // namespace

AugmentedStrip make_bypass_family(WedgeStrip strip, int t) {
  AugmentedStrip aug{strip, {}};
  aug.strip.n = std::max(strip.n, strip.m + 4 * t + 1);
  int counter = 0;
  for (int j = 0; j < t; ++j) {
    int base = strip.m + 1 + 4 * j;
    // pair (a, b), (a', b') with a < a' and b' < b: crossing
    aug.bypasses.push_back(fresh_bypass(base, base + 3, counter));
    aug.bypasses.push_back(fresh_bypass(base + 2, base + 1, counter));
  }
  return aug;
}

std::vector<Path> route_identity(const WedgeStrip& strip, int k) {
  if (k > strip.m) throw StructuralError("route_identity: k > m");
  std::vector<Path> paths;
  for (int i = 0; i <= k; ++i) {
    Path p;
    for (int l = strip.m; l <= strip.n; ++l) p.push_back(wname({l, i}));
    paths.push_back(std::move(p));
  }
  return paths;
}

namespace {

// Wrap-around path from w(m,k) to w(n,0) through the given bypass:
// diagonal row to layer b, along layer b to w(b,b), across the bypass
// to w(a,0), then down column 0.
Path wrap_path(int m, int n, int k, const Bypass& bp) {
  if (bp.a <= m || bp.a >= n || bp.b <= m || bp.b >= n)
    throw StructuralError("route: bypass outside strip window");
  Path p;
  for (int l = m; l <= bp.b; ++l) p.push_back(wname({l, k + l - m}));
  for (int i = k + bp.b - m + 1; i <= bp.b; ++i) p.push_back(wname({bp.b, i}));
  p.insert(p.end(), bp.internal.rbegin(), bp.internal.rend());
  for (int l = bp.a; l <= n; ++l) p.push_back(wname({l, 0}));
  return p;
}

}  // namespace

std::vector<Path> route_shift(const AugmentedStrip& aug, int k,
                              std::size_t bypass_index) {
  const int m = aug.strip.m, n = aug.strip.n;
  if (k > m) throw StructuralError("route_shift: k > m");
  if (k == 0) return route_identity(aug.strip, 0);
  if (bypass_index >= aug.bypasses.size())
    throw StructuralError("route_shift: bypass index out of range");
  std::vector<Path> paths;
  for (int i = 0; i < k; ++i) {
    Path p{wname({m, i})};
    for (int l = m + 1; l <= n; ++l) p.push_back(wname({l, i + 1}));
    paths.push_back(std::move(p));
  }
  paths.push_back(wrap_path(m, n, k, aug.bypasses[bypass_index]));
  return paths;
}

std::vector<Path> route_swap_ends(const AugmentedStrip& aug, int k,
                                  std::size_t low_bypass,
                                  std::size_t high_bypass) {
  const int m = aug.strip.m, n = aug.strip.n;
  if (k > m || k < 1) throw StructuralError("route_swap_ends: bad k");
  const Bypass& lo = aug.bypasses.at(low_bypass);   // (a, b)
  const Bypass& hi = aug.bypasses.at(high_bypass);  // (a', b')
  if (!(lo.a < hi.a && hi.b < lo.b))
    throw StructuralError("route_swap_ends: bypasses do not cross as a<a', b'<b");
  std::vector<Path> paths;
  {
    // w(m,0) -> w(n,k): column 0 to the low bypass, across, back along
    // layer b and down column k.
    Path p;
    for (int l = m; l <= lo.a; ++l) p.push_back(wname({l, 0}));
    p.insert(p.end(), lo.internal.begin(), lo.internal.end());
    for (int i = lo.b; i >= k; --i) p.push_back(wname({lo.b, i}));
    for (int l = lo.b + 1; l <= n; ++l) p.push_back(wname({l, k}));
    paths.push_back(std::move(p));
  }
  for (int i = 1; i < k; ++i) {
    Path p;
    for (int l = m; l <= n; ++l) p.push_back(wname({l, i}));
    paths.push_back(std::move(p));
  }
  paths.push_back(wrap_path(m, n, k, hi));  // w(m,k) -> w(n,0)
  return paths;
}

namespace {

// Stacks shift/swap stage windows on a growing strip; paths[i] starts
// at w(m, i) and ends at w(bottom, position[i]).
class StripRouter {
 public:
  StripRouter(int m, int k) : m_(m), k_(k), bottom_(m) {
    if (k > m) throw StructuralError("router: k > m");
    aug_.strip = {m, m};
    for (int i = 0; i <= k; ++i) {
      paths_.push_back({wname({m, i})});
      position_.push_back(i);
    }
  }

  int bottom() const { return bottom_; }
  const std::vector<int>& position() const { return position_; }
  std::vector<Path>& paths() { return paths_; }
  AugmentedStrip& aug() { return aug_; }

  void apply_pad(int h) {
    for (std::size_t i = 0; i < paths_.size(); ++i)
      for (int l = bottom_ + 1; l <= bottom_ + h; ++l)
        paths_[i].push_back(wname({l, position_[i]}));
    bottom_ += h;
    aug_.strip.n = bottom_;
  }

  void apply_shift() {
    if (k_ == 0) {
      apply_pad(1);
      return;
    }
    const int L = bottom_;
    aug_.bypasses.push_back(fresh_bypass(L + 1, L + 2, counter_));
    const Bypass& bp = aug_.bypasses.back();
    aug_.strip.n = L + 3;
    std::vector<Path> ext(paths_.size());
    for (std::size_t t = 0; t < paths_.size(); ++t) {
      int c = position_[t];
      Path& p = paths_[t];
      if (c < k_) {
        for (int l = L + 1; l <= L + 3; ++l) p.push_back(wname({l, c + 1}));
        position_[t] = c + 1;
      } else {
        Path w = wrap_path(L, L + 3, k_, bp);
        p.insert(p.end(), w.begin() + 1, w.end());
        position_[t] = 0;
      }
    }
    bottom_ = L + 3;
  }

  void apply_swap() {
    if (k_ < 1) throw StructuralError("router: swap needs k >= 1");
    const int L = bottom_;
    aug_.bypasses.push_back(fresh_bypass(L + 1, L + 4, counter_));  // low
    aug_.bypasses.push_back(fresh_bypass(L + 3, L + 2, counter_));  // high
    const Bypass& lo = aug_.bypasses[aug_.bypasses.size() - 2];
    const Bypass& hi = aug_.bypasses.back();
    aug_.strip.n = L + 5;
    for (std::size_t t = 0; t < paths_.size(); ++t) {
      int c = position_[t];
      Path& p = paths_[t];
      if (c == 0) {
        p.push_back(wname({L + 1, 0}));
        p.insert(p.end(), lo.internal.begin(), lo.internal.end());
        for (int i = lo.b; i >= k_; --i) p.push_back(wname({lo.b, i}));
        p.push_back(wname({L + 5, k_}));
        position_[t] = k_;
      } else if (c == k_) {
        Path w = wrap_path(L, L + 5, k_, hi);
        p.insert(p.end(), w.begin() + 1, w.end());
        position_[t] = 0;
      } else {
        for (int l = L + 1; l <= L + 5; ++l) p.push_back(wname({l, c}));
      }
    }
    bottom_ = L + 5;
  }

  // Adjacent transposition (j, j+1) = shift^(j+1) . swap(0,k) . shift^(k-j)
  // realized as stages applied first-to-last.
  void apply_transposition(int j) {
    for (int s = 0; s < k_ - j; ++s) apply_shift();
    apply_swap();
    for (int s = 0; s < j + 1; ++s) apply_shift();
  }

  // Drive the current positions to target[i] (final column of path i).
  void apply_permutation(const std::vector<int>& target) {
    // rho = remaining permutation on columns
    std::vector<int> rho(k_ + 1);
    for (std::size_t i = 0; i < position_.size(); ++i)
      rho[position_[i]] = target[i];
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int j = 0; j < k_; ++j) {
        if (rho[j] > rho[j + 1]) {
          apply_transposition(j);
          std::swap(rho[j], rho[j + 1]);
          dirty = true;
          break;
        }
      }
    }
  }

 private:
  int m_, k_, bottom_;
  int counter_ = 0;
  AugmentedStrip aug_;
  std::vector<Path> paths_;
  std::vector<int> position_;
};

bool is_permutation(const std::vector<int>& pi, int k) {
  if (static_cast<int>(pi.size()) != k + 1) return false;
  std::vector<bool> seen(k + 1, false);
  for (int v : pi) {
    if (v < 0 || v > k || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace

PermRouting route_permutation(int m, int k, const std::vector<int>& pi) {
  if (!is_permutation(pi, k))
    throw StructuralError("route_permutation: not a permutation of 0..k");
  StripRouter r(m, k);
  r.apply_permutation(pi);
  if (r.bottom() == m) r.apply_pad(1);
  return {std::move(r.aug()), r.bottom(), std::move(r.paths())};
}

PermRouting route_involution(int m, int k, const std::vector<int>& phi) {
  if (!is_permutation(phi, k))
    throw StructuralError("route_involution: not a permutation of 0..k");
  for (int i = 0; i <= k; ++i) {
    if (phi[i] == i)
      throw StructuralError("route_involution: fixed point at " +
                            std::to_string(i));
    if (phi[phi[i]] != i)
      throw StructuralError("route_involution: not an involution");
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i <= k; ++i)
    if (i < phi[i]) pairs.emplace_back(i, phi[i]);
  std::vector<int> pi(k + 1);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    pi[pairs[t].first] = 2 * static_cast<int>(t);
    pi[pairs[t].second] = 2 * static_cast<int>(t) + 1;
  }
  StripRouter r(m, k);
  r.apply_permutation(pi);
  if (r.bottom() == m) r.apply_pad(1);
  PermRouting out{std::move(r.aug()), r.bottom(), {}};
  for (const auto& [i, j] : pairs) {
    Path joined = r.paths()[i];
    joined.insert(joined.end(), r.paths()[j].rbegin(), r.paths()[j].rend());
    out.paths.push_back(std::move(joined));
  }
  return out;
}

AdjacentFamily pairwise_adjacent_paths(int p) {
  if (p < 1) throw StructuralError("pairwise_adjacent_paths: p < 1");
  AdjacentFamily fam;
  if (p == 1) {
    fam.m = fam.n = 0;
    fam.aug.strip = {0, 0};
    fam.paths = {{wname({0, 0})}};
    fam.witness.branch_sets = fam.paths;
    return fam;
  }
  const int m0 = p - 1, k = p - 1;
  StripRouter r(m0, k);
  auto record_consecutive = [&](std::map<std::pair<int, int>,
                                         std::pair<VertexId, VertexId>>& acc) {
    std::vector<int> at(k + 1);
    for (int t = 0; t <= k; ++t) at[r.position()[t]] = t;
    for (int c = 0; c < k; ++c) {
      int pa = at[c], pb = at[c + 1];
      auto key = std::minmax(pa, pb);
      if (!acc.count({key.first, key.second})) {
        VertexId u = wname({r.bottom(), c});
        VertexId v = wname({r.bottom(), c + 1});
        acc[{key.first, key.second}] =
            key.first == pa ? std::make_pair(u, v) : std::make_pair(v, u);
      }
    }
  };
  std::map<std::pair<int, int>, std::pair<VertexId, VertexId>> edges;
  record_consecutive(edges);
  for (int pa = 0; pa < p; ++pa) {
    for (int pb = pa + 1; pb < p; ++pb) {
      if (edges.count({pa, pb})) continue;
      // drive the pair to columns 0,1; remaining paths keep relative order
      std::vector<int> target(k + 1, -1);
      target[pa] = 0;
      target[pb] = 1;
      std::vector<int> rest;
      for (int t = 0; t <= k; ++t)
        if (t != pa && t != pb) rest.push_back(t);
      std::sort(rest.begin(), rest.end(), [&](int x, int y) {
        return r.position()[x] < r.position()[y];
      });
      for (std::size_t s = 0; s < rest.size(); ++s)
        target[rest[s]] = 2 + static_cast<int>(s);
      r.apply_permutation(target);
      record_consecutive(edges);
    }
  }
  fam.aug = r.aug();
  fam.m = m0;
  fam.n = r.bottom();
  fam.paths = r.paths();
  fam.witness.branch_sets = fam.paths;
  fam.witness.connecting_edges = std::move(edges);
  return fam;
}

namespace {

template <class HasVertex, class HasEdge, class Neighbors>
bool check_minor_witness_impl(const MinorWitness& w, HasVertex has_vertex,
                              HasEdge has_edge, Neighbors neighbors) {
  const int p = static_cast<int>(w.branch_sets.size());
  std::set<VertexId> all;
  for (const auto& bs : w.branch_sets) {
    if (bs.empty()) return false;
    std::set<VertexId> verts(bs.begin(), bs.end());
    for (const auto& v : verts) {
      if (!has_vertex(v)) return false;
      if (!all.insert(v).second) return false;  // overlap between sets
    }
    // connectivity by BFS inside the set
    std::set<VertexId> seen{*verts.begin()};
    std::deque<VertexId> queue{*verts.begin()};
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      for (const auto& nb : neighbors(u))
        if (verts.count(nb) && seen.insert(nb).second) queue.push_back(nb);
    }
    if (seen.size() != verts.size()) return false;
  }
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      auto it = w.connecting_edges.find({i, j});
      if (it == w.connecting_edges.end()) return false;
      const auto& [u, v] = it->second;
      if (!has_edge(u, v)) return false;
      auto in_set = [&](const Path& bs, const VertexId& x) {
        return std::find(bs.begin(), bs.end(), x) != bs.end();
      };
      if (!in_set(w.branch_sets[i], u) || !in_set(w.branch_sets[j], v))
        return false;
    }
  return true;
}

}  // namespace

bool check_minor_witness(const Graph& host, const MinorWitness& w) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& [u, v] : host.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return check_minor_witness_impl(
      w, [&](const VertexId& v) { return host.has_vertex(v); },
      [&](const VertexId& u, const VertexId& v) { return host.has_edge(u, v); },
      [&](const VertexId& u) -> const std::vector<VertexId>& {
        static const std::vector<VertexId> none;
        auto it = adj.find(u);
        return it == adj.end() ? none : it->second;
      });
}

bool check_minor_witness(const AugmentedStrip& host, const MinorWitness& w) {
  return check_minor_witness_impl(
      w, [&](const VertexId& v) { return host.has_vertex(v); },
      [&](const VertexId& u, const VertexId& v) { return host.adjacent(u, v); },
      [&](const VertexId& u) { return host.neighbors(u); });
}

std::vector<std::string> verify_routing(
    const AugmentedStrip& aug, int m, int n,
    const std::vector<std::pair<VertexId, VertexId>>& endpoints,
    const std::vector<Path>& paths) {
  std::vector<std::string> out;
  if (endpoints.size() != paths.size()) {
    out.push_back("path count mismatch");
    return out;
  }
  std::map<VertexId, std::size_t> owner;
  for (std::size_t t = 0; t < paths.size(); ++t) {
    const Path& p = paths[t];
    std::string tag = "path " + std::to_string(t);
    if (p.empty()) {
      out.push_back(tag + " empty");
      continue;
    }
    if (p.front() != endpoints[t].first || p.back() != endpoints[t].second)
      out.push_back(tag + " endpoint mismatch");
    for (std::size_t s = 0; s + 1 < p.size(); ++s)
      if (!aug.adjacent(p[s], p[s + 1]))
        out.push_back(tag + " non-edge " + p[s] + "-" + p[s + 1]);
    std::set<VertexId> seen;
    for (const auto& v : p) {
      if (!seen.insert(v).second) out.push_back(tag + " repeats " + v);
      auto [it, fresh] = owner.emplace(v, t);
      if (!fresh && it->second != t)
        out.push_back(tag + " shares " + v + " with path " +
                      std::to_string(it->second));
    }
    auto cf = parse_coord(p.front(), 'w');
    auto cb = parse_coord(p.back(), 'w');
    bool closed = cf && cb && cf->k == cb->k;  // both endpoints on layer m
    for (std::size_t s = 1; s + 1 < p.size(); ++s) {
      auto c = parse_coord(p[s], 'w');
      if (!c) continue;
      if (c->k == m)
        out.push_back(tag + " touches layer m internally at " + p[s]);
      if (c->k == n && !closed)
        out.push_back(tag + " touches layer n internally at " + p[s]);
    }
  }
  return out;
}

// ---- triple wedge ----

VertexId xname(Coord c) {
  return "x" + std::to_string(c.k) + "." + std::to_string(c.i);
}
VertexId yname(Coord c) {
  return "y" + std::to_string(c.k) + "." + std::to_string(c.i);
}
VertexId zname(Coord c) {
  return "z" + std::to_string(c.k) + "." + std::to_string(c.i);
}

namespace {

struct TWVertex {
  char wedge;  // 'x', 'y' or 'z'
  Coord c;
};

std::optional<TWVertex> parse_tw(const VertexId& v) {
  for (char w : {'x', 'y', 'z'}) {
    if (auto c = parse_coord(v, w)) return TWVertex{w, *c};
  }
  return std::nullopt;
}

bool inter_edge(const TWVertex& a, const TWVertex& b) {
  // x_k^k - y_k^0, y_k^k - z_k^0, z_k^k - x_k^0
  auto match = [](const TWVertex& s, const TWVertex& t, char ws, char wt) {
    return s.wedge == ws && t.wedge == wt && s.c.k == t.c.k &&
           s.c.i == s.c.k && t.c.i == 0;
  };
  return match(a, b, 'x', 'y') || match(b, a, 'x', 'y') ||
         match(a, b, 'y', 'z') || match(b, a, 'y', 'z') ||
         match(a, b, 'z', 'x') || match(b, a, 'z', 'x');
}

}  // namespace

bool TripleWedge::adjacent(const VertexId& u, const VertexId& v) const {
  auto a = parse_tw(u), b = parse_tw(v);
  if (!a || !b || a->c.k > K || b->c.k > K) return false;
  if (a->wedge == b->wedge && wedge_adjacent(a->c, b->c)) return true;
  if (inter_edge(*a, *b)) return true;
  for (const auto& [p, q] : chords)
    if ((p == u && q == v) || (p == v && q == u)) return true;
  return false;
}

Graph TripleWedge::to_graph() const {
  Graph g;
  auto names = {xname, yname, zname};
  for (auto nm : names)
    for (int k = 0; k <= K; ++k)
      for (int i = 0; i <= k; ++i) g.add_vertex(nm({k, i}));
  for (auto nm : names)
    for (int k = 0; k <= K; ++k)
      for (int i = 0; i <= k; ++i)
        for (Coord d : {Coord{k, i + 1}, Coord{k + 1, i}, Coord{k + 1, i + 1}})
          if (d.valid() && d.k <= K) g.add_edge(nm({k, i}), nm(d));
  for (int k = 0; k <= K; ++k) {
    g.add_edge(xname({k, k}), yname({k, 0}));
    g.add_edge(yname({k, k}), zname({k, 0}));
    g.add_edge(zname({k, k}), xname({k, 0}));
  }
  for (const auto& [p, q] : chords) g.add_edge(p, q);
  return g;
}

bool enclosed(const TripleWedge& tw, const VertexId& v) {
  auto a = parse_tw(v);
  if (!a || a->c.k > tw.K) return false;
  return 0 < a->c.i && a->c.i < a->c.k;
}

namespace {

// Reflection automorphism swapping X and Y and fixing Z setwise:
// x_k^i -> y_k^{k-i}, y_k^i -> x_k^{k-i}, z_k^i -> z_k^{k-i}.
VertexId reflect(const VertexId& v) {
  auto a = parse_tw(v);
  Coord c{a->c.k, a->c.k - a->c.i};
  switch (a->wedge) {
    case 'x': return yname(c);
    case 'y': return xname(c);
    default: return zname(c);
  }
}

Path reflect(const Path& p) {
  Path out;
  for (const auto& v : p) out.push_back(reflect(v));
  return out;
}

// Ring segment helpers in X / Y.
void append_layer(Path& p, VertexId (*nm)(Coord), int k, int from, int to) {
  if (from <= to)
    for (int i = from; i <= to; ++i) p.push_back(nm({k, i}));
  else
    for (int i = from; i >= to; --i) p.push_back(nm({k, i}));
}

// Deterministic BFS for a z_m^m -- z_n^0 path with internals in X or Y,
// avoiding the vertex set `blocked`. Used for the same-wedge chord case
// with i > j, where the paper's explicit formula covers i <= j only.
Path bfs_bypass(const TripleWedge& tw, int m, int n,
                const std::set<VertexId>& blocked) {
  VertexId src = zname({m, m}), dst = zname({n, 0});
  auto allowed = [&](const VertexId& v) {
    if (blocked.count(v)) return false;
    auto a = parse_tw(v);
    if (a->c.k < m || a->c.k > n) return false;
    if (a->wedge == 'z') return v == src || v == dst;
    return true;
  };
  std::map<VertexId, VertexId> parent;
  std::deque<VertexId> queue{src};
  parent[src] = src;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    if (u == dst) break;
    auto a = parse_tw(u);
    std::vector<VertexId> nbs;
    // same-wedge neighbours
    auto nm = a->wedge == 'x' ? xname : a->wedge == 'y' ? yname : zname;
    for (Coord d : {Coord{a->c.k, a->c.i - 1}, Coord{a->c.k, a->c.i + 1},
                    Coord{a->c.k - 1, a->c.i - 1}, Coord{a->c.k - 1, a->c.i},
                    Coord{a->c.k + 1, a->c.i}, Coord{a->c.k + 1, a->c.i + 1}})
      if (d.valid()) nbs.push_back(nm(d));
    // inter-wedge neighbours
    if (a->c.i == a->c.k) {
      if (a->wedge == 'x') nbs.push_back(yname({a->c.k, 0}));
      if (a->wedge == 'y') nbs.push_back(zname({a->c.k, 0}));
      if (a->wedge == 'z') nbs.push_back(xname({a->c.k, 0}));
    }
    if (a->c.i == 0) {
      if (a->wedge == 'y') nbs.push_back(xname({a->c.k, a->c.k}));
      if (a->wedge == 'z') nbs.push_back(yname({a->c.k, a->c.k}));
      if (a->wedge == 'x') nbs.push_back(zname({a->c.k, a->c.k}));
    }
    std::sort(nbs.begin(), nbs.end());
    for (const auto& v : nbs) {
      if (!allowed(v) || parent.count(v)) continue;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (!parent.count(dst))
    throw StructuralError("triple wedge: no fallback bypass found");
  Path rev;
  for (VertexId v = dst; v != src; v = parent[v]) rev.push_back(v);
  rev.push_back(src);
  return {rev.rbegin(), rev.rend()};
}

}  // namespace

CrossingPair crossing_from_chord(int m, int n, const VertexId& u_in,
                                 const VertexId& v_in) {
  TripleWedge base{n, {}};
  auto pu = parse_tw(u_in), pv = parse_tw(v_in);
  if (!pu || !pv || pu->wedge == 'z' || pv->wedge == 'z')
    throw StructuralError("chord endpoints must lie in X or Y");
  for (auto* p : {&*pu, &*pv})
    if (p->c.k <= m || p->c.k >= n)
      throw StructuralError("chord endpoint outside annulus interior");
  if (base.adjacent(u_in, v_in) || u_in == v_in)
    throw StructuralError("chord endpoints must be non-adjacent");
  if (!enclosed(base, u_in))
    throw StructuralError("chord endpoint u must be enclosed");

  // Normalize so that u is in X; reflect back at the end if needed.
  bool reflected = pu->wedge == 'y';
  VertexId u = reflected ? reflect(u_in) : u_in;
  VertexId v = reflected ? reflect(v_in) : v_in;
  pu = parse_tw(u);
  pv = parse_tw(v);
  const int k = pu->c.k, i = pu->c.i;
  const int l = pv->c.k, j = pv->c.i;

  Path P, Pp;
  int Pa, Pb;  // endpoints of P as a bypass (z_a^0, z_b^b)
  if (pv->wedge == 'y') {
    // different wedges: ring into layer k of X, chord, ring out of
    // layer l of Y
    P.push_back(zname({k, k}));
    append_layer(P, xname, k, 0, i);
    append_layer(P, yname, l, j, l);
    P.push_back(zname({l, 0}));
    Pa = l;
    Pb = k;
    // P': ring at m, the diagonal x_t^t, ring at n
    Pp.push_back(zname({m, m}));
    append_layer(Pp, xname, m, 0, m);
    for (int t = m + 1; t <= n; ++t) Pp.push_back(xname({t, t}));
    append_layer(Pp, yname, n, 0, n);
    Pp.push_back(zname({n, 0}));
  } else {
    // same wedge (both in X)
    P.push_back(zname({k, k}));
    append_layer(P, xname, k, 0, i);
    append_layer(P, xname, l, j, l);
    append_layer(P, yname, l, 0, l);
    P.push_back(zname({l, 0}));
    Pa = l;
    Pb = k;
    if (i <= j) {
      // column i-1 with a local detour hopping over u at layer k
      Pp.push_back(zname({m, m}));
      if (i - 1 <= m) {
        append_layer(Pp, xname, m, 0, i - 1);
        for (int t = m + 1; t <= k - 1; ++t) Pp.push_back(xname({t, i - 1}));
      } else {
        append_layer(Pp, xname, m, 0, m);
        for (int t = m + 1; t <= i - 1; ++t) Pp.push_back(xname({t, t}));
        for (int t = i; t <= k - 1; ++t) Pp.push_back(xname({t, i - 1}));
      }
      Pp.push_back(xname({k - 1, i}));
      Pp.push_back(xname({k, i + 1}));
      Pp.push_back(xname({k + 1, i + 1}));
      if (k + 1 < n) {
        Pp.push_back(xname({k + 1, i}));
        for (int t = k + 1; t <= n - 1; ++t) Pp.push_back(xname({t, i - 1}));
        append_layer(Pp, xname, n, i - 1, n);
      } else {
        // detour lands on layer n already; continue along it
        append_layer(Pp, xname, n, i + 2, n);
      }
      append_layer(Pp, yname, n, 0, n);
      Pp.push_back(zname({n, 0}));
    } else {
      // i > j: the paper treats this as "completely analogous"; we take
      // P in whichever orientation leaves a corridor for the second
      // bypass and find that one by deterministic search.
      try {
        std::set<VertexId> blocked(P.begin(), P.end());
        Pp = bfs_bypass(base, m, n, blocked);
      } catch (const StructuralError&) {
        // flip P: enter through v's layer, leave through u's
        P.clear();
        P.push_back(zname({l, l}));
        append_layer(P, xname, l, 0, j);
        append_layer(P, xname, k, i, k);
        append_layer(P, yname, k, 0, k);
        P.push_back(zname({k, 0}));
        Pa = k;
        Pb = l;
        std::set<VertexId> blocked(P.begin(), P.end());
        Pp = bfs_bypass(base, m, n, blocked);
      }
    }
  }

  CrossingPair cp;
  cp.tw = TripleWedge{n, {{u_in, v_in}}};
  if (reflected) {
    // reflection maps z_t^s to z_t^{t-s}, so the endpoint roles swap:
    // P ran z_Pb^Pb -> z_Pa^0 and now runs z_Pb^0 -> z_Pa^Pa.
    cp.first = ZBypass{Pb, Pa, reflect(P)};
    cp.second = ZBypass{m, n, reflect(Pp)};
  } else {
    // orient from z_a^0 to z_b^b
    std::reverse(P.begin(), P.end());
    cp.first = ZBypass{Pa, Pb, std::move(P)};
    std::reverse(Pp.begin(), Pp.end());
    cp.second = ZBypass{n, m, std::move(Pp)};
  }
  return cp;
}

CrossingPair crossing_from_diagonals(int k, int K) {
  if (k < 1 || k + 1 > K)
    throw StructuralError("crossing_from_diagonals: k out of range");
  CrossingPair cp;
  cp.tw = TripleWedge{
      K,
      {{xname({k, k}), yname({k + 1, 0})}, {xname({k + 1, k + 1}), yname({k, 0})}}};
  {
    Path p{zname({k, k})};
    append_layer(p, xname, k, 0, k);
    append_layer(p, yname, k + 1, 0, k + 1);
    p.push_back(zname({k + 1, 0}));
    std::reverse(p.begin(), p.end());
    cp.first = ZBypass{k + 1, k, std::move(p)};
  }
  {
    Path p{zname({k + 1, k + 1})};
    append_layer(p, xname, k + 1, 0, k + 1);
    append_layer(p, yname, k, 0, k);
    p.push_back(zname({k, 0}));
    std::reverse(p.begin(), p.end());
    cp.second = ZBypass{k, k + 1, std::move(p)};
  }
  return cp;
}

std::vector<std::string> verify_crossing_pair(const CrossingPair& cp) {
  std::vector<std::string> out;
  std::set<VertexId> seen_first;
  for (const ZBypass* bp : {&cp.first, &cp.second}) {
    std::string tag = bp == &cp.first ? "first" : "second";
    if (bp->path.empty()) {
      out.push_back(tag + " empty");
      continue;
    }
    if (bp->path.front() != zname({bp->a, 0}))
      out.push_back(tag + " does not start at z" + std::to_string(bp->a) + ".0");
    if (bp->path.back() != zname({bp->b, bp->b}))
      out.push_back(tag + " does not end at z" + std::to_string(bp->b) + "." +
                    std::to_string(bp->b));
    std::set<VertexId> seen;
    for (std::size_t s = 0; s < bp->path.size(); ++s) {
      const VertexId& v = bp->path[s];
      if (!seen.insert(v).second) out.push_back(tag + " repeats " + v);
      auto a = parse_tw(v);
      if (!a) {
        out.push_back(tag + " has foreign vertex " + v);
        continue;
      }
      if (a->wedge == 'z' && s != 0 && s + 1 != bp->path.size())
        out.push_back(tag + " touches Z internally at " + v);
      if (s + 1 < bp->path.size() && !cp.tw.adjacent(v, bp->path[s + 1]))
        out.push_back(tag + " non-edge " + v + "-" + bp->path[s + 1]);
    }
    if (bp == &cp.first) seen_first = std::move(seen);
  }
  for (const auto& v : cp.second.path)
    if (seen_first.count(v)) out.push_back("paths share " + v);
  Bypass b1{cp.first.a, cp.first.b, {}}, b2{cp.second.a, cp.second.b, {}};
  if (!crossing(b1, b2)) out.push_back("pair does not cross");
  return out;
}

}  // namespace planarhost::wedge
