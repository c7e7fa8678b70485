#include "planarhost/planar_map.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace planarhost::core {

std::size_t Graph::component_count() const {
  auto labels = component_labels();
  std::set<std::size_t> distinct;
  for (const auto& [v, c] : labels) distinct.insert(c);
  return distinct.size();
}

std::map<VertexId, std::size_t> Graph::component_labels() const {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& [a, b] : edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::map<VertexId, std::size_t> label;
  std::size_t next = 0;
  for (const auto& v : vertices()) {
    if (label.count(v)) continue;
    std::deque<VertexId> queue{v};
    label[v] = next;
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      auto it = adj.find(u);
      if (it == adj.end()) continue;
      for (const auto& w : it->second) {
        if (!label.count(w)) {
          label[w] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::string FacialWalk::key() const {
  std::ostringstream os;
  for (const auto& v : walk.canonical()) os << v << '\x1f';
  return os.str();
}

void PlanarMap::set_rotation(const VertexId& v, std::vector<VertexId> order) {
  if (!graph_.has_vertex(v))
    throw StructuralError("rotation for unknown vertex " + v);
  rot_[v] = std::move(order);
}

const std::vector<VertexId>& PlanarMap::rotation(const VertexId& v) const {
  auto it = rot_.find(v);
  if (it == rot_.end()) throw StructuralError("no rotation at " + v);
  return it->second;
}

void PlanarMap::validate() const {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& [a, b] : graph_.edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& v : graph_.vertices()) {
    auto it = rot_.find(v);
    std::vector<VertexId> nb = std::move(adj[v]);
    if (nb.empty() && (it == rot_.end() || it->second.empty())) continue;
    if (it == rot_.end()) throw StructuralError("missing rotation at " + v);
    std::vector<VertexId> r = it->second;
    std::sort(r.begin(), r.end());
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(r.begin(), r.end()) != r.end())
      throw StructuralError("duplicate entry in rotation at " + v);
    if (r != nb) throw StructuralError("rotation/neighbour mismatch at " + v);
  }
}

std::size_t PlanarMap::rotation_index(const VertexId& v, const VertexId& to) const {
  const auto& r = rotation(v);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] == to) return i;
  throw StructuralError("vertex " + to + " not in rotation at " + v);
}

const VertexId& PlanarMap::rotation_next(const VertexId& v, const VertexId& to) const {
  const auto& r = rotation(v);
  return r[(rotation_index(v, to) + 1) % r.size()];
}

const VertexId& PlanarMap::rotation_prev(const VertexId& v, const VertexId& to) const {
  const auto& r = rotation(v);
  return r[(rotation_index(v, to) + r.size() - 1) % r.size()];
}

PlanarMap PlanarMap::mirrored() const {
  PlanarMap out(graph_);
  for (const auto& [v, r] : rot_) {
    std::vector<VertexId> rev(r.rbegin(), r.rend());
    out.set_rotation(v, std::move(rev));
  }
  return out;
}

std::vector<FacialWalk> trace_faces(const PlanarMap& map) {
  map.validate();
  std::set<std::pair<VertexId, VertexId>> unused;
  for (const auto& [a, b] : map.graph().edges()) {
    unused.insert({a, b});
    unused.insert({b, a});
  }
  std::vector<FacialWalk> faces;
  while (!unused.empty()) {
    auto start = *unused.begin();
    std::vector<VertexId> walk;
    auto dart = start;
    do {
      unused.erase(dart);
      walk.push_back(dart.first);
      // leave along the rotation-successor of the arriving edge
      const VertexId& next = map.rotation_next(dart.second, dart.first);
      dart = {dart.second, next};
    } while (dart != start);
    faces.push_back(FacialWalk{CyclicSeq(std::move(walk))});
  }
  return faces;
}

bool euler_validate(const PlanarMap& map) {
  try {
    map.validate();
  } catch (const StructuralError&) {
    return false;
  }
  auto labels = map.graph().component_labels();
  std::map<std::size_t, long> v_count, e_count, f_count;
  for (const auto& [v, c] : labels) ++v_count[c];
  for (const auto& [a, b] : map.graph().edges()) ++e_count[labels.at(a)];
  for (const auto& f : trace_faces(map)) ++f_count[labels.at(f.walk.items().front())];
  for (const auto& [c, nv] : v_count) {
    long ne = e_count.count(c) ? e_count[c] : 0;
    long nf = f_count.count(c) ? f_count[c] : 1;  // isolated vertex: one face
    if (nv - ne + nf != 2) return false;
  }
  return true;
}

namespace {

bool is_facial(const PlanarMap& m, const std::vector<VertexId>& cycle) {
  CyclicSeq want(cycle);
  for (const auto& f : trace_faces(m))
    if (f.walk == want) return true;
  return false;
}

}  // namespace

PlanarMap glue_on_facial_cycles(
    const PlanarMap& a, const std::vector<VertexId>& cycle_a,
    const PlanarMap& b, const std::vector<VertexId>& cycle_b,
    const std::vector<std::pair<VertexId, VertexId>>& phi) {
  const std::size_t k = cycle_a.size();
  if (k < 3 || cycle_b.size() != k)
    throw StructuralError("glue: cycle length mismatch or too short");
  if (phi.size() != k) throw StructuralError("glue: phi is not a bijection");
  {
    std::set<VertexId> sa(cycle_a.begin(), cycle_a.end());
    std::set<VertexId> sb(cycle_b.begin(), cycle_b.end());
    if (sa.size() != k || sb.size() != k)
      throw StructuralError("glue: repeated vertex on glued cycle");
  }
  if (!is_facial(a, cycle_a) || !is_facial(b, cycle_b))
    throw StructuralError("glue: cycle is not facial");
  if (order_relation(phi, CyclicSeq(cycle_a), CyclicSeq(cycle_b)) !=
      OrderRelation::Reversing)
    throw StructuralError("glue: identification must reverse cyclic order");

  std::map<VertexId, VertexId> fwd;  // a-name -> b-name on the seam
  for (const auto& [u, v] : phi) fwd[u] = v;
  auto rename = [&fwd](const VertexId& v) -> const VertexId& {
    auto it = fwd.find(v);
    return it == fwd.end() ? v : it->second;
  };

  Graph g;
  for (const auto& v : a.graph().vertices()) g.add_vertex(rename(v));
  for (const auto& v : b.graph().vertices()) g.add_vertex(v);
  for (const auto& [u, v] : a.graph().edges()) g.add_edge(rename(u), rename(v));
  for (const auto& [u, v] : b.graph().edges()) g.add_edge(u, v);
  PlanarMap out(std::move(g));

  std::set<VertexId> seam_a(cycle_a.begin(), cycle_a.end());
  for (const auto& v : a.graph().vertices()) {
    if (seam_a.count(v)) continue;
    std::vector<VertexId> r;
    for (const auto& w : a.rotation(v)) r.push_back(rename(w));
    out.set_rotation(v, std::move(r));
  }
  std::set<VertexId> seam_b;
  for (const auto& [u, v] : phi) seam_b.insert(v);
  for (const auto& v : b.graph().vertices())
    if (!seam_b.count(v)) out.set_rotation(v, b.rotation(v));

  // Seam vertices: splice b's neighbours into the face gap of a's
  // rotation. With v on cycle_a between p (previous) and q (next) and
  // w = phi(v) on cycle_b between p' = phi(q) and q' = phi(p), the glued
  // face of a lies between the darts v->q and v->p, so b's non-seam
  // neighbours go between rename(p) = q' and rename(q) = p'.
  for (std::size_t i = 0; i < k; ++i) {
    const VertexId& v = cycle_a[i];
    const VertexId& p = cycle_a[(i + k - 1) % k];
    const VertexId& w = fwd.at(v);
    const std::vector<VertexId>& ra = a.rotation(v);
    const std::vector<VertexId>& rb = b.rotation(w);
    std::size_t pa = 0;
    while (ra[pa] != p) ++pa;
    std::vector<VertexId> merged;
    // a's neighbours starting just past p (i.e. q first), ending at p.
    for (std::size_t s = 1; s <= ra.size(); ++s)
      merged.push_back(rename(ra[(pa + s) % ra.size()]));
    // now merged back is q' = rename(p); append b's neighbours starting
    // just past q' in b's rotation, stopping before p'.
    const VertexId& qp = merged.back();
    std::size_t pb = 0;
    while (rb[pb] != qp) ++pb;
    for (std::size_t s = 1; s < rb.size(); ++s) {
      const VertexId& cand = rb[(pb + s) % rb.size()];
      if (cand == merged.front()) break;  // reached p'
      merged.push_back(cand);
    }
    out.set_rotation(w, std::move(merged));
  }
  out.validate();
  return out;
}

PlanarMap glue_on_facial_cycles(const PlanarMap& a,
                                const std::vector<VertexId>& cycle_a,
                                const PlanarMap& b,
                                const std::vector<VertexId>& cycle_b,
                                std::size_t offset) {
  const std::size_t k = cycle_a.size();
  std::vector<std::pair<VertexId, VertexId>> phi;
  for (std::size_t i = 0; i < k; ++i)
    phi.emplace_back(cycle_a[i], cycle_b[(offset + 2 * k - i) % k]);
  return glue_on_facial_cycles(a, cycle_a, b, cycle_b, phi);
}

}  // namespace planarhost::core
