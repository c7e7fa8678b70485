#include "planarhost/cyclic.hpp"

#include <utility>

namespace planarhost::core {

bool cyclically_ordered(const std::vector<VertexId>& sub, const CyclicSeq& whole) {
  if (sub.size() <= 1) return true;
  const auto& w = whole.items();
  const std::size_t n = w.size();
  if (n == 0) return false;
  for (std::size_t shift = 0; shift < n; ++shift) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < n && j < sub.size(); ++i) {
      if (w[(shift + i) % n] == sub[j]) ++j;
    }
    if (j == sub.size()) return true;
  }
  return false;
}

OrderRelation order_relation(const std::vector<std::pair<VertexId, VertexId>>& phi,
                             const CyclicSeq& from, const CyclicSeq& to) {
  if (phi.size() <= 2) return OrderRelation::Preserving;

  // Sort the domain points into the cyclic order of `from`, then test
  // whether the image sequence sits in `to` forwards or backwards.
  std::vector<std::pair<std::size_t, VertexId>> dom;
  for (const auto& [u, v] : phi) {
    auto idx = from.unique_index(u);
    if (!idx) return OrderRelation::Neither;
    dom.emplace_back(*idx, v);
  }
  std::sort(dom.begin(), dom.end());

  std::vector<VertexId> images;
  for (auto& [i, v] : dom) images.push_back(std::move(v));

  if (cyclically_ordered(images, to)) return OrderRelation::Preserving;
  std::vector<VertexId> rev(images.rbegin(), images.rend());
  if (cyclically_ordered(rev, to)) return OrderRelation::Reversing;
  return OrderRelation::Neither;
}

}  // namespace planarhost::core
