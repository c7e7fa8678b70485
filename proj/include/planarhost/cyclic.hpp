#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace planarhost::core {

using VertexId = std::string;

/// A nonempty vertex sequence taken up to cyclic shift. Two CyclicSeq
/// values compare equal iff one representative is a cyclic shift of the
/// other.
class CyclicSeq {
 public:
  CyclicSeq() = default;
  explicit CyclicSeq(std::vector<VertexId> items) : items_(std::move(items)) {}

  const std::vector<VertexId>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const VertexId& at(std::size_t i) const { return items_[i % items_.size()]; }

  /// Lexicographically least cyclic shift; the canonical representative.
  std::vector<VertexId> canonical() const {
    if (items_.empty()) return {};
    std::vector<VertexId> best = items_;
    std::vector<VertexId> cur = items_;
    for (std::size_t s = 1; s < items_.size(); ++s) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      if (cur < best) best = cur;
    }
    return best;
  }

  bool operator==(const CyclicSeq& other) const {
    if (items_.size() != other.items_.size()) return false;
    return canonical() == other.canonical();
  }
  bool operator!=(const CyclicSeq& other) const { return !(*this == other); }

  CyclicSeq reversed() const {
    std::vector<VertexId> rev(items_.rbegin(), items_.rend());
    return CyclicSeq(std::move(rev));
  }

  /// Index of the unique occurrence of v, if v occurs exactly once.
  std::optional<std::size_t> unique_index(const VertexId& v) const {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (items_[i] == v) {
        if (found) return std::nullopt;
        found = i;
      }
    }
    return found;
  }

 private:
  std::vector<VertexId> items_;
};

/// True iff some cyclic shift of `whole` contains `sub` as a (not
/// necessarily contiguous) subsequence.
bool cyclically_ordered(const std::vector<VertexId>& sub, const CyclicSeq& whole);

enum class OrderRelation { Preserving, Reversing, Neither };

/// Classifies an injection between supports of two cyclic sequences.
/// Maps of at most two points are simultaneously preserving and
/// reversing; those report Preserving.
OrderRelation order_relation(const std::vector<std::pair<VertexId, VertexId>>& phi,
                             const CyclicSeq& from, const CyclicSeq& to);

}  // namespace planarhost::core
