#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gqd/group.hpp"

namespace gqd {

// Index q*p + r is period^q * motif[r]; the edge leaving index x carries labels[x mod p].
struct GroupDoubleRay {
  std::vector<GqdElem> motif;
  GqdElem period;
  std::vector<int> labels;

  int64_t size() const { return static_cast<int64_t>(motif.size()); }
  GqdElem at(const GqdGroup& G, int64_t x) const;
  int label_at(int64_t x) const;
  // same ray with index 0 moved to index `by`
  GroupDoubleRay rotated(const GqdGroup& G, int64_t by) const;
};

struct HamCircle {
  GroupDoubleRay first, second;
};

// Simple labeled graph on 0..n-1.
struct FiniteGraph {
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, label)

  size_t size() const { return adj.size(); }
  void add_arc(int u, int v, int label);
  bool adjacent(int u, int v) const;
  int label(int u, int v) const;  // -1 when not adjacent
};

}  // namespace gqd
