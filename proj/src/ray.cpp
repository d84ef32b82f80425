#include "gqd/ray.hpp"

#include <stdexcept>

#include "gqd/checked.hpp"

namespace gqd {

GqdElem GroupDoubleRay::at(const GqdGroup& G, int64_t x) const {
  if (motif.empty()) throw std::logic_error("empty motif");
  int64_t q = floor_div(x, size());
  return mul(G, power(G, period, q), motif[static_cast<size_t>(x - q * size())]);
}

int GroupDoubleRay::label_at(int64_t x) const {
  return labels.at(static_cast<size_t>(pos_mod(x, size())));
}

GroupDoubleRay GroupDoubleRay::rotated(const GqdGroup& G, int64_t by) const {
  GroupDoubleRay out;
  out.period = period;
  for (int64_t j = 0; j < size(); ++j) {
    out.motif.push_back(at(G, j - by));
    out.labels.push_back(label_at(j - by));
  }
  return out;
}

void FiniteGraph::add_arc(int u, int v, int label) {
  if (u == v || adjacent(u, v)) return;
  adj.at(u).push_back({v, label});
}

bool FiniteGraph::adjacent(int u, int v) const { return label(u, v) >= 0; }

int FiniteGraph::label(int u, int v) const {
  for (const auto& [w, lab] : adj.at(u))
    if (w == v) return lab;
  return -1;
}

}  // namespace gqd
