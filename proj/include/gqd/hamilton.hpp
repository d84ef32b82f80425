#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

#include "gqd/cayley.hpp"
#include "gqd/ray.hpp"
#include "gqd/walls.hpp"

namespace gqd {

inline constexpr size_t kDefaultFiniteBound = 256;

struct HamOptions {
  size_t finite_bound = kDefaultFiniteBound;
  int64_t finite_node_budget = 5000000;
  int64_t search_node_budget = 2000000;  // periodic fallback search, per candidate period
  int max_depth = 64;
};

// One line per construction step, outermost first.
struct BuildTrace {
  std::vector<std::string> steps;
  void add(int depth, const std::string& s);
};

// Backtracking Hamiltonian path from `start`; nullopt when the search is exhausted.
std::optional<std::vector<int>> finite_ham_path(const FiniteGraph& g, int start = 0,
                                                size_t bound = kDefaultFiniteBound,
                                                int64_t node_budget = 5000000);

// Cayley graph of a finite group given by identity, generators and multiplication.
template <class E, class Mul>
FiniteGraph finite_cayley(const E& id, const std::vector<E>& gens, const std::vector<int>& gen_labels, Mul mul,
                          std::vector<E>* elems_out, size_t bound) {
  std::map<E, int> idx{{id, 0}};
  std::vector<E> elems{id};
  for (size_t j = 0; j < elems.size(); ++j)
    for (const auto& s : gens) {
      E h = mul(elems[j], s);
      if (idx.emplace(h, static_cast<int>(elems.size())).second) {
        elems.push_back(h);
        if (elems.size() > bound) throw std::length_error("finite group exceeds size bound");
      }
    }
  FiniteGraph g;
  g.adj.resize(elems.size());
  for (size_t j = 0; j < elems.size(); ++j)
    for (size_t s = 0; s < gens.size(); ++s) g.add_arc(static_cast<int>(j), idx.at(mul(elems[j], gens[s])), gen_labels[s]);
  if (elems_out) *elems_out = std::move(elems);
  return g;
}

// Right translate: motif r -> motif r * w, labels conjugated by w.
GroupDoubleRay right_translate(const GqdGroup& G, const GenSet& S, const GroupDoubleRay& R, const GqdElem& w);
// Left translate by g (labels unchanged); g must commute with the period.
GroupDoubleRay left_translate(const GqdGroup& G, const GroupDoubleRay& R, const GqdElem& g);

// Labels recomputed from consecutive motif entries; throws if a step is not in S.
GroupDoubleRay with_labels(const GqdGroup& G, const GenSet& S, std::vector<GqdElem> motif, const GqdElem& period);

// Index of v on R, if v lies on R.
std::optional<int64_t> ray_index(const GqdGroup& G, const GroupDoubleRay& R, const GqdElem& v);

// Pull a coordinate ray back along E, where E(n + P, m) = sigma_P * E(n, m).
GroupDoubleRay pull_back(const GqdGroup& G, const GenSet& S, const CoordDoubleRay& ray,
                         const std::function<GqdElem(const WallVertex&)>& E, int64_t P, const GqdElem& sigma_P);

GroupDoubleRay base_ray(const GqdGroup& G, const GenSet& S);

// Row built across the s-edges of the 6-cycles rooted at positions congruent to `pivot_parity` mod 2.
GroupDoubleRay next_row(const GqdGroup& G, const GenSet& S, const GroupDoubleRay& R, int s, int pivot_parity);

// rows share motif length and period; rung j joins rows[j].at(x) and rows[j+1].at(x)
void check_grid(const GqdGroup& G, const GenSet& S, const std::vector<GroupDoubleRay>& rows);
GroupDoubleRay grid_assemble(const GqdGroup& G, const GenSet& S, const std::vector<GroupDoubleRay>& rows);
HamCircle grid_circle(const GqdGroup& G, const GenSet& S, const std::vector<GroupDoubleRay>& rows);

// Subgroup <X> (non-abelian, infinite) re-presented as a GQD group of its own.
struct SubgroupPresentation {
  GqdGroup GH;
  SubquotientIso iso;  // Z_{n_1} x ... -> F_H inside K
  KZElem agen;         // (k_l, l)
  GqdElem t;
  GqdElem up(const GqdGroup& G, const GqdElem& x) const;
  GqdElem down(const GqdGroup& G, const GqdElem& g) const;
};
SubgroupPresentation represent_subgroup(const GqdGroup& G, const std::vector<GqdElem>& X);

// Quotient G/F for a subgroup F of K.
struct QuotientPresentation {
  GqdGroup GQ;
  SubquotientIso iso;  // Z_{n_1} x ... -> K/F
  GqdElem down(const GqdElem& g) const;
  GqdElem lift(const GqdElem& q) const;  // some preimage
};
QuotientPresentation quotient_by(const GqdGroup& G, const std::vector<KElem>& F);

// abelian part: rows over the lattice <S[T]> (T indices of eps = 0 generators)
GroupDoubleRay abelian_double_ray(const GqdGroup& G, const GenSet& S, const std::vector<int>& T,
                                  const HamOptions& opt = {}, BuildTrace* trace = nullptr, int depth = 0);

GroupDoubleRay case1_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt = {}, BuildTrace* trace = nullptr,
                         int depth = 0);
GroupDoubleRay case2i_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt = {}, BuildTrace* trace = nullptr,
                          int depth = 0);
GroupDoubleRay case2ii_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt = {},
                           BuildTrace* trace = nullptr, int depth = 0);

GroupDoubleRay hamiltonian_double_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt = {},
                                      BuildTrace* trace = nullptr, int depth = 0);
HamCircle hamiltonian_circle(const GqdGroup& G, const GenSet& S, const HamOptions& opt = {},
                             BuildTrace* trace = nullptr, int depth = 0);

// Direct search for a periodic Hamiltonian ray (or circle) on the quotient by <sigma>.
std::optional<GroupDoubleRay> periodic_search_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt = {});
std::optional<HamCircle> periodic_search_circle(const GqdGroup& G, const GenSet& S, const HamOptions& opt = {});

}  // namespace gqd
