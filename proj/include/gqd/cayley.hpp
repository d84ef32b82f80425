#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gqd/group.hpp"

namespace gqd {

struct GenSet {
  std::vector<GqdElem> gens;

  size_t size() const { return gens.size(); }
  const GqdElem& operator[](size_t j) const { return gens[j]; }
  int index_of(const GqdElem& x) const;  // -1 when absent
  int inverse_index(const GqdGroup& G, int j) const;
};

// Symmetric closure in input order (x then x^-1), duplicates and identity dropped.
GenSet make_genset(const GqdGroup& G, const std::vector<GqdElem>& xs);
// Throws std::invalid_argument unless S is symmetric, identity-free and generates G.
void validate_genset(const GqdGroup& G, const GenSet& S);

inline constexpr size_t kDefaultWindowBudget = 1000000;

struct CayleyWindow {
  int radius = 0;
  std::vector<GqdElem> vertices;  // sorted
  std::unordered_map<GqdElem, int, GqdElemHash> dist;
  std::vector<std::tuple<int, int, int>> edges;  // (vertex index, vertex index, generator index)

  bool contains(const GqdElem& g) const { return dist.count(g) != 0; }
  int index_of(const GqdElem& g) const;  // -1 when absent
  bool has_edge(const GqdElem& g, const GqdElem& h, int label) const;

 private:
  friend CayleyWindow build_window(const GqdGroup&, const GenSet&, int, size_t);
  std::unordered_map<GqdElem, int, GqdElemHash> idx_;
};

CayleyWindow build_window(const GqdGroup& G, const GenSet& S, int radius,
                          size_t budget = kDefaultWindowBudget);

struct CaseTag {
  enum class Kind { Base, Case1, Case2i, Case2ii };
  Kind kind = Kind::Base;
  std::vector<int> S1, S2;  // indices into S: outside / inside K<a>
};

const char* case_name(CaseTag::Kind k);
CaseTag classify_case(const GqdGroup& G, const GenSet& S);

// Indices of S minus {S[s], S[s]^-1}.
std::vector<int> without_pair(const GqdGroup& G, const GenSet& S, int s);
// All valid (pivot, companion) index pairs in deterministic order.
std::vector<std::pair<int, int>> pivot_candidates(const GqdGroup& G, const GenSet& S);
std::pair<int, int> choose_pivot(const GqdGroup& G, const GenSet& S);

struct CosetLadder {
  LatticeSubgroup H_prime;  // H cap K<a>
  int64_t m = 0;            // m+1 cosets of H' in K<a>
  GqdElem ts;
  GqdElem t;
};

CosetLadder coset_ladder(const GqdGroup& G, const GenSet& S, int s, int t);
// (l, side): g lies in H'(ts)^l (side 0) or H'(ts)^l t (side 1)
std::pair<int64_t, int> coset_of(const GqdGroup& G, const CosetLadder& ladder, const GqdElem& g);

}  // namespace gqd
