#include "gqd/cayley.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace gqd {

int GenSet::index_of(const GqdElem& x) const {
  for (size_t j = 0; j < gens.size(); ++j)
    if (gens[j] == x) return static_cast<int>(j);
  return -1;
}

int GenSet::inverse_index(const GqdGroup& G, int j) const { return index_of(inv(G, gens.at(j))); }

GenSet make_genset(const GqdGroup& G, const std::vector<GqdElem>& xs) {
  GenSet S;
  GqdElem e = identity(G);
  auto add = [&](const GqdElem& x) {
    if (x != e && S.index_of(x) < 0) S.gens.push_back(x);
  };
  for (const auto& x : xs) {
    if (!valid_elem(G, x)) throw std::invalid_argument("generator " + to_string(x) + " is not a valid element");
    add(x);
    add(inv(G, x));
  }
  return S;
}

void validate_genset(const GqdGroup& G, const GenSet& S) {
  GqdElem e = identity(G);
  for (const auto& x : S.gens) {
    if (!valid_elem(G, x)) throw std::invalid_argument("generator " + to_string(x) + " is not a valid element");
    if (x == e) throw std::invalid_argument("generating set contains the identity");
    if (S.index_of(inv(G, x)) < 0) throw std::invalid_argument("generating set is not symmetric");
  }
  std::set<GqdElem> uniq(S.gens.begin(), S.gens.end());
  if (uniq.size() != S.size()) throw std::invalid_argument("generating set has duplicates");
  if (!generates_group(G, S.gens)) throw std::invalid_argument("S does not generate G");
}

int CayleyWindow::index_of(const GqdElem& g) const {
  auto it = idx_.find(g);
  return it == idx_.end() ? -1 : it->second;
}

bool CayleyWindow::has_edge(const GqdElem& g, const GqdElem& h, int label) const {
  int a = index_of(g), b = index_of(h);
  if (a < 0 || b < 0) return false;
  auto key = std::make_tuple(a, b, label);
  return std::binary_search(edges.begin(), edges.end(), key);
}

CayleyWindow build_window(const GqdGroup& G, const GenSet& S, int radius, size_t budget) {
  if (radius < 0) throw std::invalid_argument("window radius must be >= 0");
  CayleyWindow w;
  w.radius = radius;
  std::deque<GqdElem> queue{identity(G)};
  w.dist[identity(G)] = 0;
  while (!queue.empty()) {
    GqdElem g = queue.front();
    queue.pop_front();
    int d = w.dist[g];
    if (d == radius) continue;
    for (const auto& s : S.gens) {
      GqdElem h = mul(G, g, s);
      if (w.dist.count(h)) continue;
      w.dist[h] = d + 1;
      if (w.dist.size() > budget) throw std::length_error("Cayley window exceeds vertex budget");
      queue.push_back(h);
    }
  }
  for (const auto& [g, d] : w.dist) w.vertices.push_back(g);
  std::sort(w.vertices.begin(), w.vertices.end());
  for (size_t j = 0; j < w.vertices.size(); ++j) w.idx_[w.vertices[j]] = static_cast<int>(j);
  for (size_t j = 0; j < w.vertices.size(); ++j)
    for (size_t s = 0; s < S.size(); ++s) {
      int h = w.index_of(mul(G, w.vertices[j], S[s]));
      if (h >= 0) w.edges.emplace_back(static_cast<int>(j), h, static_cast<int>(s));
    }
  std::sort(w.edges.begin(), w.edges.end());
  return w;
}

const char* case_name(CaseTag::Kind k) {
  switch (k) {
    case CaseTag::Kind::Base: return "base";
    case CaseTag::Kind::Case1: return "case1";
    case CaseTag::Kind::Case2i: return "case2i";
    case CaseTag::Kind::Case2ii: return "case2ii";
  }
  return "?";
}

CaseTag classify_case(const GqdGroup& G, const GenSet& S) {
  CaseTag tag;
  std::vector<KZElem> s2;
  for (size_t j = 0; j < S.size(); ++j) {
    if (S[j].eps == 1) {
      tag.S1.push_back(static_cast<int>(j));
    } else {
      tag.S2.push_back(static_cast<int>(j));
      s2.push_back(to_kz(S[j]));
    }
  }
  if (S.size() <= 2) {
    tag.kind = CaseTag::Kind::Base;
  } else if (tag.S2.empty()) {
    tag.kind = CaseTag::Kind::Case1;
  } else {
    tag.kind = lattice_canonicalize(G.K, s2).is_finite() ? CaseTag::Kind::Case2i : CaseTag::Kind::Case2ii;
  }
  return tag;
}

std::vector<int> without_pair(const GqdGroup& G, const GenSet& S, int s) {
  GqdElem x = S[s], xi = inv(G, S[s]);
  std::vector<int> out;
  for (size_t j = 0; j < S.size(); ++j)
    if (S[j] != x && S[j] != xi) out.push_back(static_cast<int>(j));
  return out;
}

std::vector<std::pair<int, int>> pivot_candidates(const GqdGroup& G, const GenSet& S) {
  std::vector<std::pair<int, int>> out;
  for (size_t s = 0; s < S.size(); ++s) {
    // a pair {x, x^-1} is represented by its first member
    int si = S.inverse_index(G, static_cast<int>(s));
    if (si >= 0 && si < static_cast<int>(s)) continue;
    auto rest = without_pair(G, S, static_cast<int>(s));
    if (rest.empty()) continue;
    bool distinct = false;
    for (int j : rest)
      if (S[j].i != S[rest[0]].i) distinct = true;
    if (distinct) out.push_back({static_cast<int>(s), rest[0]});
  }
  return out;
}

std::pair<int, int> choose_pivot(const GqdGroup& G, const GenSet& S) {
  for (const auto& x : S.gens)
    if (x.eps != 1) throw std::invalid_argument("choose_pivot requires S outside K<a>");
  auto c = pivot_candidates(G, S);
  if (c.empty()) throw std::runtime_error("no pivot leaves an infinite subgroup");
  return c.front();
}

CosetLadder coset_ladder(const GqdGroup& G, const GenSet& S, int s, int t) {
  auto rest = without_pair(G, S, s);
  if (std::find(rest.begin(), rest.end(), t) == rest.end())
    throw std::invalid_argument("coset_ladder: companion must lie in S minus the pivot pair");
  CosetLadder L;
  L.t = S[t];
  L.ts = mul(G, S[t], S[s]);
  std::vector<KZElem> gens;
  for (int j : rest) gens.push_back(to_kz(mul(G, S[t], S[j])));
  L.H_prime = lattice_canonicalize(G.K, gens);
  if (L.H_prime.is_finite()) throw std::invalid_argument("coset_ladder: H is finite");
  std::vector<KZElem> all{{k_zero(G.K), 1}};
  for (size_t j = 0; j < G.K.rank(); ++j) {
    KElem e = k_zero(G.K);
    e[j] = 1;
    all.push_back({k_reduce(G.K, e), 0});
  }
  LatticeSubgroup whole = lattice_canonicalize(G.K, all);
  L.m = quotient_cyclic_order(G.K, L.H_prime, to_kz(L.ts), whole) - 1;
  return L;
}

std::pair<int64_t, int> coset_of(const GqdGroup& G, const CosetLadder& L, const GqdElem& g) {
  GqdElem base = g.eps == 0 ? g : mul(G, g, inv(G, L.t));
  if (base.eps != 0) throw std::logic_error("coset_of: companion is not outside K<a>");
  GqdElem step = inv(G, L.ts);
  GqdElem cur = base;
  for (int64_t l = 0; l <= L.m; ++l) {
    if (lattice_contains(G.K, L.H_prime, to_kz(cur))) return {l, g.eps};
    cur = mul(G, cur, step);
  }
  throw std::runtime_error("coset_of: element not located in the ladder");
}

}  // namespace gqd
