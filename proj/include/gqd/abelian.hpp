#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gqd {

// Residue vector; coordinate j lives in [0, n_j).
using KElem = std::vector<int64_t>;

struct FiniteAbelianGroup {
  std::vector<int64_t> factors;  // invariant factors, each >= 1

  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<int64_t> f);

  size_t rank() const { return factors.size(); }
  int64_t order() const;
  bool trivial() const { return order() == 1; }
  bool valid(const KElem& x) const;
  bool operator==(const FiniteAbelianGroup&) const = default;
};

struct KZElem {
  KElem k;
  int64_t z = 0;
  auto operator<=>(const KZElem&) const = default;
};

// Subgroup F + <(k_l, l)> of K (+) Z in canonical form.
struct LatticeSubgroup {
  std::vector<KElem> finite;      // all elements of F, sorted
  std::optional<KZElem> inf_gen;  // (k_l, l), l > 0, k_l least in k_l + F
  bool operator==(const LatticeSubgroup&) const = default;

  bool is_finite() const { return !inf_gen.has_value(); }
  // number of cosets in K (+) Z; only meaningful when inf_gen is present
  int64_t index_in(const FiniteAbelianGroup& g) const;
};

inline constexpr int64_t kDefaultEnumerateBound = 4096;

KElem k_zero(const FiniteAbelianGroup& g);
KElem k_add(const FiniteAbelianGroup& g, const KElem& x, const KElem& y);
KElem k_neg(const FiniteAbelianGroup& g, const KElem& x);
KElem k_sub(const FiniteAbelianGroup& g, const KElem& x, const KElem& y);
KElem k_scale(const FiniteAbelianGroup& g, const KElem& x, int64_t n);
KElem k_reduce(const FiniteAbelianGroup& g, const KElem& x);
bool k_is_zero(const KElem& x);
int64_t k_order(const FiniteAbelianGroup& g, const KElem& x);
std::vector<KElem> k_enumerate(const FiniteAbelianGroup& g,
                               int64_t bound = kDefaultEnumerateBound);
std::string k_to_string(const KElem& x);

// Closure of gens under addition, sorted.
std::vector<KElem> k_span(const FiniteAbelianGroup& g, const std::vector<KElem>& gens);
// Least element of x + F (F sorted, a subgroup).
KElem k_coset_rep(const FiniteAbelianGroup& g, const std::vector<KElem>& F, const KElem& x);
bool k_in(const std::vector<KElem>& F, const KElem& x);

KZElem kz_add(const FiniteAbelianGroup& g, const KZElem& x, const KZElem& y);
KZElem kz_neg(const FiniteAbelianGroup& g, const KZElem& x);
KZElem kz_scale(const FiniteAbelianGroup& g, const KZElem& x, int64_t n);

LatticeSubgroup lattice_canonicalize(const FiniteAbelianGroup& g, const std::vector<KZElem>& gens);
bool lattice_contains(const FiniteAbelianGroup& g, const LatticeSubgroup& sub, const KZElem& x);
// Generators that reproduce sub (finite part plus inf_gen).
std::vector<KZElem> lattice_generators(const LatticeSubgroup& sub);
// Smallest q >= 1 with q*x in sub.  Throws if no such q <= bound.
int64_t quotient_cyclic_order(const FiniteAbelianGroup& g, const LatticeSubgroup& sub,
                              const KZElem& x, const LatticeSubgroup& ambient,
                              int64_t bound = 1 << 20);
// Canonical representative of x + sub: z in [0, l) (when inf_gen exists), k least mod F.
KZElem lattice_coset_rep(const FiniteAbelianGroup& g, const LatticeSubgroup& sub, const KZElem& x);

// Explicit isomorphism Z_{n_1} x ... x Z_{n_t} -> A/B for subgroups B <= A <= K
// (A, B given as sorted element lists).
struct SubquotientIso {
  FiniteAbelianGroup K;            // ambient
  FiniteAbelianGroup target;       // the abstract group Z_{n_1} x ... x Z_{n_t}
  std::vector<KElem> basis;        // images of unit vectors, elements of A
  std::vector<KElem> B;            // the subgroup quotiented out
  std::vector<std::pair<KElem, KElem>> table;  // coset rep in A -> abstract coords, sorted

  KElem forward(const KElem& abstract) const;  // abstract -> element of A (least coset rep)
  KElem backward(const KElem& a) const;        // element of A -> abstract
};

SubquotientIso decompose_subquotient(const FiniteAbelianGroup& K, const std::vector<KElem>& A,
                                     const std::vector<KElem>& B);

}  // namespace gqd
