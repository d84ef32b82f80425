#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gqd/abelian.hpp"

namespace gqd {

// G = K<a> u K<a>b with b k b^-1 = -k, b a b^-1 = a^-1, b^2 = beta.
struct GqdGroup {
  FiniteAbelianGroup K;
  KElem beta;

  GqdGroup() = default;
  GqdGroup(FiniteAbelianGroup k, KElem b);
  bool is_infinite_dihedral() const { return K.trivial() && k_is_zero(beta); }
  bool operator==(const GqdGroup&) const = default;
};

// k * a^i * b^eps
struct GqdElem {
  KElem k;
  int64_t i = 0;
  int eps = 0;
  auto operator<=>(const GqdElem&) const = default;
};

struct GqdElemHash {
  size_t operator()(const GqdElem& x) const noexcept;
};

GqdElem identity(const GqdGroup& G);
GqdElem gen_a(const GqdGroup& G);
GqdElem gen_b(const GqdGroup& G);
GqdElem gen_bprime(const GqdGroup& G);
GqdElem from_k(const GqdGroup& G, const KElem& k);
GqdElem from_kz(const KZElem& x);
KZElem to_kz(const GqdElem& x);  // requires eps == 0
bool valid_elem(const GqdGroup& G, const GqdElem& x);
std::string to_string(const GqdElem& x);

GqdElem mul(const GqdGroup& G, const GqdElem& x, const GqdElem& y);
GqdElem inv(const GqdGroup& G, const GqdElem& x);
GqdElem power(const GqdGroup& G, const GqdElem& x, int64_t n);

struct Letter {
  enum class Kind { A, B, BPrime, K };
  Kind kind = Kind::A;
  bool inverse = false;
  KElem k;  // only for Kind::K
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

// Tokens: a a- b b- b' b'- k(c1,...,ct) k(c1,...,ct)-
Word parse_word(const GqdGroup& G, const std::string& text);
std::string word_to_string(const Word& w);
GqdElem letter_value(const GqdGroup& G, const Letter& l);
GqdElem normalize_word(const GqdGroup& G, const Word& w);

struct AmalgamNormalForm {
  KElem head;
  std::vector<char> tail;  // 'b' for b, 'p' for b'
  bool operator==(const AmalgamNormalForm&) const = default;
};

AmalgamNormalForm amalgam_normal_form(const GqdGroup& G, const GqdElem& x);
Word render(const AmalgamNormalForm& f);

bool is_torsion(const GqdGroup& G, const GqdElem& x);
std::optional<int64_t> order(const GqdGroup& G, const GqdElem& x);  // nullopt = infinite

bool six_cycle_identity(const GqdGroup& G, const GqdElem& s1, const GqdElem& s2, const GqdElem& s3);
// g, g s1, g s1 s2, g s1 s2 s3, g s3 s2, g s3
std::array<GqdElem, 6> six_cycle_vertices(const GqdGroup& G, const GqdElem& g, const GqdElem& s1,
                                          const GqdElem& s2, const GqdElem& s3);
bool four_cycle_identity(const GqdGroup& G, const GqdElem& s1, const GqdElem& s2);
// g, g s1, g s1 s2, g s2^-1
std::array<GqdElem, 4> four_cycle_vertices(const GqdGroup& G, const GqdElem& g, const GqdElem& s1,
                                           const GqdElem& s2);

KElem conjugate_in_K(const GqdGroup& G, const GqdElem& g, const KElem& k);

struct SubgroupClass {
  bool abelian = true;
  LatticeSubgroup part;        // the subgroup itself (abelian) or its index-2 part in K<a>
  std::optional<GqdElem> rep;  // an eps = 1 element when not abelian
};

SubgroupClass classify_subgroup(const GqdGroup& G, const std::vector<GqdElem>& X);
// true iff X generates all of G
bool generates_group(const GqdGroup& G, const std::vector<GqdElem>& X);

}  // namespace gqd
