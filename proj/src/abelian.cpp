#include "gqd/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gqd/checked.hpp"

namespace gqd {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int64_t> f) : factors(std::move(f)) {
  for (int64_t n : factors)
    if (n < 1) throw std::invalid_argument("invariant factor must be >= 1");
}

int64_t FiniteAbelianGroup::order() const {
  int64_t o = 1;
  for (int64_t n : factors) o = checked_mul(o, n);
  return o;
}

bool FiniteAbelianGroup::valid(const KElem& x) const {
  if (x.size() != factors.size()) return false;
  for (size_t j = 0; j < x.size(); ++j)
    if (x[j] < 0 || x[j] >= factors[j]) return false;
  return true;
}

static void check_dim(const FiniteAbelianGroup& g, const KElem& x) {
  if (x.size() != g.rank()) throw std::invalid_argument("KElem dimension mismatch");
}

KElem k_zero(const FiniteAbelianGroup& g) { return KElem(g.rank(), 0); }

KElem k_reduce(const FiniteAbelianGroup& g, const KElem& x) {
  check_dim(g, x);
  KElem r(x.size());
  for (size_t j = 0; j < x.size(); ++j) r[j] = pos_mod(x[j], g.factors[j]);
  return r;
}

KElem k_add(const FiniteAbelianGroup& g, const KElem& x, const KElem& y) {
  check_dim(g, x);
  check_dim(g, y);
  KElem r(x.size());
  for (size_t j = 0; j < x.size(); ++j) r[j] = pos_mod(x[j] + y[j], g.factors[j]);
  return r;
}

KElem k_neg(const FiniteAbelianGroup& g, const KElem& x) {
  check_dim(g, x);
  KElem r(x.size());
  for (size_t j = 0; j < x.size(); ++j) r[j] = pos_mod(-x[j], g.factors[j]);
  return r;
}

KElem k_sub(const FiniteAbelianGroup& g, const KElem& x, const KElem& y) {
  return k_add(g, x, k_neg(g, y));
}

KElem k_scale(const FiniteAbelianGroup& g, const KElem& x, int64_t n) {
  check_dim(g, x);
  KElem r(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    int64_t m = g.factors[j];
    // reduce n first so the product cannot overflow
    r[j] = pos_mod(pos_mod(n, m) * pos_mod(x[j], m), m);
  }
  return r;
}

bool k_is_zero(const KElem& x) {
  return std::all_of(x.begin(), x.end(), [](int64_t c) { return c == 0; });
}

int64_t k_order(const FiniteAbelianGroup& g, const KElem& x) {
  check_dim(g, x);
  int64_t o = 1;
  for (size_t j = 0; j < x.size(); ++j) {
    int64_t m = g.factors[j];
    int64_t c = pos_mod(x[j], m);
    o = std::lcm(o, m / std::gcd(c, m));
  }
  return o;
}

std::vector<KElem> k_enumerate(const FiniteAbelianGroup& g, int64_t bound) {
  if (g.order() > bound) throw std::length_error("group order exceeds enumeration bound");
  std::vector<KElem> out;
  out.reserve(g.order());
  KElem cur = k_zero(g);
  for (int64_t left = g.order(); left > 0; --left) {
    out.push_back(cur);
    // odometer, last coordinate fastest, giving lexicographic order
    for (size_t j = cur.size(); j-- > 0;) {
      if (++cur[j] < g.factors[j]) break;
      cur[j] = 0;
    }
  }
  return out;
}

std::string k_to_string(const KElem& x) {
  std::ostringstream os;
  os << '(';
  for (size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x[j];
  os << ')';
  return os.str();
}

std::vector<KElem> k_span(const FiniteAbelianGroup& g, const std::vector<KElem>& gens) {
  std::set<KElem> seen{k_zero(g)};
  std::vector<KElem> frontier{k_zero(g)};
  std::vector<KElem> red;
  for (const auto& x : gens) red.push_back(k_reduce(g, x));
  while (!frontier.empty()) {
    std::vector<KElem> next;
    for (const auto& y : frontier)
      for (const auto& x : red) {
        KElem s = k_add(g, y, x);
        if (seen.insert(s).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool k_in(const std::vector<KElem>& F, const KElem& x) {
  return std::binary_search(F.begin(), F.end(), x);
}

KElem k_coset_rep(const FiniteAbelianGroup& g, const std::vector<KElem>& F, const KElem& x) {
  KElem best;
  bool have = false;
  for (const auto& f : F) {
    KElem c = k_add(g, x, f);
    if (!have || c < best) {
      best = std::move(c);
      have = true;
    }
  }
  return have ? best : k_reduce(g, x);
}

KZElem kz_add(const FiniteAbelianGroup& g, const KZElem& x, const KZElem& y) {
  return {k_add(g, x.k, y.k), checked_add(x.z, y.z)};
}

KZElem kz_neg(const FiniteAbelianGroup& g, const KZElem& x) {
  return {k_neg(g, x.k), checked_neg(x.z)};
}

KZElem kz_scale(const FiniteAbelianGroup& g, const KZElem& x, int64_t n) {
  return {k_scale(g, x.k, n), checked_mul(x.z, n)};
}

int64_t LatticeSubgroup::index_in(const FiniteAbelianGroup& g) const {
  if (!inf_gen) throw std::logic_error("finite subgroup has infinite index");
  return checked_mul(g.order() / static_cast<int64_t>(finite.size()), inf_gen->z);
}

namespace {

// returns (d, u, w) with u*a + w*b = d = gcd(a, b) >= 0
struct Egcd {
  int64_t d, u, w;
};

Egcd egcd(int64_t a, int64_t b) {
  int64_t r0 = a, r1 = b, u0 = 1, u1 = 0, w0 = 0, w1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(u0, u1) = std::make_pair(u1, checked_sub(u0, checked_mul(q, u1)));
    std::tie(w0, w1) = std::make_pair(w1, checked_sub(w0, checked_mul(q, w1)));
  }
  if (r0 < 0) return {-r0, -u0, -w0};
  return {r0, u0, w0};
}

}  // namespace

LatticeSubgroup lattice_canonicalize(const FiniteAbelianGroup& g, const std::vector<KZElem>& gens) {
  std::vector<KZElem> red;
  for (const auto& x : gens) red.push_back({k_reduce(g, x.k), x.z});

  std::optional<KZElem> v;
  for (const auto& x : red) {
    if (x.z == 0) continue;
    if (!v) {
      v = x;
      continue;
    }
    Egcd e = egcd(v->z, x.z);
    *v = kz_add(g, kz_scale(g, *v, e.u), kz_scale(g, x, e.w));
  }

  LatticeSubgroup out;
  std::vector<KElem> fgens;
  if (v) {
    if (v->z < 0) v = kz_neg(g, *v);
    for (const auto& x : red) {
      KZElem y = kz_add(g, x, kz_scale(g, *v, -(x.z / v->z)));
      fgens.push_back(y.k);
    }
  } else {
    for (const auto& x : red) fgens.push_back(x.k);
  }
  out.finite = k_span(g, fgens);
  if (v) out.inf_gen = KZElem{k_coset_rep(g, out.finite, v->k), v->z};
  return out;
}

bool lattice_contains(const FiniteAbelianGroup& g, const LatticeSubgroup& sub, const KZElem& x) {
  KElem k = k_reduce(g, x.k);
  if (!sub.inf_gen) return x.z == 0 && k_in(sub.finite, k);
  if (x.z % sub.inf_gen->z != 0) return false;
  KElem rest = k_sub(g, k, k_scale(g, sub.inf_gen->k, x.z / sub.inf_gen->z));
  return k_in(sub.finite, rest);
}

std::vector<KZElem> lattice_generators(const LatticeSubgroup& sub) {
  std::vector<KZElem> out;
  for (const auto& f : sub.finite)
    if (!k_is_zero(f)) out.push_back({f, 0});
  if (sub.inf_gen) out.push_back(*sub.inf_gen);
  return out;
}

int64_t quotient_cyclic_order(const FiniteAbelianGroup& g, const LatticeSubgroup& sub,
                              const KZElem& x, const LatticeSubgroup& ambient, int64_t bound) {
  if (!lattice_contains(g, ambient, x)) throw std::invalid_argument("element not in ambient subgroup");
  KZElem acc = {k_reduce(g, x.k), x.z};
  for (int64_t q = 1; q <= bound; ++q) {
    if (lattice_contains(g, sub, acc)) return q;
    acc = kz_add(g, acc, x);
  }
  throw std::runtime_error("quotient_cyclic_order: bound exceeded (index not finite?)");
}

KZElem lattice_coset_rep(const FiniteAbelianGroup& g, const LatticeSubgroup& sub, const KZElem& x) {
  KZElem y{k_reduce(g, x.k), x.z};
  if (sub.inf_gen) {
    int64_t q = floor_div(y.z, sub.inf_gen->z);
    y = kz_add(g, y, kz_scale(g, *sub.inf_gen, -q));
  }
  y.k = k_coset_rep(g, sub.finite, y.k);
  return y;
}

KElem SubquotientIso::forward(const KElem& abstract) const {
  KElem acc = k_zero(K);
  for (size_t j = 0; j < basis.size(); ++j) acc = k_add(K, acc, k_scale(K, basis[j], abstract.at(j)));
  return k_coset_rep(K, B, acc);
}

KElem SubquotientIso::backward(const KElem& a) const {
  KElem rep = k_coset_rep(K, B, a);
  auto it = std::lower_bound(table.begin(), table.end(), rep,
                             [](const auto& e, const KElem& key) { return e.first < key; });
  if (it == table.end() || it->first != rep) throw std::invalid_argument("element outside subquotient");
  return it->second;
}

namespace {

int64_t order_mod(const FiniteAbelianGroup& K, const KElem& x, const std::vector<KElem>& B) {
  KElem acc = x;
  for (int64_t n = 1;; ++n) {
    if (k_in(B, acc)) return n;
    acc = k_add(K, acc, x);
  }
}

// basis of A/B as (element, order) pairs, orders non-increasing
std::vector<std::pair<KElem, int64_t>> split_basis(const FiniteAbelianGroup& K, const std::vector<KElem>& A,
                                                   const std::vector<KElem>& B) {
  if (A.size() == B.size()) return {};
  KElem x1;
  int64_t n1 = 0;
  for (const auto& a : A) {
    int64_t o = order_mod(K, a, B);
    if (o > n1) {
      n1 = o;
      x1 = a;
    }
  }
  std::vector<KElem> gens = B;
  gens.push_back(x1);
  std::vector<KElem> B2 = k_span(K, gens);
  auto rest = split_basis(K, A, B2);
  std::vector<std::pair<KElem, int64_t>> out{{x1, n1}};
  for (auto& [h, m] : rest) {
    KElem mh = k_scale(K, h, m);
    int64_t c = -1;
    for (int64_t cc = 0; cc < n1; ++cc)
      if (k_in(B, k_sub(K, mh, k_scale(K, x1, cc)))) {
        c = cc;
        break;
      }
    int64_t d = -1;
    for (int64_t dd = 0; dd < n1 && c >= 0; ++dd)
      if (pos_mod(m * dd - c, n1) == 0) {
        d = dd;
        break;
      }
    if (d < 0) throw std::logic_error("split_basis: lift failed");
    out.push_back({k_sub(K, h, k_scale(K, x1, d)), m});
  }
  return out;
}

}  // namespace

SubquotientIso decompose_subquotient(const FiniteAbelianGroup& K, const std::vector<KElem>& A,
                                     const std::vector<KElem>& B) {
  if (A.size() % B.size() != 0) throw std::invalid_argument("B is not a subgroup of A");
  SubquotientIso iso;
  iso.K = K;
  iso.B = B;
  auto basis = split_basis(K, A, B);
  std::vector<int64_t> orders;
  for (auto& [x, n] : basis) {
    iso.basis.push_back(x);
    orders.push_back(n);
  }
  iso.target = FiniteAbelianGroup(orders);
  for (const auto& c : k_enumerate(iso.target)) iso.table.push_back({iso.forward(c), c});
  std::sort(iso.table.begin(), iso.table.end());
  for (size_t j = 1; j < iso.table.size(); ++j)
    if (iso.table[j].first == iso.table[j - 1].first) throw std::logic_error("decomposition not injective");
  if (iso.table.size() * B.size() != A.size()) throw std::logic_error("decomposition not surjective");
  return iso;
}

}  // namespace gqd
