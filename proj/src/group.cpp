#include "gqd/group.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "gqd/checked.hpp"

namespace gqd {

GqdGroup::GqdGroup(FiniteAbelianGroup k, KElem b) : K(std::move(k)), beta(std::move(b)) {
  if (!K.valid(beta)) throw std::invalid_argument("beta is not a reduced element of K");
  if (!k_is_zero(k_add(K, beta, beta))) throw std::invalid_argument("beta must satisfy 2*beta = 0");
}

size_t GqdElemHash::operator()(const GqdElem& x) const noexcept {
  size_t h = std::hash<int64_t>{}(x.i) * 1000003u ^ static_cast<size_t>(x.eps);
  for (int64_t c : x.k) h = h * 31 + std::hash<int64_t>{}(c);
  return h;
}

GqdElem identity(const GqdGroup& G) { return {k_zero(G.K), 0, 0}; }
GqdElem gen_a(const GqdGroup& G) { return {k_zero(G.K), 1, 0}; }
GqdElem gen_b(const GqdGroup& G) { return {k_zero(G.K), 0, 1}; }
GqdElem gen_bprime(const GqdGroup& G) { return {G.beta, -1, 1}; }
GqdElem from_k(const GqdGroup& G, const KElem& k) { return {k_reduce(G.K, k), 0, 0}; }
GqdElem from_kz(const KZElem& x) { return {x.k, x.z, 0}; }

KZElem to_kz(const GqdElem& x) {
  if (x.eps != 0) throw std::invalid_argument("element lies outside K<a>");
  return {x.k, x.i};
}

bool valid_elem(const GqdGroup& G, const GqdElem& x) {
  return G.K.valid(x.k) && (x.eps == 0 || x.eps == 1);
}

std::string to_string(const GqdElem& x) {
  std::ostringstream os;
  os << '(' << k_to_string(x.k) << ',' << x.i << ',' << x.eps << ')';
  return os.str();
}

GqdElem mul(const GqdGroup& G, const GqdElem& x, const GqdElem& y) {
  if (x.eps == 0) return {k_add(G.K, x.k, y.k), checked_add(x.i, y.i), y.eps};
  if (y.eps == 0) return {k_sub(G.K, x.k, y.k), checked_sub(x.i, y.i), 1};
  return {k_add(G.K, k_sub(G.K, x.k, y.k), G.beta), checked_sub(x.i, y.i), 0};
}

GqdElem inv(const GqdGroup& G, const GqdElem& x) {
  if (x.eps == 0) return {k_neg(G.K, x.k), checked_neg(x.i), 0};
  return {k_add(G.K, x.k, G.beta), x.i, 1};
}

GqdElem power(const GqdGroup& G, const GqdElem& x, int64_t n) {
  if (x.eps == 0) return {k_scale(G.K, x.k, n), checked_mul(x.i, n), 0};
  // x^2 = beta, x^4 = 1
  GqdElem r = identity(G);
  for (int64_t j = 0; j < pos_mod(n, 4); ++j) r = mul(G, r, x);
  return r;
}

GqdElem letter_value(const GqdGroup& G, const Letter& l) {
  GqdElem v;
  switch (l.kind) {
    case Letter::Kind::A: v = gen_a(G); break;
    case Letter::Kind::B: v = gen_b(G); break;
    case Letter::Kind::BPrime: v = gen_bprime(G); break;
    case Letter::Kind::K:
      if (l.k.size() != G.K.rank()) throw std::invalid_argument("k(...) literal has wrong arity");
      v = from_k(G, l.k);
      break;
  }
  return l.inverse ? inv(G, v) : v;
}

Word parse_word(const GqdGroup& G, const std::string& text) {
  Word w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    Letter l;
    std::string body = tok;
    if (body.size() > 1 && body.back() == '-') {
      l.inverse = true;
      body.pop_back();
    }
    if (body == "a") {
      l.kind = Letter::Kind::A;
    } else if (body == "b") {
      l.kind = Letter::Kind::B;
    } else if (body == "b'") {
      l.kind = Letter::Kind::BPrime;
    } else if (body.size() >= 3 && body[0] == 'k' && body[1] == '(' && body.back() == ')') {
      l.kind = Letter::Kind::K;
      std::string inner = body.substr(2, body.size() - 3);
      std::istringstream cs(inner);
      std::string c;
      while (std::getline(cs, c, ',')) {
        size_t used = 0;
        int64_t v = 0;
        try {
          v = std::stoll(c, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("malformed token '" + tok + "'");
        }
        if (used != c.size()) throw std::invalid_argument("malformed token '" + tok + "'");
        l.k.push_back(v);
      }
      if (l.k.size() != G.K.rank()) throw std::invalid_argument("k(...) literal has wrong arity: '" + tok + "'");
      l.k = k_reduce(G.K, l.k);
    } else {
      throw std::invalid_argument("malformed token '" + tok + "'");
    }
    w.push_back(std::move(l));
  }
  return w;
}

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  for (size_t j = 0; j < w.size(); ++j) {
    if (j) os << ' ';
    const Letter& l = w[j];
    switch (l.kind) {
      case Letter::Kind::A: os << 'a'; break;
      case Letter::Kind::B: os << 'b'; break;
      case Letter::Kind::BPrime: os << "b'"; break;
      case Letter::Kind::K: {
        os << "k(";
        for (size_t c = 0; c < l.k.size(); ++c) os << (c ? "," : "") << l.k[c];
        os << ')';
        break;
      }
    }
    if (l.inverse) os << '-';
  }
  return os.str();
}

GqdElem normalize_word(const GqdGroup& G, const Word& w) {
  GqdElem acc = identity(G);
  for (const auto& l : w) acc = mul(G, acc, letter_value(G, l));
  return acc;
}

AmalgamNormalForm amalgam_normal_form(const GqdGroup& G, const GqdElem& x) {
  AmalgamNormalForm f{x.k, {}};
  int64_t n = x.i < 0 ? -x.i : x.i;
  if (x.i >= 0) {
    // a = b b'
    for (int64_t j = 0; j < n; ++j) {
      f.tail.push_back('b');
      f.tail.push_back('p');
    }
    if (x.eps) f.tail.push_back('b');
  } else {
    // a^-1 = b' b
    for (int64_t j = 0; j < n; ++j) {
      f.tail.push_back('p');
      f.tail.push_back('b');
    }
    if (x.eps) {
      // ... b' b b = ... b' beta, and beta is central
      f.tail.pop_back();
      f.head = k_add(G.K, f.head, G.beta);
    }
  }
  return f;
}

Word render(const AmalgamNormalForm& f) {
  Word w;
  w.push_back({Letter::Kind::K, false, f.head});
  for (char c : f.tail) w.push_back({c == 'b' ? Letter::Kind::B : Letter::Kind::BPrime, false, {}});
  return w;
}

bool is_torsion(const GqdGroup&, const GqdElem& x) { return x.eps == 1 || x.i == 0; }

std::optional<int64_t> order(const GqdGroup& G, const GqdElem& x) {
  if (x.eps == 1) return k_is_zero(G.beta) ? 2 : 4;
  if (x.i != 0) return std::nullopt;
  return k_order(G.K, x.k);
}

static void require_eps(const GqdElem& x, int eps, const char* what) {
  if (x.eps != eps) throw std::invalid_argument(what);
}

bool six_cycle_identity(const GqdGroup& G, const GqdElem& s1, const GqdElem& s2, const GqdElem& s3) {
  require_eps(s1, 1, "six_cycle_identity: s1 must lie outside K<a>");
  require_eps(s2, 1, "six_cycle_identity: s2 must lie outside K<a>");
  require_eps(s3, 1, "six_cycle_identity: s3 must lie outside K<a>");
  return mul(G, mul(G, s1, s2), s3) == mul(G, mul(G, s3, s2), s1);
}

std::array<GqdElem, 6> six_cycle_vertices(const GqdGroup& G, const GqdElem& g, const GqdElem& s1,
                                          const GqdElem& s2, const GqdElem& s3) {
  GqdElem g1 = mul(G, g, s1);
  GqdElem g12 = mul(G, g1, s2);
  GqdElem g3 = mul(G, g, s3);
  return {g, g1, g12, mul(G, g12, s3), mul(G, g3, s2), g3};
}

bool four_cycle_identity(const GqdGroup& G, const GqdElem& s1, const GqdElem& s2) {
  require_eps(s1, 1, "four_cycle_identity: s1 must lie outside K<a>");
  require_eps(s2, 0, "four_cycle_identity: s2 must lie in K<a>");
  return mul(G, s1, s2) == mul(G, inv(G, s2), s1);
}

std::array<GqdElem, 4> four_cycle_vertices(const GqdGroup& G, const GqdElem& g, const GqdElem& s1,
                                           const GqdElem& s2) {
  GqdElem g1 = mul(G, g, s1);
  return {g, g1, mul(G, g1, s2), mul(G, g, inv(G, s2))};
}

KElem conjugate_in_K(const GqdGroup& G, const GqdElem& g, const KElem& k) {
  GqdElem c = mul(G, mul(G, g, from_k(G, k)), inv(G, g));
  if (c.i != 0 || c.eps != 0) throw std::logic_error("conjugate left K");
  return c.k;
}

SubgroupClass classify_subgroup(const GqdGroup& G, const std::vector<GqdElem>& X) {
  SubgroupClass out;
  for (const auto& x : X)
    if (x.eps == 1) {
      out.rep = x;
      break;
    }
  std::vector<KZElem> gens;
  if (!out.rep) {
    for (const auto& x : X) gens.push_back(to_kz(x));
    out.abelian = true;
    out.part = lattice_canonicalize(G.K, gens);
    return out;
  }
  // Schreier generators for the transversal {1, r}
  const GqdElem& r = *out.rep;
  GqdElem rinv = inv(G, r);
  for (const auto& x : X) {
    if (x.eps == 0) {
      gens.push_back(to_kz(x));
    } else {
      gens.push_back(to_kz(mul(G, x, rinv)));
      gens.push_back(to_kz(mul(G, r, x)));
    }
  }
  out.abelian = false;
  out.part = lattice_canonicalize(G.K, gens);
  return out;
}

bool generates_group(const GqdGroup& G, const std::vector<GqdElem>& X) {
  SubgroupClass c = classify_subgroup(G, X);
  if (c.abelian) return false;
  return c.part.inf_gen && c.part.inf_gen->z == 1 &&
         static_cast<int64_t>(c.part.finite.size()) == G.K.order();
}

}  // namespace gqd
