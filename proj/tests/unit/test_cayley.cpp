#include <stdexcept>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "gqd/cayley.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace gqd;

namespace {

GqdGroup dinf() { return GqdGroup(FiniteAbelianGroup(), {}); }

GqdElem E(KElem k, int64_t i, int eps) { return {std::move(k), i, eps}; }

}  // namespace

TEST_CASE("make_genset and validate_genset") {
  GqdGroup G = dinf();
  GenSet S = make_genset(G, {E({}, 1, 0), E({}, 0, 1)});
  CHECK(S.size() == 3);
  CHECK(S[0] == E({}, 1, 0));
  CHECK(S[1] == E({}, -1, 0));
  CHECK(S[2] == E({}, 0, 1));
  CHECK(S.inverse_index(G, 0) == 1);
  CHECK(S.inverse_index(G, 2) == 2);
  CHECK_NOTHROW(validate_genset(G, S));
  CHECK(make_genset(G, {identity(G)}).size() == 0);

  GenSet bad;
  bad.gens = {E({}, 1, 0)};
  CHECK_THROWS_AS(validate_genset(G, bad), std::invalid_argument);
  CHECK_THROWS_AS(validate_genset(G, make_genset(G, {E({}, 0, 1), E({}, 2, 1)})), std::invalid_argument);

  GqdGroup z4(FiniteAbelianGroup({4}), {2});
  CHECK_THROWS_AS(validate_genset(z4, make_genset(z4, {E({0}, 0, 1), E({1}, 1, 1)})), std::invalid_argument);
  for (const auto& in : suite::instances()) CHECK_NOTHROW(validate_genset(in.group(), in.genset()));
}

TEST_CASE("build_window") {
  GqdGroup G = dinf();
  GenSet S = make_genset(G, {E({}, 0, 1), E({}, 1, 1), E({}, -1, 1)});
  auto W = build_window(G, S, 2);
  int deg0 = 0;
  for (const auto& [u, v, s] : W.edges)
    if (W.vertices[u] == identity(G)) ++deg0;
  CHECK(deg0 == static_cast<int>(S.size()));

  GqdGroup z2(FiniteAbelianGroup({2}), {0});
  GenSet S2 = make_genset(z2, {E({0}, 0, 1), E({0}, 1, 0), E({1}, 0, 0)});
  CHECK(S2.size() == 4);
  auto W2 = build_window(z2, S2, 6);
  for (const auto& g : W2.vertices) {
    if (W2.dist.at(g) >= 6) continue;
    int deg = 0;
    for (const auto& s : S2.gens) deg += W2.contains(mul(z2, g, s));
    CHECK(deg == 4);
  }
  CHECK_THROWS_AS(build_window(z2, S2, 30, 100), std::length_error);
  CHECK_THROWS(build_window(z2, S2, -1));
}

TEST_CASE("windows are label-correct and monotone") {
  for (const auto& in : suite::instances()) {
    GqdGroup G = in.group();
    GenSet S = in.genset();
    size_t prev = 0;
    for (int r = 0; r <= 6; ++r) {
      auto W = build_window(G, S, r);
      CHECK(W.vertices.size() >= prev);
      prev = W.vertices.size();
      for (const auto& [u, v, s] : W.edges) CHECK(mul(G, W.vertices[u], S[s]) == W.vertices[v]);
      for (const auto& g : W.vertices) CHECK(W.dist.at(g) <= r);
    }
  }
}

TEST_CASE("classify_case examples") {
  GqdGroup G = dinf();
  CHECK(classify_case(G, make_genset(G, {E({}, 0, 1), E({}, 1, 1), E({}, 3, 1)})).kind == CaseTag::Kind::Case1);
  GqdGroup z2(FiniteAbelianGroup({2}), {0});
  auto t = classify_case(z2, make_genset(z2, {E({1}, 0, 0), E({1}, 0, 0), E({0}, 0, 1), E({0}, 1, 1)}));
  CHECK(t.kind == CaseTag::Kind::Case2i);
  CHECK(t.S2.size() == 1);
  CHECK(classify_case(G, make_genset(G, {E({}, 1, 0), E({}, 0, 1)})).kind == CaseTag::Kind::Case2ii);
  CHECK(classify_case(G, make_genset(G, {E({}, 0, 1), E({}, -1, 1)})).kind == CaseTag::Kind::Base);
  for (const auto& in : suite::instances()) {
    auto tag = classify_case(in.group(), in.genset());
    CHECK_MESSAGE(in.expected_case == case_name(tag.kind), in.name);
    CHECK(tag.S1.size() + tag.S2.size() == in.genset().size());
  }
}

TEST_CASE("pivot choice") {
  GqdGroup G = dinf();
  GenSet S = make_genset(G, {E({}, 0, 1), E({}, 1, 1), E({}, 3, 1)});
  auto [s, t] = choose_pivot(G, S);
  CHECK(S[s] == E({}, 0, 1));
  CHECK(S[t] == E({}, 1, 1));

  // exponents {0, 0, 1}: the pivot must be one of the exponent-0 elements
  GqdGroup z2(FiniteAbelianGroup({2}), {0});
  GenSet T = make_genset(z2, {E({0}, 0, 1), E({1}, 0, 1), E({0}, 1, 1)});
  auto cands = pivot_candidates(z2, T);
  REQUIRE_FALSE(cands.empty());
  for (auto [p, c] : cands) {
    CHECK(T[p].i == 0);
    auto rest = without_pair(z2, T, p);
    std::set<int64_t> ex;
    for (int j : rest) ex.insert(T[j].i);
    CHECK(ex.size() >= 2);
    CHECK(c == rest[0]);
  }

  // all exponents equal: no pivot
  GqdGroup z4(FiniteAbelianGroup({4}), {0});
  GenSet U = make_genset(z4, {E({0}, 1, 1), E({1}, 1, 1), E({2}, 1, 1)});
  CHECK(pivot_candidates(z4, U).empty());
  CHECK_THROWS(choose_pivot(z4, U));
  CHECK_THROWS(choose_pivot(G, make_genset(G, {E({}, 1, 0), E({}, 0, 1)})));
}

TEST_CASE("coset_ladder examples") {
  GqdGroup G = dinf();
  GenSet S = make_genset(G, {E({}, 0, 1), E({}, 1, 1), E({}, 3, 1)});
  auto L = coset_ladder(G, S, 0, 1);
  CHECK(L.m == 1);
  CHECK(L.ts == E({}, 1, 0));
  CHECK(L.H_prime == lattice_canonicalize(G.K, {{{}, 2}}));
  CHECK(coset_of(G, L, identity(G)) == std::make_pair<int64_t, int>(0, 0));
  CHECK(coset_of(G, L, L.ts) == std::make_pair<int64_t, int>(1, 0));
  CHECK(coset_of(G, L, L.t).second == 1);

  // H' = K<a> gives m = 0
  GenSet S2 = make_genset(G, {E({}, 0, 1), E({}, 1, 1), E({}, 2, 1)});
  auto L2 = coset_ladder(G, S2, 0, 1);
  CHECK(L2.m == 0);
  CHECK_THROWS(coset_ladder(G, S, 0, 0));
}

TEST_CASE("coset_of partitions radius-8 windows") {
  std::vector<std::pair<GqdGroup, std::vector<GqdElem>>> cases = {
      {dinf(), {E({}, 0, 1), E({}, 1, 1), E({}, 3, 1)}},
      {GqdGroup(FiniteAbelianGroup({2}), {0}), {E({0}, 0, 1), E({0}, 1, 1), E({1}, 1, 1)}},
      {GqdGroup(FiniteAbelianGroup({4}), {0}), {E({0}, 0, 1), E({1}, 1, 1), E({0}, 3, 1)}},
      {dinf(), {E({}, 0, 1), E({}, 2, 1), E({}, 3, 1), E({}, 7, 1)}},
  };
  for (auto& [G, xs] : cases) {
    GenSet S = make_genset(G, xs);
    auto [s, t] = choose_pivot(G, S);
    auto L = coset_ladder(G, S, s, t);
    auto W = build_window(G, S, 8);
    std::map<std::pair<int64_t, int>, std::vector<GqdElem>> classes;
    for (const auto& g : W.vertices) {
      auto c = coset_of(G, L, g);
      CHECK(c.first >= 0);
      CHECK(c.first <= L.m);
      CHECK(c.second == g.eps);
      classes[c].push_back(g);
    }
    CHECK(classes.size() == static_cast<size_t>(2 * (L.m + 1)));
    // oracle: g, h share a class iff g h^-1 lies in H', checked directly
    for (const auto& [c, members] : classes)
      for (size_t j = 1; j < members.size() && j < 30; ++j) {
        GqdElem q = mul(G, members[j], inv(G, members[0]));
        CHECK(q.eps == 0);
        CHECK(lattice_contains(G.K, L.H_prime, to_kz(q)));
      }
    for (auto it = classes.begin(); it != classes.end(); ++it)
      for (auto jt = std::next(it); jt != classes.end(); ++jt) {
        GqdElem q = mul(G, it->second[0], inv(G, jt->second[0]));
        CHECK_FALSE((q.eps == 0 && lattice_contains(G.K, L.H_prime, to_kz(q))));
      }
  }
}

TEST_CASE("ladder products land at their exponent count") {
  std::mt19937_64 rng(3);
  std::vector<std::pair<GqdGroup, std::vector<GqdElem>>> cases = {
      {dinf(), {E({}, 0, 1), E({}, 1, 1), E({}, 3, 1)}},
      {GqdGroup(FiniteAbelianGroup({4}), {0}), {E({0}, 0, 1), E({1}, 1, 1), E({0}, 3, 1)}},
      {GqdGroup(FiniteAbelianGroup({2, 2}), {1, 1}),
       {E({0, 0}, 0, 1), E({0, 0}, 1, 1), E({1, 0}, 1, 1), E({0, 1}, 0, 1)}},
  };
  for (auto& [G, xs] : cases) {
    GenSet S = make_genset(G, xs);
    auto [s, t] = choose_pivot(G, S);
    auto L = coset_ladder(G, S, s, t);
    auto rest = without_pair(G, S, s);
    for (int trial = 0; trial < 1000 / static_cast<int>(cases.size()); ++trial) {
      int n = static_cast<int>(rng() % 6);
      bool trailing = rng() % 2;
      GqdElem g = identity(G);
      for (int j = 0; j < n; ++j) g = mul(G, mul(G, g, S[rest[rng() % rest.size()]]), S[s]);
      if (trailing) g = mul(G, g, S[rest[rng() % rest.size()]]);
      auto c = coset_of(G, L, g);
      CHECK(c.first == n % (L.m + 1));
      CHECK(c.second == (trailing ? 1 : 0));
    }
  }
}

TEST_CASE("modular law on desk-scale subgroups") {
  // L cap (H + K) == H + (L cap K) whenever H <= L
  std::mt19937_64 rng(17);
  const int64_t zmax = 24, zcheck = 6;
  for (auto f : std::vector<std::vector<int64_t>>{{2}, {4}, {2, 2}}) {
    FiniteAbelianGroup A(f);
    auto rnd = [&] {
      KZElem x{k_zero(A), static_cast<int64_t>(rng() % 5) - 2};
      for (size_t j = 0; j < f.size(); ++j) x.k[j] = static_cast<int64_t>(rng() % static_cast<uint64_t>(f[j]));
      return x;
    };
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<KZElem> h{rnd()}, k{rnd(), rnd()}, l = h;
      l.push_back(rnd());
      auto Lset = oracle::brute_closure(A, l, zmax);
      auto Kset = oracle::brute_closure(A, k, zmax);
      std::vector<KZElem> hk = h;
      hk.insert(hk.end(), k.begin(), k.end());
      auto HK = oracle::brute_closure(A, hk, zmax);
      std::vector<KZElem> hlk = h;
      for (const auto& x : Kset)
        if (Lset.count(x) && x.z >= -zmax / 2 && x.z <= zmax / 2) hlk.push_back(x);
      auto rhs = oracle::brute_closure(A, hlk, zmax);
      for (const auto& x : HK) {
        if (x.z < -zcheck || x.z > zcheck) continue;
        CHECK(static_cast<bool>(Lset.count(x)) == static_cast<bool>(rhs.count(x)));
      }
    }
  }
}
