#include <stdexcept>
#include <random>

#include "doctest.h"
#include "gqd/group.hpp"
#include "oracles.hpp"

using namespace gqd;

namespace {

GqdGroup dinf() { return GqdGroup(FiniteAbelianGroup(), {}); }

std::vector<GqdGroup> test_groups() {
  std::vector<GqdGroup> out{dinf()};
  out.emplace_back(FiniteAbelianGroup({2}), KElem{0});
  out.emplace_back(FiniteAbelianGroup({2}), KElem{1});
  out.emplace_back(FiniteAbelianGroup({4}), KElem{0});
  out.emplace_back(FiniteAbelianGroup({4}), KElem{2});
  out.emplace_back(FiniteAbelianGroup({2, 2}), KElem{0, 0});
  out.emplace_back(FiniteAbelianGroup({2, 2}), KElem{1, 0});
  out.emplace_back(FiniteAbelianGroup({2, 2}), KElem{1, 1});
  out.emplace_back(FiniteAbelianGroup({6}), KElem{0});
  out.emplace_back(FiniteAbelianGroup({6}), KElem{3});
  return out;
}

GqdElem E(KElem k, int64_t i, int eps) { return {std::move(k), i, eps}; }

}  // namespace

TEST_CASE("construction rejects beta of order > 2") {
  CHECK_THROWS_AS(GqdGroup(FiniteAbelianGroup({4}), KElem{1}), std::invalid_argument);
  CHECK_NOTHROW(GqdGroup(FiniteAbelianGroup({4}), KElem{2}));
  CHECK(dinf().is_infinite_dihedral());
  CHECK_FALSE(GqdGroup(FiniteAbelianGroup({2}), KElem{0}).is_infinite_dihedral());
}

TEST_CASE("mul examples") {
  GqdGroup D = dinf();
  CHECK(mul(D, gen_b(D), gen_b(D)) == identity(D));
  GqdElem x = E({}, 1, 1), y = E({}, 2, 0);
  CHECK(mul(D, x, y) == E({}, -1, 1));
  Word w = oracle::elem_word(x);
  for (const auto& l : oracle::elem_word(y)) w.push_back(l);
  CHECK(oracle::rewrite_word(D, w) == E({}, -1, 1));

  GqdGroup G(FiniteAbelianGroup({2}), KElem{1});
  CHECK(mul(G, gen_b(G), gen_b(G)) == E({1}, 0, 0));
  CHECK_THROWS(mul(G, E({1, 0}, 0, 0), gen_b(G)));
}

TEST_CASE("inv examples") {
  GqdGroup D = dinf();
  CHECK(inv(D, identity(D)) == identity(D));
  for (int64_t i = -3; i <= 3; ++i) CHECK(inv(D, E({}, i, 1)) == E({}, i, 1));
  GqdGroup G(FiniteAbelianGroup({4}), KElem{2});
  GqdElem x = E({1}, 3, 1);
  CHECK(inv(G, x) == E({3}, 3, 1));
  CHECK(mul(G, x, inv(G, x)) == identity(G));
  CHECK(mul(G, inv(G, x), x) == identity(G));
}

TEST_CASE("normalize_word examples") {
  GqdGroup D = dinf();
  CHECK(normalize_word(D, parse_word(D, "b b'")) == gen_a(D));
  CHECK(normalize_word(D, parse_word(D, "")) == identity(D));
  CHECK(normalize_word(D, parse_word(D, "b' b")) == inv(D, gen_a(D)));
  GqdGroup G(FiniteAbelianGroup({2, 2}), KElem{1, 0});
  CHECK(normalize_word(G, parse_word(G, "k(1,1) a- b-")) == mul(G, E({1, 1}, -1, 0), inv(G, gen_b(G))));
  CHECK(gen_bprime(G) == mul(G, inv(G, gen_b(G)), gen_a(G)));
}

TEST_CASE("parse_word errors") {
  GqdGroup G(FiniteAbelianGroup({2}), KElem{0});
  CHECK_THROWS_AS(parse_word(G, "c"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word(G, "k(1,0)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word(G, "k(x)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word(G, "a--"), std::invalid_argument);
  auto w = parse_word(G, "a b' k(3)-");
  REQUIRE(w.size() == 3);
  CHECK(w[2].k == KElem{1});
  CHECK(w[2].inverse);
  CHECK(parse_word(G, word_to_string(w)) == w);
}

TEST_CASE("normalize_word agrees with the rewriting oracle") {
  std::mt19937_64 rng(3);
  auto groups = test_groups();
  for (int t = 0; t < 10000; ++t) {
    const auto& G = groups[static_cast<size_t>(t) % groups.size()];
    Word w = oracle::random_word(G, rng, 20);
    CHECK(normalize_word(G, w) == oracle::rewrite_word(G, w));
  }
}

TEST_CASE("group axioms") {
  std::mt19937_64 rng(1);
  for (const auto& G : test_groups()) {
    GqdElem e = identity(G);
    for (int t = 0; t < 2000; ++t) {
      GqdElem x = oracle::random_elem(G, rng, 100), y = oracle::random_elem(G, rng, 100),
              z = oracle::random_elem(G, rng, 100);
      CHECK(mul(G, mul(G, x, y), z) == mul(G, x, mul(G, y, z)));
      CHECK(mul(G, x, e) == x);
      CHECK(mul(G, e, x) == x);
      CHECK(mul(G, x, inv(G, x)) == e);
    }
  }
}

TEST_CASE("amalgam normal form examples") {
  GqdGroup D = dinf();
  auto f0 = amalgam_normal_form(D, identity(D));
  CHECK(f0.tail.empty());
  auto fa = amalgam_normal_form(D, gen_a(D));
  CHECK(fa.tail == std::vector<char>{'b', 'p'});
  auto fa2 = amalgam_normal_form(D, power(D, gen_a(D), 2));
  CHECK(fa2.tail == std::vector<char>{'b', 'p', 'b', 'p'});
  CHECK(normalize_word(D, render(fa2)) == power(D, gen_a(D), 2));
}

TEST_CASE("amalgam normal form round-trips, alternates and is unique") {
  std::mt19937_64 rng(9);
  for (const auto& G : test_groups()) {
    for (int t = 0; t < 500; ++t) {
      GqdElem x = oracle::random_elem(G, rng, 12);
      auto f = amalgam_normal_form(G, x);
      CHECK(normalize_word(G, render(f)) == x);
      CHECK(oracle::rewrite_word(G, render(f)) == x);
      for (size_t j = 0; j + 1 < f.tail.size(); ++j) CHECK(f.tail[j] != f.tail[j + 1]);
    }
    // colliding words: w and w * r * r^-1 style padding normalize to the same element
    for (int t = 0; t < 300; ++t) {
      Word w = oracle::random_word(G, rng, 12);
      Word v = w;
      Word pad = oracle::random_word(G, rng, 4);
      for (const auto& l : pad) v.push_back(l);
      for (auto it = pad.rbegin(); it != pad.rend(); ++it) {
        Letter l = *it;
        l.inverse = !l.inverse;
        v.push_back(l);
      }
      GqdElem x = normalize_word(G, w), y = normalize_word(G, v);
      REQUIRE(x == y);
      CHECK(amalgam_normal_form(G, x) == amalgam_normal_form(G, y));
    }
  }
}

TEST_CASE("torsion and order") {
  GqdGroup Z2(FiniteAbelianGroup({2}), KElem{0});
  CHECK(is_torsion(Z2, E({1}, 0, 0)));
  CHECK(is_torsion(Z2, E({0}, 0, 0)));
  CHECK_FALSE(is_torsion(Z2, E({0}, 5, 0)));
  CHECK(is_torsion(Z2, E({1}, 7, 1)));
  CHECK(oracle::brute_order(Z2, E({1}, 7, 1), 8) > 0);
  CHECK(order(Z2, identity(Z2)) == 1);
  GqdGroup G(FiniteAbelianGroup({4}), KElem{2});
  CHECK(order(G, E({1}, 3, 1)) == 4);
  CHECK(mul(G, E({1}, 3, 1), E({1}, 3, 1)) == E({2}, 0, 0));
  CHECK_FALSE(order(G, E({0}, 3, 0)).has_value());
}

TEST_CASE("conjugation inverts K and K<a>") {
  GqdGroup G(FiniteAbelianGroup({4}), KElem{0});
  CHECK(conjugate_in_K(G, identity(G), {1}) == KElem{1});
  CHECK(conjugate_in_K(G, E({0}, 2, 1), {1}) == KElem{3});
  CHECK(conjugate_in_K(G, E({2}, 5, 0), {1}) == KElem{1});
  std::mt19937_64 rng(4);
  for (const auto& H : test_groups())
    for (int t = 0; t < 300; ++t) {
      GqdElem g = oracle::random_elem(H, rng, 10), s = oracle::random_elem(H, rng, 10);
      g.eps = 1;
      s.eps = 0;
      CHECK(mul(H, mul(H, g, s), inv(H, g)) == inv(H, s));
    }
}

TEST_CASE("short cycle identities") {
  GqdGroup D = dinf();
  GqdElem b = gen_b(D), ab = E({}, 1, 1), a2b = E({}, 2, 1);
  CHECK(six_cycle_identity(D, b, ab, a2b));
  CHECK(mul(D, mul(D, b, ab), a2b) == E({}, 1, 1));
  CHECK(six_cycle_identity(D, b, b, b));
  GqdGroup Z2(FiniteAbelianGroup({2}), KElem{1});
  CHECK(six_cycle_identity(Z2, E({1}, 0, 1), E({0}, 1, 1), E({1}, 2, 1)));
  CHECK(four_cycle_identity(D, b, gen_a(D)));
  CHECK(four_cycle_identity(D, b, identity(D)));
  GqdGroup Z4(FiniteAbelianGroup({4}), KElem{2});
  CHECK(four_cycle_identity(Z4, E({1}, 1, 1), E({2}, 3, 0)));
  CHECK_THROWS(six_cycle_identity(D, gen_a(D), b, b));
  CHECK_THROWS(four_cycle_identity(D, gen_a(D), b));

  auto c6 = six_cycle_vertices(Z2, identity(Z2), E({1}, 0, 1), E({0}, 1, 1), E({1}, 2, 1));
  // closing edge of the 6-cycle is s3^-1
  CHECK(mul(Z2, c6[5], inv(Z2, E({1}, 2, 1))) == c6[0]);
  auto c4 = four_cycle_vertices(Z4, identity(Z4), E({1}, 1, 1), E({2}, 3, 0));
  CHECK(mul(Z4, c4[3], E({2}, 3, 0)) == c4[0]);
}

TEST_CASE("classify_subgroup examples") {
  GqdGroup D = dinf();
  auto c1 = classify_subgroup(D, {gen_a(D)});
  CHECK(c1.abelian);
  REQUIRE(c1.part.inf_gen);
  CHECK(c1.part.inf_gen->z == 1);

  auto c2 = classify_subgroup(D, {gen_b(D), gen_bprime(D)});
  CHECK_FALSE(c2.abelian);
  CHECK(c2.part.inf_gen->z == 1);
  CHECK(*c2.rep == gen_b(D));

  auto c3 = classify_subgroup(D, {E({}, 1, 1), E({}, 3, 1)});
  CHECK_FALSE(c3.abelian);
  CHECK(c3.part.inf_gen->z == 2);
  CHECK(*c3.rep == E({}, 1, 1));

  // a generator inside K<a> is kept
  auto c4 = classify_subgroup(D, {gen_a(D), gen_b(D)});
  CHECK(c4.part.inf_gen->z == 1);
  CHECK(generates_group(D, {gen_a(D), gen_b(D)}));
  CHECK_FALSE(generates_group(D, {E({}, 1, 1), E({}, 3, 1)}));
}

TEST_CASE("classify_subgroup matches brute-force closure") {
  std::mt19937_64 rng(12);
  for (const auto& G : test_groups()) {
    for (int t = 0; t < 20; ++t) {
      std::vector<GqdElem> X;
      int n = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < n; ++j) X.push_back(oracle::random_elem(G, rng, 3));
      auto c = classify_subgroup(G, X);
      // closure inside the strip |i| <= 30
      std::set<GqdElem> seen{identity(G)};
      std::vector<GqdElem> frontier{identity(G)};
      while (!frontier.empty()) {
        std::vector<GqdElem> next;
        for (const auto& g : frontier)
          for (const auto& x : X)
            for (const auto& y : {x, inv(G, x)}) {
              GqdElem h = mul(G, g, y);
              if (h.i > 30 || h.i < -30) continue;
              if (seen.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
      }
      for (const auto& g : seen) {
        if (g.i > 10 || g.i < -10 || g.eps) continue;
        CHECK(lattice_contains(G.K, c.part, to_kz(g)));
      }
      for (const auto& k : k_enumerate(G.K))
        for (int64_t i = -10; i <= 10; ++i)
          if (lattice_contains(G.K, c.part, {k, i})) CHECK(seen.count({k, i, 0}) == 1);
    }
  }
}
