#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfw/diamond.hpp"
#include "cfw/replab.hpp"

using namespace cfw;

namespace {

RepGroup z1() { return RepGroup{{0}}; }

Character chi(std::initializer_list<Rational> rs) { return Character(rs); }

// Representation of Z with prescribed isotypic dimensions at distinct
// root-of-unity characters k/denom.
ExactRep rep_with_dims(const std::vector<Int>& dims, Int denom, Int offset) {
  std::vector<std::pair<Character, Int>> parts;
  Int k = offset;
  for (Int d : dims) {
    parts.push_back({chi({make_rational(k, denom)}), d});
    ++k;
  }
  return make_rep(z1(), parts);
}

std::set<Int> to_set(std::initializer_list<Int> xs) { return std::set<Int>(xs); }

}  // namespace

TEST_CASE("multiplicity set of diagonal data") {
  // diag(l, l, m) with l != m -> {1, 2}
  auto r = rep_with_dims({2, 1}, 7, 1);
  CHECK(multiplicity_set(r) == to_set({1, 2}));

  // lambda I_p -> {p}
  auto hom = rep_with_dims({5}, 7, 2);
  CHECK(multiplicity_set(hom) == to_set({5}));

  // prescribed isotypic dims {1,2,3}
  auto mix = rep_with_dims({1, 2, 3}, 11, 1);
  CHECK(multiplicity_set(mix) == to_set({1, 2, 3}));
}

TEST_CASE("character validation") {
  // character of order-q generator must be a q-th root of unity
  RepGroup zq{{4}};
  CHECK_THROWS_AS(make_rep(zq, {{chi({make_rational(1, 3)}), 1}}), RepError);
  CHECK_NOTHROW(make_rep(zq, {{chi({make_rational(1, 4)}), 1}}));
  CHECK_THROWS_AS(make_rep(z1(), {{chi({make_rational(1, 3)}), 0}}), RepError);
}

TEST_CASE("tensor and direct sum dimensions") {
  auto u = rep_with_dims({2}, 7, 1);   // dim 2
  auto v = rep_with_dims({3}, 11, 1);  // dim 3
  CHECK(tensor(u, v).dimension() == 6);
  CHECK(direct_sum(u, v).dimension() == 5);

  // disjoint-spectra direct sum: M(diag(l,l) + diag(m)) = {1,2}
  auto a = rep_with_dims({2}, 7, 1);
  auto b = rep_with_dims({1}, 7, 2);
  REQUIRE(spectrally_disjoint(a, b));
  CHECK(multiplicity_set(direct_sum(a, b)) == to_set({1, 2}));

  // lambda I_2 (x) mu I_3 has a single character of dimension 6
  CHECK(multiplicity_set(tensor(u, v)) == to_set({6}));
}

TEST_CASE("strong disjointness") {
  // spec(U) = {1, i}, spec(V) = {generic theta}: products distinct
  auto u = make_rep(z1(), {{chi({make_rational(0)}), 1}, {chi({make_rational(1, 4)}), 1}});
  auto v = make_rep(z1(), {{chi({make_rational(1, 97)}), 1}});
  CHECK(strongly_disjoint(u, v));  // one-dimensional factor: always true

  // U = V = diag(1, -1): 1*1 = (-1)(-1) collide
  auto pm = make_rep(z1(), {{chi({make_rational(0)}), 1}, {chi({make_rational(1, 2)}), 1}});
  CHECK(!strongly_disjoint(pm, pm));
}

TEST_CASE("spectral disjointness") {
  auto one = make_rep(z1(), {{chi({make_rational(0)}), 1}});
  auto minus = make_rep(z1(), {{chi({make_rational(1, 2)}), 1}});
  CHECK(spectrally_disjoint(one, minus));
  auto l2 = rep_with_dims({2}, 9, 4);
  auto l3 = rep_with_dims({3}, 9, 4);
  CHECK(!spectrally_disjoint(l2, l3));
}

TEST_CASE("tensor multiplicity calculus") {
  auto u = rep_with_dims({2}, 101, 1);
  auto v = rep_with_dims({3}, 103, 1);
  auto rep1 = tensor_multiplicity_check(u, v);
  CHECK(rep1.hypothesis);
  CHECK(rep1.match);
  CHECK(rep1.computed == to_set({6}));

  auto u1 = rep_with_dims({1}, 101, 5);
  auto v2 = rep_with_dims({3, 5}, 103, 7);
  auto rep2 = tensor_multiplicity_check(u1, v2);
  CHECK(rep2.hypothesis);
  CHECK(rep2.computed == multiplicity_set(v2));

  auto u12 = rep_with_dims({1, 2}, 101, 9);
  auto v3 = rep_with_dims({3}, 103, 11);
  auto rep3 = tensor_multiplicity_check(u12, v3);
  CHECK(rep3.hypothesis);
  CHECK(rep3.computed == to_set({3, 6}));
}

TEST_CASE("product koopman realizes the diamond arithmetic") {
  auto s = rep_with_dims({2}, 109, 1);
  auto t = rep_with_dims({3}, 113, 1);
  auto rep = product_koopman(s, t);
  CHECK(rep.blocks_disjoint);
  CHECK(rep.match);
  CHECK(rep.computed == to_set({2, 3, 6}));

  // {1} <> {1} = {1}
  auto s1 = rep_with_dims({1}, 109, 2);
  auto t1 = rep_with_dims({1}, 113, 2);
  auto rep11 = product_koopman(s1, t1);
  CHECK(rep11.blocks_disjoint);
  CHECK(rep11.computed == to_set({1}));

  // iterated product against the diamond module: ({2} <> {3}) <> {5}
  auto five = rep_with_dims({5}, 127, 1);
  auto rep235 = product_koopman(rep.rep, five);
  CHECK(rep235.blocks_disjoint);
  CHECK(rep235.match);
  auto expected = generate({2, 3, 5}, 1000);
  std::set<Int> expected_set(expected.values.begin(), expected.values.end());
  CHECK(rep235.computed == expected_set);
}

TEST_CASE("symmetric powers and the truncated exponential") {
  auto r2 = make_rep(z1(), {{chi({make_rational(1, 11)}), 1},
                            {chi({make_rational(2, 11)}), 1}});
  CHECK(sym_power(r2, 2).dimension() == 3);
  CHECK(exp_truncated(r2, 2).dimension() == 6);  // 1 + 2 + 3
  CHECK(sym_power(r2, 0).dimension() == 1);
  CHECK(multiplicity_set(sym_power(r2, 0)) == to_set({1}));

  // eigenvalues of sym^2(diag(l, m)) are l^2, lm, m^2
  auto s2 = sym_power(r2, 2);
  std::set<Character> expect = {chi({make_rational(2, 11)}),
                                chi({make_rational(3, 11)}),
                                chi({make_rational(4, 11)})};
  auto spec = s2.spectrum();
  CHECK(std::set<Character>(spec.begin(), spec.end()) == expect);

  CHECK(exp_truncated_dimension(2, 2) == 6);
  CHECK(exp_truncated_dimension(4, 3) == BigInt(1 + 4 + 10 + 20));
  for (Int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 3; ++n) {
      auto rd = rep_with_dims(std::vector<Int>(static_cast<size_t>(d), 1), 131, 1);
      CHECK(BigInt(exp_truncated(rd, n).dimension()) == exp_truncated_dimension(d, n));
    }
}

TEST_CASE("numeric oracle matches the exact path") {
  auto r = rep_with_dims({1, 2, 3}, 89, 3);
  auto m = materialize(r, 12345);
  CHECK(check_unitary_commuting(m, 1e-9));
  CHECK(multiplicity_set_numeric(m, 1e-6) == multiplicity_set(r));
}

TEST_CASE("multiplicity set is invariant under unitary conjugation") {
  auto r = rep_with_dims({2, 2, 1}, 97, 5);
  for (unsigned seed : {1u, 2u, 3u}) {
    auto m = materialize(r, seed);
    CHECK(multiplicity_set_numeric(m, 1e-6) == multiplicity_set(r));
  }
}

TEST_CASE("randomized union and product laws under disjointness") {
  std::mt19937_64 rng(2025);
  const Int prime = 100003;
  for (int trial = 0; trial < 60; ++trial) {
    // draw distinct exponents for two representations
    std::set<Int> used;
    auto draw = [&]() {
      Int k;
      do {
        k = 1 + static_cast<Int>(rng() % (prime - 1));
      } while (!used.insert(k).second);
      return k;
    };
    std::vector<std::pair<Character, Int>> pu, pv;
    const int nu = 1 + static_cast<int>(rng() % 3);
    const int nv = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nu; ++i)
      pu.push_back({chi({make_rational(draw(), prime)}), 1 + static_cast<Int>(rng() % 4)});
    for (int i = 0; i < nv; ++i)
      pv.push_back({chi({make_rational(draw(), prime)}), 1 + static_cast<Int>(rng() % 4)});
    auto u = make_rep(z1(), pu);
    auto v = make_rep(z1(), pv);
    REQUIRE(spectrally_disjoint(u, v));
    // union law
    std::set<Int> expected = multiplicity_set(u);
    for (Int x : multiplicity_set(v)) expected.insert(x);
    CHECK(multiplicity_set(direct_sum(u, v)) == expected);
    // product law under strong disjointness
    if (strongly_disjoint(u, v)) {
      auto rep = tensor_multiplicity_check(u, v);
      CHECK(rep.match);
    }
  }
}
