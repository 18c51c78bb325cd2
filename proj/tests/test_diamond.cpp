#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfw/diamond.hpp"

using namespace cfw;

TEST_CASE("diamond basics") {
  CHECK(diamond(MultSet::of({2}), MultSet::of({3})).values == std::vector<Int>{2, 3, 6});
  CHECK(diamond(MultSet::of({1}), MultSet::of({2})).values == std::vector<Int>{1, 2});
  CHECK(diamond(MultSet::of({2, 3, 6}), MultSet::of({5})).values ==
        std::vector<Int>{2, 3, 5, 6, 10, 15, 30});
}

TEST_CASE("generate folds singletons under a cap") {
  CHECK(generate({2, 3, 5}, 100).values ==
        std::vector<Int>{2, 3, 5, 6, 10, 15, 30});
  CHECK(generate({2, 2}, 100).values == std::vector<Int>{2, 4});
  CHECK(generate({1}, 10).values == std::vector<Int>{1});
  CHECK(generate({2, 3}, 5).values == std::vector<Int>{2, 3});  // 6 capped away
  CHECK(generate({2, 3}, 5).cap == 5);
  CHECK_THROWS_AS(generate({7}, 5), DiamondError);
}

TEST_CASE("factor recovers singleton decompositions") {
  auto f = factor(MultSet::of({2, 3, 6}));
  REQUIRE(f.size() == 1);
  CHECK(f[0] == std::vector<Int>{2, 3});

  auto f2 = factor(MultSet::of({2}));
  REQUIRE(f2.size() == 1);
  CHECK(f2[0] == std::vector<Int>{2});

  CHECK(factor(MultSet::of({2, 5})).empty());  // 10 missing

  auto f3 = factor(MultSet::of({1}));
  REQUIRE(f3.size() == 1);
  CHECK(f3[0] == std::vector<Int>{1});
}

TEST_CASE("subsemigroup check") {
  CHECK(is_mult_subsemigroup(MultSet::of({2, 4, 8, 16}), 16));
  CHECK(!is_mult_subsemigroup(MultSet::of({2, 3}), 10));
  CHECK(is_mult_subsemigroup(MultSet::of({1}), 100));
}

TEST_CASE("diamond is commutative and associative") {
  std::mt19937_64 rng(4242);
  auto random_set = [&]() {
    std::vector<Int> v;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) v.push_back(1 + static_cast<Int>(rng() % 40));
    return MultSet::of(std::move(v));
  };
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = random_set();
    auto b = random_set();
    auto c = random_set();
    CHECK(diamond(a, b) == diamond(b, a));
    CHECK(diamond(diamond(a, b), c) == diamond(a, diamond(b, c)));
  }
}

TEST_CASE("generate splits across concatenation") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Int> ps, qs;
    const int np = 1 + static_cast<int>(rng() % 3);
    const int nq = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < np; ++i) ps.push_back(1 + static_cast<Int>(rng() % 9));
    for (int i = 0; i < nq; ++i) qs.push_back(1 + static_cast<Int>(rng() % 9));
    const Int cap = 200;
    std::vector<Int> all = ps;
    all.insert(all.end(), qs.begin(), qs.end());
    CHECK(generate(all, cap) == diamond(generate(ps, cap), generate(qs, cap)));
  }
}

TEST_CASE("factor round-trips through generate") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Int> ps;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) ps.push_back(2 + static_cast<Int>(rng() % 6));
    std::sort(ps.begin(), ps.end());
    // cap big enough to be exact
    MultSet target = generate(ps, 1000000);
    target.cap.reset();
    auto factorizations = factor(target);
    REQUIRE(!factorizations.empty());
    bool found = false;
    for (const auto& f : factorizations) {
      MultSet again = generate(f, 1000000);
      again.cap.reset();
      CHECK(again.values == target.values);
      if (f == ps) found = true;
    }
    CHECK(found);
  }
}
