#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tower_helpers.hpp"

using namespace cfw;
using namespace cfw_test;

TEST_CASE("validation flags (CF4) violations") {
  // F_0 = {0..5}, C_1 = {0,3}: translates {0..5} and {3..8} overlap.
  auto t = z_tower({range1(0, 5), range1(0, 8)}, {pts1({0, 3})});
  auto rep = validate_tower(t);
  CHECK(rep.levels.size() == 1);
  CHECK(rep.levels[0].cf2);
  CHECK_FALSE(rep.levels[0].cf4);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("validation measures the (CFfin) factor") {
  // F_0 = {0,1}, C_1 = {0,4}, F_1 = {0..7}: factor 8/(2*2) = 2.
  auto t = z_tower({range1(0, 1), range1(0, 7)}, {pts1({0, 4})});
  auto rep = validate_tower(t);
  CHECK(rep.levels[0].cf2);
  CHECK(rep.levels[0].cf3);
  CHECK(rep.levels[0].cf4);
  CHECK(rep.levels[0].cffin_factor == make_rational(2));
  CHECK(rep.measure.verdict == MeasureVerdict::UndecidedAtDepth);
}

TEST_CASE("empty F_n is a structural error") {
  auto g = std::make_shared<Group>(GroupDescriptor::free_abelian(1));
  std::vector<GroupSet> f;
  f.push_back(GroupSet::empty(g));
  std::vector<GroupSet> c;
  c.push_back(GroupSet::empty(g));
  Tower t(g, std::move(f), std::move(c));
  CHECK_THROWS_AS(validate_tower(t), TowerError);
}

TEST_CASE("folner ratios are reported per probe and level") {
  auto t = z_tower({range1(0, 1), range1(0, 7)}, {pts1({0, 2})});
  auto rep = validate_tower(t, {el1(1)});
  REQUIRE(rep.folner.size() == 1);
  REQUIRE(rep.folner[0].ratios.size() == 2);
  // lambda(1+F_1 symdiff F_1)/lambda(F_1) = 2/8
  CHECK(rep.folner[0].ratios[1] == make_rational(1, 4));
}

TEST_CASE("cylinder measure and refinement identities") {
  // Valid finite tower: F_0={0,1}, C_1={0,4}, F_1={0..7}, C_2={0,8}, F_2={0..15}.
  auto t = z_tower({range1(0, 1), range1(0, 7), range1(0, 15)},
                   {pts1({0, 4}), pts1({0, 8})});
  CHECK(validate_tower(t).all_pass());

  auto whole = make_cylinder(t, 0, range1(0, 1));
  // factors are 2 and 1, so [F_0]_0 fills half of the truncated space
  CHECK(cylinder_measure(t, whole) == make_rational(1, 2));

  auto c = make_cylinder(t, 0, pts1({0}));
  const Rational m0 = cylinder_measure(t, c);
  for (int lvl = 0; lvl <= 2; ++lvl) {
    auto r = refine(t, c, lvl);
    CHECK(cylinder_measure(t, r) == m0);
  }
  auto r1 = refine(t, c, 1);
  CHECK(r1.base == pts1({0, 4}));
  CHECK(cylinder_measure(t, CylinderSet{0, {}}) == make_rational(0));
  auto single = make_cylinder(t, 1, pts1({4}));
  CHECK(cylinder_measure(t, single) == m0 / 2);
  CHECK_THROWS_AS(make_cylinder(t, 0, pts1({17})), TowerError);
  CHECK_THROWS_AS(refine(t, c, 3), TowerError);
}

TEST_CASE("act splits base and defect") {
  auto t = z_tower({range1(0, 1), range1(0, 7)}, {pts1({0, 4})});
  auto c = make_cylinder(t, 1, pts1({0, 4}));

  auto idres = act(t, GroupElement({0}), c);
  CHECK(idres.translated.base == c.base);
  CHECK(idres.defect.base.empty());

  auto r3 = act(t, el1(3), c);
  CHECK(r3.translated.base == pts1({3, 7}));
  CHECK(r3.defect.base.empty());
  CHECK(cylinder_measure(t, r3.translated) == cylinder_measure(t, c));

  auto r5 = act(t, el1(5), c);
  CHECK(r5.translated.base == pts1({5}));
  CHECK(r5.defect.base == pts1({4}));
}

TEST_CASE("symdiff measure basics") {
  auto t = z_tower({range1(0, 1), range1(0, 7), range1(0, 15)},
                   {pts1({0, 4}), pts1({0, 8})});
  auto c = make_cylinder(t, 0, pts1({0}));
  CHECK(symdiff_measure(t, GroupElement({0}), c, 2) == make_rational(0));
  CHECK_THROWS_AS(symdiff_measure(t, el1(1), CylinderSet{1, pts1({0})}, 0), TowerError);
}

TEST_CASE("symdiff agrees with the exhaustive atom oracle") {
  std::mt19937_64 rng(99);
  auto t = z_tower({range1(0, 1), range1(0, 7), range1(0, 31)},
                   {pts1({0, 4}), pts1({0, 8, 16, 24})});
  REQUIRE(validate_tower(t).all_pass());
  for (int trial = 0; trial < 60; ++trial) {
    const Int g = static_cast<Int>(rng() % 40) - 20;
    std::vector<GroupElement> base;
    for (Int x = 0; x <= 1; ++x)
      if (rng() % 2) base.push_back(el1(x));
    if (base.empty()) base.push_back(el1(0));
    auto c = make_cylinder(t, 0, base);
    const int work = 1 + static_cast<int>(rng() % 2);
    CHECK(symdiff_measure(t, el1(g), c, work) == brute_symdiff(t, el1(g), c, work));
  }
}

TEST_CASE("deeper work level does not increase the bound for inside shifts") {
  auto t = z_tower({range1(0, 1), range1(0, 7), range1(0, 31)},
                   {pts1({0, 4}), pts1({0, 8, 16, 24})});
  auto c = make_cylinder(t, 0, pts1({0}));
  const Rational d1 = symdiff_measure(t, el1(1), c, 1);
  const Rational d2 = symdiff_measure(t, el1(1), c, 2);
  CHECK(d2 <= d1);
}

TEST_CASE("product towers multiply cylinder measures and validate componentwise") {
  auto t1 = z_tower({range1(0, 1), range1(0, 7)}, {pts1({0, 4})});
  auto t2 = z_tower({range1(0, 2), range1(0, 8)}, {pts1({0, 3, 6})});
  REQUIRE(validate_tower(t1).all_pass());
  REQUIRE(validate_tower(t2).all_pass());

  auto p = product_tower(t1, t2);
  CHECK(p.group().slots() == 2);
  CHECK(p.choice_set(1).cardinality() == 6);
  CHECK(validate_tower(p).all_pass());

  auto c1 = make_cylinder(t1, 0, pts1({0}));
  auto c2 = make_cylinder(t2, 0, pts1({1}));
  auto cp = make_cylinder(p, 0, {GroupElement({0, 1})});
  CHECK(cylinder_measure(p, cp) == cylinder_measure(t1, c1) * cylinder_measure(t2, c2));

  auto t3 = z_tower({range1(0, 1), range1(0, 7), range1(0, 15)},
                    {pts1({0, 4}), pts1({0, 8})});
  CHECK_THROWS_AS(product_tower(t1, t3), TowerError);

  auto bad = z_tower({range1(0, 5), range1(0, 8)}, {pts1({0, 3})});
  auto pbad = product_tower(t1, bad);
  CHECK_FALSE(validate_tower(pbad).all_pass());
}

TEST_CASE("additivity of cylinder measure over C-translates") {
  auto t = z_tower({range1(0, 1), range1(0, 7), range1(0, 31)},
                   {pts1({0, 4}), pts1({0, 8, 16, 24})});
  auto c = make_cylinder(t, 0, pts1({0, 1}));
  Rational total = 0;
  for (const auto& ce : t.choice_set(1).enumerate()) {
    std::vector<GroupElement> shifted;
    for (const auto& b : c.base) shifted.push_back(t.group().op(b, ce));
    total += cylinder_measure(t, make_cylinder(t, 1, shifted));
  }
  CHECK(total == cylinder_measure(t, c));
}
