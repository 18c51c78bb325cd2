#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfw/constructions.hpp"
#include "tower_helpers.hpp"

using namespace cfw;
using namespace cfw_test;

namespace {

GroupElement el(std::initializer_list<Int> c) { return GroupElement(std::vector<Int>(c)); }

std::vector<GroupElement> seq1(std::initializer_list<Int> xs) {
  std::vector<GroupElement> out;
  for (Int x : xs) out.push_back(el({x}));
  return out;
}

}  // namespace

TEST_CASE("aux tower p=2: counts and validation") {
  auto t = aux_tower_zp(2, 3);
  // F_1 = {-1,0,1}^2 x Z(2): 18 elements; C_1 = {-1,0,1}^2 x {0}: 9 elements
  CHECK(t.level_set(1).cardinality() == 18);
  CHECK(t.choice_set(1).cardinality() == 9);
  auto rep = validate_tower(t);
  CHECK(rep.all_pass());
  for (const auto& f : rep.measure.factors) CHECK(f == make_rational(1));
  CHECK(rep.measure.verdict == MeasureVerdict::FiniteType);
  // normalization makes the truncated space a probability space
  auto whole = make_cylinder(t, 0, t.level_set(0).enumerate());
  CHECK(cylinder_measure(t, whole) == make_rational(1));
}

TEST_CASE("aux tower p=3 validates with unit factors") {
  auto t = aux_tower_zp(3, 3);
  auto rep = validate_tower(t);
  CHECK(rep.all_pass());
  for (const auto& f : rep.measure.factors) CHECK(f == make_rational(1));
}

TEST_CASE("aux J-tower for J = Z(2)^sum") {
  auto j = GroupDescriptor::cyclic_sum(2, 4);
  auto t = aux_tower_j(j, 2, 4);
  // F_1 = (Z(2)^1 + 0...)^2 x Z(2): 2^2 * 2 = 8 elements
  CHECK(t.level_set(1).cardinality() == 8);
  auto rep = validate_tower(t);
  CHECK(rep.all_pass());
  for (const auto& f : rep.measure.factors) CHECK(f == make_rational(1));

  // J = Z falls back to the 3-adic tower
  auto tz = aux_tower_j(GroupDescriptor::free_abelian(1), 2, 2);
  CHECK(tz.level_set(1).cardinality() == 18);

  // support bound must cover the depth
  CHECK_THROWS_AS(aux_tower_j(GroupDescriptor::cyclic_sum(2, 2), 2, 4),
                  ConstructionError);
}

TEST_CASE("lattice rigid tower: h and ratio certificates") {
  auto lat = std::make_shared<Group>(GroupDescriptor::lattice_rm(1, make_rational(1)));
  RigidPlan plan;
  plan.alphas = {make_rational(1, 2)};
  auto res = rigid_tower_rm(lat, seq1({4, 40}), plan, 1);
  REQUIRE(res.certificates.size() == 1);
  // h = floor((40-4)/8) = 4, ratio 2h/(2h+1) = 8/9
  CHECK(res.certificates[0].h == 4);
  CHECK(res.certificates[0].rigidity_ratio == make_rational(8, 9));
  CHECK(res.certificates[0].cffin_factor < res.certificates[0].cffin_bound);
  CHECK(validate_tower(res.tower).all_pass());
}

TEST_CASE("lattice rigid tower in rank 2 with geometric alphas") {
  auto lat = std::make_shared<Group>(GroupDescriptor::lattice_rm(2, make_rational(1, 2)));
  RigidPlan plan;
  plan.alphas = {make_rational(1, 2), make_rational(1, 4), make_rational(1, 8)};
  std::vector<GroupElement> gs = {el({1000, 3}), el({7000, 5}), el({84000, 7}),
                                  el({1680000, 9})};
  auto res = rigid_tower_rm(lat, gs, plan, 3);
  REQUIRE(res.certificates.size() == 3);
  for (int n = 0; n < 3; ++n) {
    const auto& cert = res.certificates[static_cast<size_t>(n)];
    CHECK(cert.cffin_factor < cert.cffin_bound);
    CHECK(cert.rigidity_ratio == make_rational(2 * cert.h, 2 * cert.h + 1));
    CHECK(Rational(2 * cert.h + 1) > 2 / plan.alphas[static_cast<size_t>(n)]);
  }
  CHECK(validate_tower(res.tower).all_pass());

  // the level-n diagnostic: one-point cylinders refined one level satisfy
  // the proof's 2/(2h+1) bound with equality
  for (int n = 1; n <= 3; ++n) {
    const auto& cert = res.certificates[static_cast<size_t>(n - 1)];
    auto base_pt = res.tower.level_set(n - 1).point_at(BigInt(0));
    auto c = make_cylinder(res.tower, n - 1, {base_pt});
    const Rational sd = symdiff_measure(
        res.tower, res.rigidity_elements[static_cast<size_t>(n - 1)], c, n);
    const Rational mu = cylinder_measure(res.tower, c);
    CHECK(sd == 2 * mu / Rational(2 * cert.h + 1));
  }
}

TEST_CASE("lattice construction rejects unusable input") {
  auto lat = std::make_shared<Group>(GroupDescriptor::lattice_rm(1, make_rational(1)));
  RigidPlan plan;
  plan.alphas = {make_rational(1, 2), make_rational(1, 4)};
  CHECK_THROWS_AS(rigid_tower_rm(lat, seq1({4, 40}), plan, 2), ConstructionError);
  CHECK_THROWS_AS(rigid_tower_rm(lat, seq1({0, 0}), plan, 1), ConstructionError);
}

TEST_CASE("classify_good: the three cases and rejection") {
  auto z = std::make_shared<Group>(GroupDescriptor::free_abelian(1));
  auto c1 = classify_good(seq1({2, 4, 8, 16, 32}), z, 1000);
  CHECK(c1.kind == GoodCase::CyclicSubgroup);
  REQUIRE(c1.generator_witness.has_value());
  CHECK(*c1.generator_witness == el({1}));

  auto mixed = std::make_shared<Group>(GroupDescriptor::direct_sum(
      {GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(4), GroupDescriptor::cyclic(8),
       GroupDescriptor::cyclic(16)}));
  auto c2 = classify_good({el({1, 0, 0, 0}), el({0, 1, 0, 0}), el({0, 0, 1, 0}),
                           el({0, 0, 0, 1})},
                          mixed, 1000);
  CHECK(c2.kind == GoodCase::UnboundedOrders);
  REQUIRE(c2.orders.size() == 4);
  CHECK(*c2.orders[0] == 2);
  CHECK(*c2.orders[3] == 16);

  auto z3s = std::make_shared<Group>(GroupDescriptor::cyclic_sum(3, 5));
  std::vector<GroupElement> gens;
  for (int i = 0; i < 5; ++i) {
    std::vector<Int> v(5, 0);
    v[static_cast<size_t>(i)] = 1;
    gens.emplace_back(std::move(v));
  }
  auto c3 = classify_good(gens, z3s, 1000);
  CHECK(c3.kind == GoodCase::BoundedIndependent);

  auto z2s = std::make_shared<Group>(GroupDescriptor::cyclic_sum(2, 2));
  auto cr = classify_good({el({1, 0}), el({0, 1}), el({1, 1})}, z2s, 1000);
  CHECK(cr.kind == GoodCase::Rejected);
}

TEST_CASE("discrete rigid tower: progression case over Z") {
  auto z = std::make_shared<Group>(GroupDescriptor::free_abelian(1));
  RigidPlan plan;
  plan.h_seq = {3, 4, 5, 6};
  DiscreteTowerOptions opts;
  auto res = rigid_tower_discrete(seq1({5, 25, 125, 625, 3125, 15625, 78125}), z,
                                  z->identity(), plan, 1, opts);
  REQUIRE(res.certificates.size() == 1);
  CHECK(res.certificates[0].rigidity_ratio == make_rational(3, 4));
  CHECK(res.tower.choice_set(1).enumerate_sorted() ==
        std::vector<GroupElement>{el({0}), el({5}), el({10}), el({15})});
  CHECK(res.certificates[0].independent);
  CHECK(res.certificates[0].growth_factor >= make_rational(2));
}

TEST_CASE("discrete rigid tower: subgroup case over Z(7)") {
  auto z7 = std::make_shared<Group>(GroupDescriptor::direct_sum(
      {GroupDescriptor::cyclic(7), GroupDescriptor::cyclic(11),
       GroupDescriptor::cyclic(13), GroupDescriptor::cyclic(17)}));
  // orders 7, 11, 13, 17 rise strictly; ord(3 in Z(7)) = 7 <= h = 10 forces
  // the full-subgroup choice at level 1
  std::vector<GroupElement> gs = {el({3, 0, 0, 0}), el({0, 1, 0, 0}), el({0, 0, 1, 0}),
                                  el({0, 0, 0, 1})};
  RigidPlan plan;
  plan.h_seq = {10, 11};
  auto res = rigid_tower_discrete(gs, z7, z7->identity(), plan, 1);
  REQUIRE(res.certificates.size() == 1);
  CHECK(res.certificates[0].subgroup_case);
  CHECK(res.certificates[0].rigidity_ratio == make_rational(1));
  CHECK(res.tower.choice_set(1).cardinality() == 7);  // <3> = Z(7)
}

TEST_CASE("case-1 selection skips everything inside F - F") {
  auto z = std::make_shared<Group>(GroupDescriptor::free_abelian(1));
  RigidPlan plan;
  plan.h_seq = {1, 2};
  DiscreteTowerOptions opts;
  opts.f0 = range1(-3, 3);  // F_0 - F_0 = {-6..6}
  auto res = rigid_tower_discrete(seq1({2, 5, 9, 14, 28, 56, 112, 224}), z,
                                  z->identity(), plan, 1, opts);
  REQUIRE(res.subsequence.size() == 1);
  // 2 and 5 lie inside {-6..6}; the first usable element is 9 at index 2
  CHECK(res.subsequence[0] == 2);
}

TEST_CASE("discrete tower with nonzero target d decreases the diagnostic") {
  auto z = std::make_shared<Group>(GroupDescriptor::free_abelian(1));
  RigidPlan plan;
  plan.h_seq = {2, 3, 4, 5};
  DiscreteTowerOptions opts;
  opts.f0 = range1(0, 4);
  auto res = rigid_tower_discrete(seq1({3, 9, 27, 81, 243, 729, 2187, 6561, 19683,
                                        59049, 177147, 531441}),
                                  z, el({1}), plan, 4, opts);
  REQUIRE(res.certificates.size() == 4);
  for (const auto& cert : res.certificates) {
    CHECK(cert.independent);
    CHECK(cert.rigidity_ratio >= make_rational(cert.h, cert.h + 1));
    CHECK(cert.growth_factor >= make_rational(2));
  }
  CHECK(validate_tower(res.tower).all_pass());

  auto c = make_cylinder(res.tower, 0, {el({0})});
  Rational prev;
  for (int n = 1; n <= 4; ++n) {
    const auto& u = res.rigidity_elements[static_cast<size_t>(n - 1)];
    const Rational sd = symdiff_measure(res.tower, u, c, n);
    CHECK(sd <= 2 * cylinder_measure(res.tower, c) /
                    Rational(res.certificates[static_cast<size_t>(n - 1)].h + 1));
    if (n > 1) CHECK(sd < prev);
    prev = sd;
  }
}

TEST_CASE("discrete tower over a pure torsion group pads with support balls") {
  auto z3s = std::make_shared<Group>(GroupDescriptor::cyclic_sum(3, 24));
  std::vector<GroupElement> gens;
  for (int i = 0; i < 24; ++i) {
    std::vector<Int> v(24, 0);
    v[static_cast<size_t>(i)] = 1;
    gens.emplace_back(std::move(v));
  }
  RigidPlan plan;
  plan.h_seq = {1, 2, 3, 4};
  auto res = rigid_tower_discrete(gens, z3s, z3s->identity(), plan, 3);
  CHECK(res.classification.kind == GoodCase::BoundedIndependent);
  for (const auto& cert : res.certificates) {
    CHECK(cert.growth_factor >= make_rational(2));
    CHECK(cert.independent);
  }
  CHECK(validate_tower(res.tower).all_pass());
}

TEST_CASE("insufficient sequences fail with a named level") {
  auto z = std::make_shared<Group>(GroupDescriptor::free_abelian(1));
  RigidPlan plan;
  plan.h_seq = {1, 2, 3, 4, 5, 6, 7, 8};
  try {
    rigid_tower_discrete(seq1({2, 4, 8}), z, z->identity(), plan, 8);
    FAIL("expected ConstructionError");
  } catch (const ConstructionError& e) {
    CHECK(std::string(e.what()).find("insufficient sequence") != std::string::npos);
  }
}
