#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfw/koopman.hpp"
#include "tower_helpers.hpp"

using namespace cfw;
using namespace cfw_test;

TEST_CASE("koopman matrix identity and shift") {
  auto t = z_tower({range1(0, 1), range1(0, 7)}, {pts1({0, 4})});

  auto id = koopman_matrix(t, el1(0), 1);
  CHECK(id.dimension() == 8);
  CHECK(id.is_permutation());
  for (Int i = 0; i < 8; ++i) CHECK(id.image[static_cast<size_t>(i)] == i);

  // g = 3 on F_1 = {0..7}: five atoms map, three leave
  auto k3 = koopman_matrix(t, el1(3), 1);
  CHECK(k3.defect_count == 3);
  Int mapped = 0;
  for (Int v : k3.image)
    if (v >= 0) ++mapped;
  CHECK(mapped == 5);
}

TEST_CASE("empty defect means a genuine permutation") {
  // Z(8) tower: translation is a bijection of the whole group
  auto g = std::make_shared<Group>(GroupDescriptor::cyclic(8));
  std::vector<GroupSet> f;
  std::vector<GroupSet> c{GroupSet::empty(g)};
  std::vector<GroupElement> all;
  for (Int x = 0; x < 8; ++x) all.push_back(GroupElement({x}));
  f.push_back(GroupSet::from_points(g, all));
  f.push_back(GroupSet::from_points(g, all));
  c.push_back(GroupSet::from_points(g, {GroupElement({0}), GroupElement({4})}));
  Tower t(g, std::move(f), std::move(c));
  auto km = koopman_matrix(t, GroupElement({3}), 1);
  CHECK(km.is_permutation());
  // image is a bijection
  std::vector<bool> hit(8, false);
  for (Int v : km.image) {
    REQUIRE(v >= 0);
    CHECK(!hit[static_cast<size_t>(v)]);
    hit[static_cast<size_t>(v)] = true;
  }
}

TEST_CASE("rigidity diagnostic: identity sequence is identically zero") {
  auto t = z_tower({range1(0, 1), range1(0, 7), range1(0, 31)},
                   {pts1({0, 4}), pts1({0, 8, 16, 24})});
  auto c = make_cylinder(t, 0, pts1({0}));
  auto rows = rigidity_diagnostic(t, {el1(0), el1(0)}, {c}, {1, 2});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].max_value == make_rational(0));
  CHECK(rows[1].max_value == make_rational(0));
}

TEST_CASE("mixing diagnostic: the whole space gives zero deviation") {
  auto t = z_tower({range1(0, 1), range1(0, 7)}, {pts1({0, 4})});
  auto whole = make_cylinder(t, 1, range1(0, 7));
  auto rows = mixing_diagnostic(t, {el1(0), el1(2)}, {{whole, whole}}, 1);
  // mu(T_g X cap X) - mu(X)^2 = defect-only deviation; for g = 0 exactly 0
  CHECK(rows[0].per_pair[0] == make_rational(0));
}

TEST_CASE("mixing diagnostic detects full displacement") {
  auto t = z_tower({range1(0, 1), range1(0, 7)}, {pts1({0, 4})});
  auto a = make_cylinder(t, 1, pts1({0, 1}));
  auto b = make_cylinder(t, 1, pts1({4, 5}));
  // T_4 maps A = {0,1} onto B = {4,5}: joint = mu(B), product = mu(A)mu(B)
  auto rows = mixing_diagnostic(t, {el1(4)}, {{a, b}}, 1);
  const Rational mu_a = cylinder_measure(t, a);
  const Rational mu_b = cylinder_measure(t, b);
  CHECK(rows[0].per_pair[0] == mu_b - mu_a * mu_b);
}
