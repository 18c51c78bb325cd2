#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "cfw/groupset.hpp"

using namespace cfw;

namespace {

GroupElement el(std::initializer_list<Int> c) { return GroupElement(std::vector<Int>(c)); }

std::shared_ptr<const Group> make_group(GroupDescriptor d) {
  return std::make_shared<Group>(std::move(d));
}

// Reference set semantics via explicit sorted point lists.
std::vector<GroupElement> brute_sorted(const GroupSet& s) { return s.enumerate_sorted(); }

std::vector<GroupElement> brute_intersect(const std::vector<GroupElement>& a,
                                          const std::vector<GroupElement>& b) {
  std::vector<GroupElement> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Cell box_cell(const Group& g, const std::vector<std::pair<Int, Int>>& ranges) {
  Cell c;
  c.offset.coords.assign(static_cast<size_t>(g.slots()), 0);
  for (size_t s = 0; s < ranges.size(); ++s) {
    c.offset.coords[s] = ranges[s].first;
    Int count = ranges[s].second - ranges[s].first + 1;
    if (count > 1) {
      GroupElement step(std::vector<Int>(static_cast<size_t>(g.slots()), 0));
      step.coords[s] = 1;
      c.axes.push_back(CellAxis{std::move(step), count});
    }
  }
  return c;
}

GroupSet random_point_set(const std::shared_ptr<const Group>& g, std::mt19937_64& rng,
                          int n) {
  std::vector<GroupElement> pts;
  for (int i = 0; i < n; ++i) {
    std::vector<Int> c(static_cast<size_t>(g->slots()));
    for (size_t s = 0; s < c.size(); ++s) {
      Int q = g->moduli()[s];
      c[s] = q == 0 ? static_cast<Int>(rng() % 21) - 10
                    : static_cast<Int>(rng() % static_cast<unsigned long long>(q));
    }
    pts.emplace_back(std::move(c));
  }
  return GroupSet::from_points(g, std::move(pts));
}

}  // namespace

TEST_CASE("box cardinality, weight and membership") {
  auto g = make_group(GroupDescriptor::lattice_rm(2, make_rational(1, 2)));
  auto box = GroupSet::from_cells(g, {box_cell(*g, {{-3, 3}, {-2, 2}})});
  CHECK(box.cardinality() == 35);
  CHECK(box.weight() == make_rational(35, 4));
  CHECK(box.contains(el({0, 0})));
  CHECK(box.contains(el({-3, 2})));
  CHECK(!box.contains(el({-4, 0})));
  CHECK(!box.contains(el({0, 3})));
}

TEST_CASE("from_cells rejects overlap and non-injective cells") {
  auto g = make_group(GroupDescriptor::free_abelian(1));
  CHECK_THROWS_AS(
      GroupSet::from_cells(g, {box_cell(*g, {{0, 5}}), box_cell(*g, {{5, 9}})}),
      SetError);
  // step 2 on Z(4) with count 4 revisits points
  auto zq = make_group(GroupDescriptor::cyclic(4));
  Cell c;
  c.offset.coords = {0};
  c.axes.push_back(CellAxis{el({2}), 4});
  CHECK_THROWS_AS(GroupSet::from_cells(zq, {c}), SetError);
}

TEST_CASE("grid cells with multi-slot steps fall back to enumeration") {
  auto g = make_group(GroupDescriptor::free_abelian(2));
  // diagonal progression {l*(3,1) : l=0..4}
  Cell diag;
  diag.offset.coords = {0, 0};
  diag.axes.push_back(CellAxis{el({3, 1}), 5});
  auto s = GroupSet::from_cells(g, {diag});
  CHECK(s.cardinality() == 5);
  CHECK(s.contains(el({9, 3})));
  CHECK(!s.contains(el({9, 2})));
  auto box = GroupSet::from_cells(g, {box_cell(*g, {{0, 6}, {0, 6}})});
  CHECK(s.intersect_cardinality(box) == 3);  // l = 0,1,2
}

TEST_CASE("translate and intersect agree with brute force") {
  std::mt19937_64 rng(1234);
  std::vector<GroupDescriptor> descs = {
      GroupDescriptor::free_abelian(2),
      GroupDescriptor::direct_sum(
          {GroupDescriptor::cyclic(6), GroupDescriptor::free_abelian(1)}),
      GroupDescriptor::semidirect(GroupDescriptor::free_abelian(1),
                                  GroupDescriptor::cyclic(3), 2),
  };
  for (const auto& d : descs) {
    auto g = make_group(d);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_point_set(g, rng, 15);
      auto b = random_point_set(g, rng, 15);
      // random single element
      std::vector<Int> tc(static_cast<size_t>(g->slots()));
      for (size_t s = 0; s < tc.size(); ++s) {
        Int q = g->moduli()[s];
        tc[s] = q == 0 ? static_cast<Int>(rng() % 11) - 5
                       : static_cast<Int>(rng() % static_cast<unsigned long long>(q));
      }
      GroupElement t(std::move(tc));

      auto lhs = brute_sorted(a.translate_left(t));
      std::vector<GroupElement> ref;
      for (const auto& x : brute_sorted(a)) ref.push_back(g->op(t, x));
      std::sort(ref.begin(), ref.end());
      CHECK(lhs == ref);

      auto rhs = brute_sorted(a.translate_right(t));
      std::vector<GroupElement> ref_r;
      for (const auto& x : brute_sorted(a)) ref_r.push_back(g->op(x, t));
      std::sort(ref_r.begin(), ref_r.end());
      CHECK(rhs == ref_r);

      auto inv = brute_sorted(a.inverse_set());
      std::vector<GroupElement> ref_i;
      for (const auto& x : brute_sorted(a)) ref_i.push_back(g->inv(x));
      std::sort(ref_i.begin(), ref_i.end());
      CHECK(inv == ref_i);

      auto isect = brute_sorted(a.intersect(b));
      CHECK(isect == brute_intersect(brute_sorted(a), brute_sorted(b)));
      CHECK(a.intersect_cardinality(b) ==
            BigInt(static_cast<long>(isect.size())));
    }
  }
}

TEST_CASE("structured translate keeps cells symbolic") {
  // Aux-tower-shaped set over Z^2 x| Z(2): box^2 x Z(2) in one cell.
  auto g = make_group(GroupDescriptor::semidirect(GroupDescriptor::trivial(),
                                                  GroupDescriptor::free_abelian(1), 2));
  Cell f;
  f.offset.coords = {-4, -4, 0};
  f.axes.push_back(CellAxis{el({1, 0, 0}), 9});
  f.axes.push_back(CellAxis{el({0, 1, 0}), 9});
  f.axes.push_back(CellAxis{el({0, 0, 1}), 2});
  auto F = GroupSet::from_cells(g, {f});
  CHECK(F.cardinality() == 162);

  // Left translation by an element with residue 1 rotates the J blocks.
  auto T = F.translate_left(el({2, 0, 1}));
  CHECK(T.cardinality() == 162);
  // (2,0,1)*(x,y,k) = (2 + y', ...) spot check via brute force on a sample
  GroupSet::Membership m(T);
  for (const auto& x : std::vector<GroupElement>{el({-4, -4, 0}), el({4, 4, 1})}) {
    CHECK(m.contains(g->op(el({2, 0, 1}), x)));
  }

  // Right translation by (c1,c2,0) splits per residue and stays exact.
  auto R = F.translate_right(el({3, -3, 0}));
  CHECK(R.cardinality() == 162);
  GroupSet::Membership mr(R);
  for (const auto& x : std::vector<GroupElement>{el({0, 0, 0}), el({1, 2, 1})})
    CHECK(mr.contains(g->op(x, el({3, -3, 0}))));
  CHECK(F.intersect_cardinality(R) > 0);
}

TEST_CASE("symmetric difference weight under translation") {
  auto g = make_group(GroupDescriptor::free_abelian(1));
  auto F = GroupSet::from_cells(g, {box_cell(*g, {{0, 9}})});
  // lambda(3+F symdiff F) = 2*3 = 6
  CHECK(F.translate_symdiff_weight(el({3})) == make_rational(6));
  CHECK(F.translate_symdiff_weight(el({0})) == make_rational(0));
  CHECK(F.translate_symdiff_weight(el({100})) == make_rational(20));
}

TEST_CASE("difference set membership") {
  auto g = make_group(GroupDescriptor::free_abelian(1));
  auto F = GroupSet::from_cells(g, {box_cell(*g, {{0, 6}})});
  // F - F = {-6..6}
  CHECK(F.difference_set_contains(el({6})));
  CHECK(F.difference_set_contains(el({-6})));
  CHECK(!F.difference_set_contains(el({7})));
}

TEST_CASE("point_at indexes every point exactly once") {
  auto g = make_group(GroupDescriptor::direct_sum(
      {GroupDescriptor::free_abelian(1), GroupDescriptor::cyclic(3)}));
  Cell c;
  c.offset.coords = {5, 1};
  c.axes.push_back(CellAxis{el({2, 0}), 4});
  c.axes.push_back(CellAxis{el({0, 1}), 3});
  auto s = GroupSet::from_cells(g, {c});
  std::vector<GroupElement> via_index;
  for (long i = 0; i < 12; ++i) via_index.push_back(s.point_at(BigInt(i)));
  std::sort(via_index.begin(), via_index.end());
  CHECK(via_index == s.enumerate_sorted());
}

TEST_CASE("product of sets lives on concatenated slots") {
  auto g1 = make_group(GroupDescriptor::free_abelian(1));
  auto g2 = make_group(GroupDescriptor::cyclic(3));
  auto combined = make_group(GroupDescriptor::direct_sum(
      {GroupDescriptor::free_abelian(1), GroupDescriptor::cyclic(3)}));
  auto a = GroupSet::from_cells(g1, {box_cell(*g1, {{0, 4}})});
  auto b = GroupSet::from_points(g2, {el({0}), el({2})});
  auto p = a.product_with(b, combined);
  CHECK(p.cardinality() == 10);
  CHECK(p.contains(el({3, 2})));
  CHECK(!p.contains(el({3, 1})));
}
