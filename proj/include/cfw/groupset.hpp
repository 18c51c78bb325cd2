#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cfw/group.hpp"
#include "cfw/rational.hpp"

namespace cfw {

struct SetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One axis of a grid patch: contributes l * step for l = 0..count-1.
struct CellAxis {
  GroupElement step;
  Int count = 1;
};

// A grid patch { offset + sum_j l_j * step_j } with coordinatewise addition
// (cyclic slots reduce mod q). Enumeration over the axis ranges must hit
// distinct points; GroupSet::from_cells verifies this.
struct Cell {
  GroupElement offset;
  std::vector<CellAxis> axes;

  BigInt cardinality() const;
};

// One-dimensional arithmetic progression {start + l*step : 0 <= l < count};
// the per-slot view of a slot-aligned cell.
struct SlotProg {
  Int start = 0;
  Int step = 0;
  Int count = 1;
};

// A finite subset of a group, stored as a disjoint union of grid patches.
// Explicit point sets are patches with no axes; large Folner boxes stay
// symbolic so weight/membership/intersection run in closed form.
class GroupSet {
 public:
  GroupSet() = default;

  static GroupSet empty(std::shared_ptr<const Group> g);
  static GroupSet single(std::shared_ptr<const Group> g, GroupElement a);
  static GroupSet from_points(std::shared_ptr<const Group> g,
                              std::vector<GroupElement> pts);
  // Verifies per-cell injectivity and pairwise disjointness.
  static GroupSet from_cells(std::shared_ptr<const Group> g, std::vector<Cell> cells);

  const std::shared_ptr<const Group>& group() const { return group_; }
  const std::vector<Cell>& cells() const { return cells_; }
  bool is_empty() const { return cells_.empty(); }

  BigInt cardinality() const;
  Rational weight() const;  // cardinality * Haar point weight

  bool contains(const GroupElement& x) const;
  GroupSet intersect(const GroupSet& other) const;
  BigInt intersect_cardinality(const GroupSet& other) const;
  bool disjoint_with(const GroupSet& other) const;
  bool subset_of(const GroupSet& other) const;
  bool same_points_as(const GroupSet& other) const;

  GroupSet translate_left(const GroupElement& g) const;   // { g*x }
  GroupSet translate_right(const GroupElement& c) const;  // { x*c }
  GroupSet inverse_set() const;                           // { x^{-1} }

  // Disjoint union; throws if the parts overlap.
  GroupSet unite_disjoint(const GroupSet& other) const;
  // Set union with overlap resolved by explicit enumeration of `other`.
  GroupSet unite_with_small(const GroupSet& other) const;

  // Cartesian product as a set over the combined group (slots concatenate).
  GroupSet product_with(const GroupSet& other,
                        std::shared_ptr<const Group> combined) const;

  std::vector<GroupElement> enumerate() const;
  std::vector<GroupElement> enumerate_sorted() const;
  GroupElement point_at(const BigInt& index) const;

  // True iff (g + S) meets S, i.e. g lies in S * S^{-1} (the difference set
  // for Abelian groups).
  bool difference_set_contains(const GroupElement& g) const;

  // lambda(gS symdiff S) computed exactly via translation invariance.
  Rational translate_symdiff_weight(const GroupElement& g) const;

  // Precomputed membership tester; use for repeated queries against the
  // same set (slot profiles are derived once).
  class Membership {
   public:
    explicit Membership(const GroupSet& s);
    bool contains(const GroupElement& x) const;

   private:
    const GroupSet* set_;
    std::vector<std::optional<std::vector<SlotProg>>> profiles_;
    std::vector<GroupElement> sorted_points_;
  };

  static constexpr Int kEnumLimit = 1 << 20;

 private:
  friend class Membership;
  GroupSet(std::shared_ptr<const Group> g, std::vector<Cell> cells);

  bool pure_sorted_points() const { return pure_sorted_; }

  std::shared_ptr<const Group> group_;
  std::vector<Cell> cells_;
  bool pure_sorted_ = false;
};

}  // namespace cfw
