#pragma once

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfw/rational.hpp"

namespace cfw {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GroupKind { FreeAbelian, Cyclic, DirectSum, LatticeR, Semidirect };

// Finitely described groups: Z^m, Z(q), finite direct sums, the rational
// lattice (mesh*Z)^m standing in for R^m, and the semidirect product
// G x J^p x| Z(p) with the block-cyclic twist.
struct GroupDescriptor {
  GroupKind kind = GroupKind::DirectSum;
  int rank = 0;                        // FreeAbelian / LatticeR dimension m
  Int order = 0;                       // Cyclic q >= 2
  Rational mesh = 1;                   // LatticeR mesh > 0
  std::vector<GroupDescriptor> parts;  // DirectSum summands; Semidirect {base, J}
  int twist_p = 0;                     // Semidirect p >= 2

  static GroupDescriptor trivial();
  static GroupDescriptor free_abelian(int m);
  static GroupDescriptor cyclic(Int q);
  static GroupDescriptor direct_sum(std::vector<GroupDescriptor> summands);
  // Z(q)^(+)N with an explicit support bound: `copies` concrete summands.
  static GroupDescriptor cyclic_sum(Int q, int copies);
  static GroupDescriptor lattice_rm(int m, const Rational& mesh);
  static GroupDescriptor semidirect(GroupDescriptor base, GroupDescriptor j, int p);

  void validate() const;
  int slot_count() const;
  std::vector<Int> slot_moduli() const;  // 0 = free slot, q >= 2 = cyclic slot
  Rational point_weight() const;         // Haar weight of a single point
  bool is_abelian() const;
  bool is_trivial() const;
  bool operator==(const GroupDescriptor& other) const;
  std::string describe() const;
};

// Elements are flat coordinate tuples over the descriptor's slots. Lattice
// coordinates are stored as integers in units of the mesh, so every element
// is exactly representable.
struct GroupElement {
  std::vector<Int> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<Int> c) : coords(std::move(c)) {}

  auto operator<=>(const GroupElement&) const = default;
};

std::string element_to_string(const GroupElement& a);

// The cyclic block automorphism A(x_1,...,x_p) = (x_p, x_1, ..., x_{p-1}).
template <typename T>
std::vector<T> cyclic_shift(int p, const std::vector<T>& x) {
  if (static_cast<int>(x.size()) != p)
    throw GroupError("cyclic_shift: tuple length does not match p");
  std::vector<T> out(x.size());
  for (int i = 0; i < p; ++i) out[i] = x[(i - 1 + p) % p];
  return out;
}

// Descriptor plus cached slot layout; hosts all element arithmetic.
class Group {
 public:
  explicit Group(GroupDescriptor desc);

  const GroupDescriptor& desc() const { return desc_; }
  int slots() const { return static_cast<int>(moduli_.size()); }
  const std::vector<Int>& moduli() const { return moduli_; }
  const Rational& point_weight() const { return point_weight_; }

  GroupElement identity() const;
  // Validates shape and reduces cyclic coordinates into [0, q).
  GroupElement make(std::vector<Int> coords) const;
  GroupElement reduce(GroupElement a) const;
  void check_conforms(const GroupElement& a) const;
  bool is_identity(const GroupElement& a) const;

  GroupElement op(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;
  // k-fold product a^k (written additively in the Abelian case); k may be
  // negative.
  GroupElement power(const GroupElement& a, Int k) const;
  // Smallest k in [1, bound] with a^k = e, or nullopt ("infinite within
  // bound").
  std::optional<Int> element_order(const GroupElement& a, Int bound) const;

  // Counting/Haar weight of a finite set (duplicates are ignored).
  Rational haar_weight(std::span<const GroupElement> set) const;

 private:
  void op_span(const GroupDescriptor& d, int base, const GroupElement& a,
               const GroupElement& b, GroupElement& out) const;
  void inv_span(const GroupDescriptor& d, int base, const GroupElement& a,
                GroupElement& out) const;

  GroupDescriptor desc_;
  std::vector<Int> moduli_;
  Rational point_weight_;
};

}  // namespace cfw
