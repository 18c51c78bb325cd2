#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cfw/groupset.hpp"

namespace cfw {

struct TowerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MeasureVerdict { FiniteType, InfiniteType, UndecidedAtDepth };

std::string verdict_to_string(MeasureVerdict v);

// Partial products of lambda(F_n) / (lambda(F_{n-1}) * #C_n). The dichotomy
// between finite and infinite total measure is asymptotic; at a finite
// truncation the verdict comes from the construction certificate when the
// tower carries one, otherwise it stays undecided.
struct MeasureReport {
  std::vector<Rational> factors;           // index n-1 holds the level-n factor
  std::vector<Rational> partial_products;  // running products of the factors
  MeasureVerdict verdict = MeasureVerdict::UndecidedAtDepth;
  std::string note;
};

struct LevelValidation {
  int level = 0;   // transition F_{n-1} -> F_n through C_n
  bool cf2 = false;  // #C_n > 1
  bool cf3 = false;  // F_{n-1} C_n inside F_n
  bool cf4 = false;  // F_{n-1} c pairwise disjoint over c in C_n
  Rational cffin_factor;
};

// Folner ratios lambda(g F_n symdiff F_n) / lambda(F_n) per probe per level;
// diagnostic only, never pass/fail (the condition is asymptotic).
struct FolnerRow {
  GroupElement probe;
  std::vector<Rational> ratios;
};

struct ValidationReport {
  std::vector<LevelValidation> levels;
  std::vector<FolnerRow> folner;
  MeasureReport measure;

  bool all_pass() const;
};

// The (C,F) data at finite depth N: sets F_0..F_N and C_1..C_N. The working
// space X_N is F_N carrying weight lambda / (#C_1...#C_N), normalized to a
// probability space unless the tower is declared infinite-type.
class Tower {
 public:
  Tower(std::shared_ptr<const Group> group, std::vector<GroupSet> f_sets,
        std::vector<GroupSet> c_sets,
        MeasureVerdict declared = MeasureVerdict::UndecidedAtDepth);

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  int depth() const { return static_cast<int>(f_.size()) - 1; }
  const GroupSet& level_set(int n) const;   // F_n, 0 <= n <= depth
  const GroupSet& choice_set(int n) const;  // C_n, 1 <= n <= depth
  MeasureVerdict declared_type() const { return declared_; }
  const Rational& normalization() const { return normalization_; }

  BigInt choice_product(int n) const;      // #C_1 ... #C_n
  Rational space_weight_raw() const;       // lambda(F_N) / #C_1...#C_N
  // Normalized measure of a single level-n atom.
  Rational atom_measure(int level) const;

 private:
  std::shared_ptr<const Group> group_;
  std::vector<GroupSet> f_;
  std::vector<GroupSet> c_;
  MeasureVerdict declared_;
  Rational normalization_ = 1;
};

// A level plus a finite subset of F_level; the measurable-set currency.
struct CylinderSet {
  int level = 0;
  std::vector<GroupElement> base;  // sorted, unique
};

CylinderSet make_cylinder(const Tower& t, int level, std::vector<GroupElement> base);

ValidationReport validate_tower(const Tower& t,
                                const std::vector<GroupElement>& folner_probes = {});

Rational cylinder_measure(const Tower& t, const CylinderSet& c);

// [A]_n = [A C_{n+1}]_{n+1}: measure-preserving refinement.
CylinderSet refine(const Tower& t, const CylinderSet& c, int to_level);

// T_g on a cylinder: splits the base into the part whose translate stays in
// F_n and the defect that leaves it.
struct ActResult {
  CylinderSet translated;
  CylinderSet defect;
};
ActResult act(const Tower& t, const GroupElement& g, const CylinderSet& c);

// mu(T_g A symdiff A) at work_level, counting defect mass as fully displaced
// (an upper bound on the true symmetric difference).
Rational symdiff_measure(const Tower& t, const GroupElement& g, const CylinderSet& c,
                         int work_level);

// Group for the Cartesian product of two towers. An Abelian left factor is
// absorbed into a right factor of the shape J^p x| Z(p), matching the
// semidirect-product groups the explicit constructions use.
std::shared_ptr<const Group> combined_product_group(
    const std::shared_ptr<const Group>& a, const std::shared_ptr<const Group>& b);

Tower product_tower(const Tower& a, const Tower& b);

}  // namespace cfw
