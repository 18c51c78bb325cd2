#pragma once

#include <utility>
#include <vector>

#include "cfw/tower.hpp"

namespace cfw {

// Level restriction of the translation action on atom indicators: a partial
// permutation on the atoms of F_level, with unmapped atoms recorded as
// defect mass.
struct KoopmanLevelMatrix {
  int level = 0;
  GroupElement g;
  std::vector<GroupElement> atoms;  // sorted
  std::vector<Int> image;           // image[i] = index of g*atoms[i], -1 = defect
  Int defect_count = 0;

  Int dimension() const { return static_cast<Int>(atoms.size()); }
  bool is_permutation() const { return defect_count == 0; }
};

KoopmanLevelMatrix koopman_matrix(const Tower& t, const GroupElement& g, int level);

// Per sequence element: max over the test cylinders of the exact
// symdiff_measure upper bound at the given work level. This is the
// operational form of U_T(g_n) -> I on the dense cylinder family.
struct RigidityRow {
  GroupElement element;
  int work_level = 0;
  std::vector<Rational> per_cylinder;
  Rational max_value;
};

std::vector<RigidityRow> rigidity_diagnostic(const Tower& t,
                                             const std::vector<GroupElement>& seq,
                                             const std::vector<CylinderSet>& cylinders,
                                             const std::vector<int>& work_levels);

// |mu(T_g A cap B) - mu(A) mu(B)| per cylinder pair: the weak-operator
// criterion on indicator functions with constants removed.
struct MixingRow {
  GroupElement element;
  std::vector<Rational> per_pair;
  Rational max_value;
};

std::vector<MixingRow> mixing_diagnostic(
    const Tower& t, const std::vector<GroupElement>& seq,
    const std::vector<std::pair<CylinderSet, CylinderSet>>& pairs, int level);

}  // namespace cfw
