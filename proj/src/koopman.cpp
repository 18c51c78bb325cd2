#include "cfw/koopman.hpp"

#include <algorithm>

namespace cfw {

KoopmanLevelMatrix koopman_matrix(const Tower& t, const GroupElement& g, int level) {
  KoopmanLevelMatrix km;
  km.level = level;
  km.g = g;
  km.atoms = t.level_set(level).enumerate_sorted();
  km.image.assign(km.atoms.size(), -1);
  const Group& grp = t.group();
  for (size_t i = 0; i < km.atoms.size(); ++i) {
    const GroupElement ga = grp.op(g, km.atoms[i]);
    auto it = std::lower_bound(km.atoms.begin(), km.atoms.end(), ga);
    if (it != km.atoms.end() && *it == ga) {
      km.image[i] = static_cast<Int>(it - km.atoms.begin());
    } else {
      ++km.defect_count;
    }
  }
  return km;
}

std::vector<RigidityRow> rigidity_diagnostic(const Tower& t,
                                             const std::vector<GroupElement>& seq,
                                             const std::vector<CylinderSet>& cylinders,
                                             const std::vector<int>& work_levels) {
  if (work_levels.size() != seq.size())
    throw TowerError("rigidity diagnostic needs one work level per element");
  std::vector<RigidityRow> rows;
  rows.reserve(seq.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    RigidityRow row;
    row.element = seq[i];
    row.work_level = work_levels[i];
    row.max_value = 0;
    for (const auto& c : cylinders) {
      Rational v = symdiff_measure(t, seq[i], c, work_levels[i]);
      if (v > row.max_value) row.max_value = v;
      row.per_cylinder.push_back(std::move(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MixingRow> mixing_diagnostic(
    const Tower& t, const std::vector<GroupElement>& seq,
    const std::vector<std::pair<CylinderSet, CylinderSet>>& pairs, int level) {
  std::vector<MixingRow> rows;
  rows.reserve(seq.size());
  for (const auto& g : seq) {
    MixingRow row;
    row.element = g;
    row.max_value = 0;
    for (const auto& [a, b] : pairs) {
      const CylinderSet ra = refine(t, a, level);
      const CylinderSet rb = refine(t, b, level);
      const ActResult moved = act(t, g, ra);
      // T_g A cap B is exact within the truncated space: the defect part
      // leaves F_level and cannot meet B.
      std::vector<GroupElement> common;
      std::set_intersection(moved.translated.base.begin(), moved.translated.base.end(),
                            rb.base.begin(), rb.base.end(), std::back_inserter(common));
      const Rational joint =
          Rational(static_cast<long>(common.size())) * t.atom_measure(level);
      Rational v = joint - cylinder_measure(t, a) * cylinder_measure(t, b);
      if (v < 0) v = -v;
      if (v > row.max_value) row.max_value = v;
      row.per_pair.push_back(std::move(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cfw
