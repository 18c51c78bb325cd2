#include "cfw/tower.hpp"

#include <algorithm>

namespace cfw {

std::string verdict_to_string(MeasureVerdict v) {
  switch (v) {
    case MeasureVerdict::FiniteType:
      return "finite-type";
    case MeasureVerdict::InfiniteType:
      return "infinite-type";
    case MeasureVerdict::UndecidedAtDepth:
      return "undecided-at-depth";
  }
  return "?";
}

bool ValidationReport::all_pass() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelValidation& l) {
    return l.cf2 && l.cf3 && l.cf4;
  });
}

Tower::Tower(std::shared_ptr<const Group> group, std::vector<GroupSet> f_sets,
             std::vector<GroupSet> c_sets, MeasureVerdict declared)
    : group_(std::move(group)), f_(std::move(f_sets)), c_(std::move(c_sets)),
      declared_(declared) {
  if (f_.empty()) throw TowerError("tower needs at least F_0");
  if (c_.size() != f_.size())
    throw TowerError("tower needs one C_n per transition (C_0 slot stays empty)");
  for (const auto& s : f_)
    if (s.group()->desc() != group_->desc())
      throw TowerError("F_n group does not match tower group");
  for (size_t n = 1; n < c_.size(); ++n)
    if (c_[n].group()->desc() != group_->desc())
      throw TowerError("C_n group does not match tower group");
  if (declared_ != MeasureVerdict::InfiniteType && choice_product(depth()) > 0) {
    const Rational total = space_weight_raw();
    if (total > 0) normalization_ = 1 / total;
  }
}

const GroupSet& Tower::level_set(int n) const {
  if (n < 0 || n > depth()) throw TowerError("level out of range");
  return f_[static_cast<size_t>(n)];
}

const GroupSet& Tower::choice_set(int n) const {
  if (n < 1 || n > depth()) throw TowerError("choice level out of range");
  return c_[static_cast<size_t>(n)];
}

BigInt Tower::choice_product(int n) const {
  BigInt prod = 1;
  for (int k = 1; k <= n; ++k) prod *= choice_set(k).cardinality();
  return prod;
}

Rational Tower::space_weight_raw() const {
  return f_.back().weight() / Rational(choice_product(depth()));
}

Rational Tower::atom_measure(int level) const {
  const BigInt prod = choice_product(level);
  if (prod == 0) throw TowerError("atom measure undefined: some C_n is empty");
  return normalization_ * group_->point_weight() / Rational(prod);
}

CylinderSet make_cylinder(const Tower& t, int level, std::vector<GroupElement> base) {
  if (level < 0 || level > t.depth()) throw TowerError("cylinder level out of range");
  for (auto& b : base) b = t.group().reduce(std::move(b));
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  GroupSet::Membership m(t.level_set(level));
  for (const auto& b : base)
    if (!m.contains(b)) throw TowerError("cylinder base is not inside F_n");
  return CylinderSet{level, std::move(base)};
}

ValidationReport validate_tower(const Tower& t,
                                const std::vector<GroupElement>& folner_probes) {
  ValidationReport rep;
  const int depth = t.depth();
  for (int n = 0; n <= depth; ++n)
    if (t.level_set(n).is_empty()) throw TowerError("empty F_n is structurally invalid");

  Rational partial = 1;
  for (int n = 1; n <= depth; ++n) {
    LevelValidation lv;
    lv.level = n;
    const GroupSet& f_prev = t.level_set(n - 1);
    const GroupSet& f_cur = t.level_set(n);
    const GroupSet& c = t.choice_set(n);
    const BigInt c_count = c.cardinality();
    lv.cf2 = c_count > 1;

    const auto c_elems = c.enumerate();
    lv.cf3 = true;
    lv.cf4 = true;
    std::vector<GroupSet> translates;
    translates.reserve(c_elems.size());
    for (const auto& ce : c_elems) translates.push_back(f_prev.translate_right(ce));
    for (const auto& tr : translates)
      if (!tr.subset_of(f_cur)) {
        lv.cf3 = false;
        break;
      }
    for (size_t i = 0; i < translates.size() && lv.cf4; ++i)
      for (size_t j = i + 1; j < translates.size(); ++j)
        if (!translates[i].disjoint_with(translates[j])) {
          lv.cf4 = false;
          break;
        }

    lv.cffin_factor = f_cur.weight() / (f_prev.weight() * Rational(c_count));
    partial *= lv.cffin_factor;
    rep.measure.factors.push_back(lv.cffin_factor);
    rep.measure.partial_products.push_back(partial);
    rep.levels.push_back(std::move(lv));
  }

  rep.measure.verdict = t.declared_type();
  rep.measure.note =
      t.declared_type() == MeasureVerdict::UndecidedAtDepth
          ? "verdict requires a construction certificate; factors shown are the "
            "truncated prefix"
          : "verdict from the construction certificate; the true total measure "
            "differs from the truncation by the tail product";

  for (const auto& g : folner_probes) {
    FolnerRow row;
    row.probe = g;
    for (int n = 0; n <= depth; ++n) {
      const GroupSet& f = t.level_set(n);
      row.ratios.push_back(f.translate_symdiff_weight(g) / f.weight());
    }
    rep.folner.push_back(std::move(row));
  }
  return rep;
}

Rational cylinder_measure(const Tower& t, const CylinderSet& c) {
  GroupSet::Membership m(t.level_set(c.level));
  for (const auto& b : c.base)
    if (!m.contains(b)) throw TowerError("cylinder base is not inside F_n");
  return Rational(static_cast<long>(c.base.size())) * t.atom_measure(c.level);
}

CylinderSet refine(const Tower& t, const CylinderSet& c, int to_level) {
  if (to_level < c.level) throw TowerError("refine target must not decrease level");
  if (to_level > t.depth()) throw TowerError("refine target beyond truncation depth");
  CylinderSet out = c;
  const Group& g = t.group();
  for (int lvl = c.level + 1; lvl <= to_level; ++lvl) {
    const auto cs = t.choice_set(lvl).enumerate();
    std::vector<GroupElement> next;
    next.reserve(out.base.size() * cs.size());
    for (const auto& b : out.base)
      for (const auto& ce : cs) next.push_back(g.op(b, ce));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out.base = std::move(next);
  }
  out.level = to_level;
  return out;
}

ActResult act(const Tower& t, const GroupElement& g, const CylinderSet& c) {
  const Group& grp = t.group();
  GroupSet::Membership m(t.level_set(c.level));
  ActResult res;
  res.translated.level = c.level;
  res.defect.level = c.level;
  for (const auto& a : c.base) {
    GroupElement ga = grp.op(g, a);
    if (m.contains(ga)) {
      res.translated.base.push_back(std::move(ga));
    } else {
      res.defect.base.push_back(a);
    }
  }
  std::sort(res.translated.base.begin(), res.translated.base.end());
  return res;
}

Rational symdiff_measure(const Tower& t, const GroupElement& g, const CylinderSet& c,
                         int work_level) {
  if (work_level < c.level) throw TowerError("work level below cylinder level");
  const CylinderSet b = refine(t, c, work_level);
  const ActResult moved = act(t, g, b);
  // |B symdiff gB_in| via sorted merge, plus the defect counted as displaced.
  size_t i = 0, j = 0, sym = 0;
  const auto& lhs = b.base;
  const auto& rhs = moved.translated.base;
  while (i < lhs.size() && j < rhs.size()) {
    if (lhs[i] < rhs[j]) {
      ++sym;
      ++i;
    } else if (rhs[j] < lhs[i]) {
      ++sym;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  sym += (lhs.size() - i) + (rhs.size() - j);
  const Rational count(static_cast<long>(sym + moved.defect.base.size()));
  return count * t.atom_measure(work_level);
}

std::shared_ptr<const Group> combined_product_group(
    const std::shared_ptr<const Group>& a, const std::shared_ptr<const Group>& b) {
  const auto& da = a->desc();
  const auto& db = b->desc();
  if (db.kind == GroupKind::Semidirect && db.parts[0].is_trivial() &&
      da.is_abelian() && da.kind != GroupKind::Semidirect) {
    return std::make_shared<Group>(
        GroupDescriptor::semidirect(da, db.parts[1], db.twist_p));
  }
  return std::make_shared<Group>(GroupDescriptor::direct_sum({da, db}));
}

Tower product_tower(const Tower& a, const Tower& b) {
  if (a.depth() != b.depth()) throw TowerError("product towers need equal depths");
  auto combined = combined_product_group(a.group_ptr(), b.group_ptr());
  std::vector<GroupSet> f;
  std::vector<GroupSet> c;
  f.reserve(static_cast<size_t>(a.depth()) + 1);
  c.reserve(static_cast<size_t>(a.depth()) + 1);
  c.push_back(GroupSet::empty(combined));
  for (int n = 0; n <= a.depth(); ++n) {
    f.push_back(a.level_set(n).product_with(b.level_set(n), combined));
    if (n >= 1) c.push_back(a.choice_set(n).product_with(b.choice_set(n), combined));
  }
  MeasureVerdict declared = MeasureVerdict::UndecidedAtDepth;
  const auto ta = a.declared_type();
  const auto tb = b.declared_type();
  if (ta == MeasureVerdict::InfiniteType || tb == MeasureVerdict::InfiniteType)
    declared = MeasureVerdict::InfiniteType;
  else if (ta == MeasureVerdict::FiniteType && tb == MeasureVerdict::FiniteType)
    declared = MeasureVerdict::FiniteType;
  return Tower(std::move(combined), std::move(f), std::move(c), declared);
}

}  // namespace cfw
