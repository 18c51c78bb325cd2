#include "cfw/groupset.hpp"

#include <algorithm>
#include <numeric>

namespace cfw {

namespace {

using I128 = __int128;
using Prog = SlotProg;
using ProfileOpt = std::optional<std::vector<Prog>>;

Int mod_reduce(Int v, Int q) {
  Int r = v % q;
  if (r < 0) r += q;
  return r;
}

// Semidirect twist layout: residue slot plus the contiguous J-block span.
struct TwistSpan {
  int res_slot;
  int j_begin;
  int j_block;  // slots per J copy
  int p;
};

void collect_twists(const GroupDescriptor& d, int base, std::vector<TwistSpan>& out) {
  switch (d.kind) {
    case GroupKind::FreeAbelian:
    case GroupKind::Cyclic:
    case GroupKind::LatticeR:
      break;
    case GroupKind::DirectSum: {
      int off = base;
      for (const auto& p : d.parts) {
        collect_twists(p, off, out);
        off += p.slot_count();
      }
      break;
    }
    case GroupKind::Semidirect: {
      const int base_slots = d.parts[0].slot_count();
      const int j_block = d.parts[1].slot_count();
      collect_twists(d.parts[0], base, out);
      out.push_back(TwistSpan{base + base_slots + d.twist_p * j_block,
                              base + base_slots, j_block, d.twist_p});
      break;
    }
  }
}

std::vector<TwistSpan> twists_for(const Group& g) {
  std::vector<TwistSpan> out;
  collect_twists(g.desc(), 0, out);
  return out;
}

// Rotate the J-blocks of `v` by A^n within one twist span, in place.
void rotate_blocks(std::vector<Int>& v, const TwistSpan& t, Int n) {
  if (t.j_block == 0) return;
  const int p = t.p;
  std::vector<Int> tmp(static_cast<size_t>(p) * t.j_block);
  for (int i = 0; i < p; ++i) {
    const int src = static_cast<int>(mod_reduce(i - n, p));
    for (int s = 0; s < t.j_block; ++s)
      tmp[static_cast<size_t>(i * t.j_block + s)] =
          v[static_cast<size_t>(t.j_begin + src * t.j_block + s)];
  }
  for (int i = 0; i < p * t.j_block; ++i)
    v[static_cast<size_t>(t.j_begin + i)] = tmp[static_cast<size_t>(i)];
}

void reduce_step(std::vector<Int>& v, const std::vector<Int>& moduli) {
  for (size_t i = 0; i < v.size(); ++i)
    if (moduli[i] > 0) v[i] = mod_reduce(v[i], moduli[i]);
}

Int egcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  Int x1, y1;
  Int g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Intersection of two progressions over Z (steps >= 0, step 0 => count 1).
Prog intersect_free(const Prog& a, const Prog& b) {
  Prog empty{0, 0, 0};
  auto contains = [](const Prog& p, Int v) {
    if (p.step == 0) return v == p.start;
    if (v < p.start) return false;
    Int d = v - p.start;
    return d % p.step == 0 && d / p.step < p.count;
  };
  if (a.step == 0) return contains(b, a.start) ? Prog{a.start, 0, 1} : empty;
  if (b.step == 0) return contains(a, b.start) ? Prog{b.start, 0, 1} : empty;
  Int x, y;
  const Int g = egcd(a.step, b.step, x, y);
  if ((b.start - a.start) % g != 0) return empty;
  const I128 lcm = static_cast<I128>(a.step) / g * b.step;
  // Smallest l >= 0 with a.start + l*a.step == b.start (mod b.step).
  const Int bs = b.step / g;
  const I128 diff = static_cast<I128>(b.start - a.start) / g;
  Int i0 = static_cast<Int>(((diff % bs) * (static_cast<I128>(x) % bs) % bs + bs) % bs);
  I128 first = static_cast<I128>(a.start) + static_cast<I128>(i0) * a.step;
  const I128 last_a = static_cast<I128>(a.start) + static_cast<I128>(a.count - 1) * a.step;
  const I128 last_b = static_cast<I128>(b.start) + static_cast<I128>(b.count - 1) * b.step;
  const I128 lo = std::max<I128>(a.start, b.start);
  const I128 hi = std::min(last_a, last_b);
  if (first < lo) first += ((lo - first + lcm - 1) / lcm) * lcm;
  if (first > hi) return empty;
  const I128 count = (hi - first) / lcm + 1;
  return Prog{static_cast<Int>(first), static_cast<Int>(lcm), static_cast<Int>(count)};
}

// Non-wrapping pieces of a unit-stride cyclic progression (or a full cycle).
std::vector<Prog> cyclic_pieces(Prog p, Int q) {
  if (p.count >= q) return {Prog{0, 1, q}};
  p.start = mod_reduce(p.start, q);
  if (p.start + p.count <= q) return {p};
  return {Prog{p.start, 1, q - p.start}, Prog{0, 1, p.start + p.count - q}};
}

// Slot-aligned profile: per slot, the (independent) 1-D progression of
// values. Present only when every axis touches exactly one slot, the slots
// are distinct, and cyclic-slot strides are unit or cover the full cycle.
ProfileOpt slot_profile(const Group& g, const Cell& cell) {
  const auto& moduli = g.moduli();
  std::vector<Prog> prof(moduli.size());
  std::vector<bool> used(moduli.size(), false);
  for (size_t s = 0; s < moduli.size(); ++s) prof[s] = Prog{cell.offset.coords[s], 0, 1};
  for (const auto& ax : cell.axes) {
    int slot = -1;
    for (size_t s = 0; s < moduli.size(); ++s) {
      if (ax.step.coords[s] != 0) {
        if (slot >= 0) return std::nullopt;  // step touches several slots
        slot = static_cast<int>(s);
      }
    }
    if (slot < 0) return std::nullopt;  // zero step with count > 1
    if (used[static_cast<size_t>(slot)]) return std::nullopt;
    used[static_cast<size_t>(slot)] = true;
    Int d = ax.step.coords[static_cast<size_t>(slot)];
    Int start = cell.offset.coords[static_cast<size_t>(slot)];
    const Int q = moduli[static_cast<size_t>(slot)];
    if (q == 0) {
      if (d < 0) {  // flip so the progression ascends
        start += (ax.count - 1) * d;
        d = -d;
      }
      prof[static_cast<size_t>(slot)] = Prog{start, d, ax.count};
    } else {
      d = mod_reduce(d, q);
      if (d == q - 1 && q > 2) {  // descending unit stride: flip
        start = mod_reduce(start - (ax.count - 1), q);
        d = 1;
      }
      if (ax.count >= q && std::gcd(d, q) == 1) {
        prof[static_cast<size_t>(slot)] = Prog{0, 1, q};
      } else if (d == 1) {
        prof[static_cast<size_t>(slot)] = Prog{mod_reduce(start, q), 1, ax.count};
      } else {
        return std::nullopt;
      }
    }
  }
  return prof;
}

std::vector<ProfileOpt> make_profiles(const Group& g, const std::vector<Cell>& cells) {
  std::vector<ProfileOpt> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    if (c.axes.empty()) {
      out.emplace_back(std::nullopt);  // plain points never need a profile
    } else {
      out.push_back(slot_profile(g, c));
    }
  }
  return out;
}

bool profile_contains(const std::vector<Prog>& prof, const std::vector<Int>& moduli,
                      const GroupElement& x) {
  for (size_t s = 0; s < prof.size(); ++s) {
    const Prog& p = prof[s];
    const Int q = moduli[s];
    const Int v = x.coords[s];
    if (q == 0) {
      if (p.step == 0) {
        if (v != p.start) return false;
      } else {
        const Int d = v - p.start;
        if (d < 0 || d % p.step != 0 || d / p.step >= p.count) return false;
      }
    } else {
      bool hit = false;
      for (const auto& piece : cyclic_pieces(p, q))
        if (v >= piece.start && v < piece.start + piece.count) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
  }
  return true;
}

std::vector<GroupElement> enumerate_cell(const Group& g, const Cell& cell, Int limit) {
  BigInt card = cell.cardinality();
  if (card > limit) throw SetError("cell too large to enumerate");
  const auto& moduli = g.moduli();
  std::vector<GroupElement> out;
  out.reserve(card.get_ui());
  std::vector<Int> idx(cell.axes.size(), 0);
  while (true) {
    GroupElement pt = cell.offset;
    for (size_t j = 0; j < cell.axes.size(); ++j)
      for (size_t s = 0; s < pt.coords.size(); ++s)
        pt.coords[s] += idx[j] * cell.axes[j].step.coords[s];
    for (size_t s = 0; s < pt.coords.size(); ++s)
      if (moduli[s] > 0) pt.coords[s] = mod_reduce(pt.coords[s], moduli[s]);
    out.push_back(std::move(pt));
    if (cell.axes.empty()) return out;
    size_t j = cell.axes.size();
    while (true) {
      --j;
      if (++idx[j] < cell.axes[j].count) break;
      idx[j] = 0;
      if (j == 0) return out;
    }
  }
}

bool cell_contains(const Group& g, const Cell& cell, const ProfileOpt& prof,
                   const GroupElement& x) {
  if (cell.axes.empty()) return cell.offset == x;
  if (prof) return profile_contains(*prof, g.moduli(), x);
  auto pts = enumerate_cell(g, cell, GroupSet::kEnumLimit);
  return std::find(pts.begin(), pts.end(), x) != pts.end();
}

// Cells produced by intersecting two slot-aligned profiles.
std::vector<Cell> intersect_profiles(const Group& g, const std::vector<Prog>& a,
                                     const std::vector<Prog>& b) {
  const auto& moduli = g.moduli();
  std::vector<std::vector<Prog>> pieces(moduli.size());
  for (size_t s = 0; s < moduli.size(); ++s) {
    const Int q = moduli[s];
    if (q == 0) {
      Prog r = intersect_free(a[s], b[s]);
      if (r.count == 0) return {};
      pieces[s] = {r};
    } else {
      for (const auto& pa : cyclic_pieces(a[s], q))
        for (const auto& pb : cyclic_pieces(b[s], q)) {
          const Int lo = std::max(pa.start, pb.start);
          const Int hi = std::min(pa.start + pa.count, pb.start + pb.count);
          if (lo < hi) pieces[s].push_back(Prog{lo, 1, hi - lo});
        }
      if (pieces[s].empty()) return {};
    }
  }
  std::vector<Cell> out;
  std::vector<size_t> choice(moduli.size(), 0);
  while (true) {
    Cell c;
    c.offset.coords.assign(moduli.size(), 0);
    for (size_t s = 0; s < moduli.size(); ++s) {
      const Prog& p = pieces[s][choice[s]];
      c.offset.coords[s] = p.start;
      if (p.count > 1) {
        GroupElement step(std::vector<Int>(moduli.size(), 0));
        step.coords[s] = p.step == 0 ? 1 : p.step;
        c.axes.push_back(CellAxis{std::move(step), p.count});
      }
    }
    out.push_back(std::move(c));
    size_t s = moduli.size();
    bool done = true;
    while (s > 0) {
      --s;
      if (++choice[s] < pieces[s].size()) {
        done = false;
        break;
      }
      choice[s] = 0;
    }
    if (done) break;
  }
  return out;
}

std::vector<Cell> intersect_cells(const Group& g, const Cell& a, const ProfileOpt& pa,
                                  const Cell& b, const ProfileOpt& pb) {
  if (a.axes.empty()) {
    if (cell_contains(g, b, pb, a.offset)) return {Cell{a.offset, {}}};
    return {};
  }
  if (b.axes.empty()) {
    if (cell_contains(g, a, pa, b.offset)) return {Cell{b.offset, {}}};
    return {};
  }
  if (pa && pb) return intersect_profiles(g, *pa, *pb);
  const Cell* small = &a;
  const ProfileOpt* big_prof = &pb;
  const Cell* big = &b;
  if (a.cardinality() > b.cardinality()) {
    small = &b;
    big = &a;
    big_prof = &pa;
  }
  std::vector<Cell> out;
  for (auto& pt : enumerate_cell(g, *small, GroupSet::kEnumLimit))
    if (cell_contains(g, *big, *big_prof, pt)) out.push_back(Cell{std::move(pt), {}});
  return out;
}

bool cell_injective(const Group& g, const Cell& cell, const ProfileOpt& prof) {
  if (cell.axes.empty()) return true;
  if (prof) {
    BigInt prod = 1;
    for (const auto& p : *prof) prod *= p.count;
    return prod == cell.cardinality();
  }
  auto pts = enumerate_cell(g, cell, GroupSet::kEnumLimit);
  std::sort(pts.begin(), pts.end());
  return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
}

BigInt cells_intersection_cardinality(const Group& g, const Cell& a,
                                      const ProfileOpt& pa, const Cell& b,
                                      const ProfileOpt& pb) {
  BigInt n = 0;
  for (const auto& c : intersect_cells(g, a, pa, b, pb)) n += c.cardinality();
  return n;
}

// Point cells and structured cells of a set, with the point offsets sorted.
struct PartsView {
  std::vector<GroupElement> points;        // sorted
  std::vector<const Cell*> structured;
};

PartsView split_parts(const std::vector<Cell>& cells, bool already_sorted) {
  PartsView v;
  for (const auto& c : cells) {
    if (c.axes.empty()) {
      v.points.push_back(c.offset);
    } else {
      v.structured.push_back(&c);
    }
  }
  if (!already_sorted) std::sort(v.points.begin(), v.points.end());
  return v;
}

std::vector<GroupElement> sorted_merge_common(const std::vector<GroupElement>& a,
                                              const std::vector<GroupElement>& b) {
  std::vector<GroupElement> out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

// Membership restricted to the structured cells of a set.
struct StructuredTester {
  const Group* g;
  std::vector<const Cell*> cells;
  std::vector<ProfileOpt> profiles;

  StructuredTester(const Group& grp, const std::vector<const Cell*>& cs) : g(&grp), cells(cs) {
    profiles.reserve(cs.size());
    for (const Cell* c : cs) profiles.push_back(slot_profile(grp, *c));
  }
  bool contains(const GroupElement& x) const {
    for (size_t i = 0; i < cells.size(); ++i)
      if (cell_contains(*g, *cells[i], profiles[i], x)) return true;
    return false;
  }
};

}  // namespace

BigInt Cell::cardinality() const {
  BigInt n = 1;
  for (const auto& ax : axes) n *= ax.count;
  return n;
}

GroupSet::GroupSet(std::shared_ptr<const Group> g, std::vector<Cell> cells)
    : group_(std::move(g)), cells_(std::move(cells)) {
  pure_sorted_ = true;
  for (size_t i = 0; i < cells_.size(); ++i) {
    if (!cells_[i].axes.empty() ||
        (i > 0 && !(cells_[i - 1].offset < cells_[i].offset))) {
      pure_sorted_ = false;
      break;
    }
  }
}

GroupSet GroupSet::empty(std::shared_ptr<const Group> g) {
  return GroupSet(std::move(g), {});
}

GroupSet GroupSet::single(std::shared_ptr<const Group> g, GroupElement a) {
  a = g->reduce(std::move(a));
  std::vector<Cell> cells;
  cells.push_back(Cell{std::move(a), {}});
  return GroupSet(std::move(g), std::move(cells));
}

GroupSet GroupSet::from_points(std::shared_ptr<const Group> g,
                               std::vector<GroupElement> pts) {
  for (auto& p : pts) p = g->reduce(std::move(p));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Cell> cells;
  cells.reserve(pts.size());
  for (auto& p : pts) cells.push_back(Cell{std::move(p), {}});
  return GroupSet(std::move(g), std::move(cells));
}

GroupSet GroupSet::from_cells(std::shared_ptr<const Group> g, std::vector<Cell> cells) {
  const auto& moduli = g->moduli();
  for (auto& c : cells) {
    c.offset = g->reduce(std::move(c.offset));
    for (auto& ax : c.axes) {
      if (ax.count < 1) throw SetError("cell axis count must be >= 1");
      if (static_cast<int>(ax.step.coords.size()) != g->slots())
        throw SetError("cell axis step shape mismatch");
      reduce_step(ax.step.coords, moduli);
    }
    std::erase_if(c.axes, [](const CellAxis& ax) { return ax.count == 1; });
  }
  if (std::all_of(cells.begin(), cells.end(),
                  [](const Cell& c) { return c.axes.empty(); })) {
    std::vector<GroupElement> pts;
    pts.reserve(cells.size());
    for (auto& c : cells) pts.push_back(std::move(c.offset));
    const size_t before = pts.size();
    auto set = from_points(std::move(g), std::move(pts));
    if (set.cells_.size() != before)
      throw SetError("cells overlap; GroupSet requires a disjoint union");
    return set;
  }
  auto profiles = make_profiles(*g, cells);
  for (size_t i = 0; i < cells.size(); ++i)
    if (!cell_injective(*g, cells[i], profiles[i]))
      throw SetError("cell enumeration is not injective");
  for (size_t i = 0; i < cells.size(); ++i)
    for (size_t j = i + 1; j < cells.size(); ++j)
      if (cells_intersection_cardinality(*g, cells[i], profiles[i], cells[j],
                                         profiles[j]) != 0)
        throw SetError("cells overlap; GroupSet requires a disjoint union");
  return GroupSet(std::move(g), std::move(cells));
}

BigInt GroupSet::cardinality() const {
  BigInt n = 0;
  for (const auto& c : cells_) n += c.cardinality();
  return n;
}

Rational GroupSet::weight() const {
  return Rational(cardinality()) * group_->point_weight();
}

GroupSet::Membership::Membership(const GroupSet& s) : set_(&s) {
  profiles_ = make_profiles(*s.group_, s.cells_);
  if (!s.pure_sorted_) {
    for (const auto& c : s.cells_)
      if (c.axes.empty()) sorted_points_.push_back(c.offset);
    std::sort(sorted_points_.begin(), sorted_points_.end());
  }
}

bool GroupSet::Membership::contains(const GroupElement& x) const {
  if (set_->pure_sorted_) {
    const auto& cells = set_->cells_;
    auto it = std::lower_bound(
        cells.begin(), cells.end(), x,
        [](const Cell& c, const GroupElement& v) { return c.offset < v; });
    return it != cells.end() && it->offset == x;
  }
  if (std::binary_search(sorted_points_.begin(), sorted_points_.end(), x)) return true;
  for (size_t i = 0; i < set_->cells_.size(); ++i) {
    if (set_->cells_[i].axes.empty()) continue;
    if (cell_contains(*set_->group_, set_->cells_[i], profiles_[i], x)) return true;
  }
  return false;
}

bool GroupSet::contains(const GroupElement& x) const {
  return Membership(*this).contains(x);
}

GroupSet GroupSet::intersect(const GroupSet& other) const {
  const PartsView a = split_parts(cells_, pure_sorted_);
  const PartsView b = split_parts(other.cells_, other.pure_sorted_);
  const StructuredTester in_a(*group_, a.structured);
  const StructuredTester in_b(*group_, b.structured);
  std::vector<Cell> out;
  for (auto& p : sorted_merge_common(a.points, b.points)) out.push_back(Cell{p, {}});
  for (const auto& p : a.points)
    if (in_b.contains(p)) out.push_back(Cell{p, {}});
  for (const auto& p : b.points)
    if (in_a.contains(p)) out.push_back(Cell{p, {}});
  for (size_t i = 0; i < a.structured.size(); ++i)
    for (size_t j = 0; j < b.structured.size(); ++j) {
      auto pieces = intersect_cells(*group_, *a.structured[i], in_a.profiles[i],
                                    *b.structured[j], in_b.profiles[j]);
      out.insert(out.end(), std::make_move_iterator(pieces.begin()),
                 std::make_move_iterator(pieces.end()));
    }
  return GroupSet(group_, std::move(out));
}

BigInt GroupSet::intersect_cardinality(const GroupSet& other) const {
  const PartsView a = split_parts(cells_, pure_sorted_);
  const PartsView b = split_parts(other.cells_, other.pure_sorted_);
  Int pts = 0;
  {
    size_t i = 0, j = 0;
    while (i < a.points.size() && j < b.points.size()) {
      if (a.points[i] < b.points[j]) {
        ++i;
      } else if (b.points[j] < a.points[i]) {
        ++j;
      } else {
        ++pts;
        ++i;
        ++j;
      }
    }
  }
  BigInt n(pts);
  if (!b.structured.empty()) {
    const StructuredTester in_b(*group_, b.structured);
    for (const auto& p : a.points)
      if (in_b.contains(p)) n += 1;
  }
  if (!a.structured.empty()) {
    const StructuredTester in_a(*group_, a.structured);
    for (const auto& p : b.points)
      if (in_a.contains(p)) n += 1;
    if (!b.structured.empty()) {
      const StructuredTester in_b(*group_, b.structured);
      for (size_t i = 0; i < a.structured.size(); ++i)
        for (size_t j = 0; j < b.structured.size(); ++j)
          n += cells_intersection_cardinality(*group_, *a.structured[i],
                                              in_a.profiles[i], *b.structured[j],
                                              in_b.profiles[j]);
    }
  }
  return n;
}

bool GroupSet::disjoint_with(const GroupSet& other) const {
  return intersect_cardinality(other) == 0;
}

bool GroupSet::subset_of(const GroupSet& other) const {
  return intersect_cardinality(other) == cardinality();
}

bool GroupSet::same_points_as(const GroupSet& other) const {
  return cardinality() == other.cardinality() &&
         intersect_cardinality(other) == cardinality();
}

GroupSet GroupSet::translate_left(const GroupElement& g) const {
  const auto twists = twists_for(*group_);
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_) {
    Cell nc;
    nc.offset = group_->op(g, c.offset);
    nc.axes = c.axes;
    for (auto& ax : nc.axes) {
      for (const auto& t : twists)
        rotate_blocks(ax.step.coords, t, g.coords[static_cast<size_t>(t.res_slot)]);
      reduce_step(ax.step.coords, group_->moduli());
    }
    out.push_back(std::move(nc));
  }
  if (pure_sorted_)
    std::sort(out.begin(), out.end(),
              [](const Cell& a, const Cell& b) { return a.offset < b.offset; });
  return GroupSet(group_, std::move(out));
}

namespace {

// Split cells until no axis touches any of the given slots.
void split_on_slots(const Group& g, std::vector<Cell>& cells,
                    const std::vector<int>& slots) {
  std::vector<Cell> out;
  std::vector<Cell> work = std::move(cells);
  const auto& moduli = g.moduli();
  while (!work.empty()) {
    Cell c = std::move(work.back());
    work.pop_back();
    size_t hit = c.axes.size();
    for (size_t j = 0; j < c.axes.size() && hit == c.axes.size(); ++j)
      for (int s : slots)
        if (c.axes[j].step.coords[static_cast<size_t>(s)] != 0) {
          hit = j;
          break;
        }
    if (hit == c.axes.size()) {
      out.push_back(std::move(c));
      continue;
    }
    const CellAxis ax = c.axes[hit];
    c.axes.erase(c.axes.begin() + static_cast<std::ptrdiff_t>(hit));
    for (Int l = 0; l < ax.count; ++l) {
      Cell piece = c;
      for (size_t s = 0; s < piece.offset.coords.size(); ++s) {
        piece.offset.coords[s] += l * ax.step.coords[s];
        if (moduli[s] > 0)
          piece.offset.coords[s] = mod_reduce(piece.offset.coords[s], moduli[s]);
      }
      work.push_back(std::move(piece));
    }
  }
  cells = std::move(out);
}

}  // namespace

GroupSet GroupSet::translate_right(const GroupElement& c) const {
  const auto twists = twists_for(*group_);
  std::vector<int> res_slots;
  for (const auto& t : twists) res_slots.push_back(t.res_slot);
  std::vector<Cell> work = cells_;
  if (!res_slots.empty()) split_on_slots(*group_, work, res_slots);
  for (auto& cell : work) cell.offset = group_->op(cell.offset, c);
  if (pure_sorted_)
    std::sort(work.begin(), work.end(),
              [](const Cell& a, const Cell& b) { return a.offset < b.offset; });
  return GroupSet(group_, std::move(work));
}

GroupSet GroupSet::inverse_set() const {
  const auto twists = twists_for(*group_);
  std::vector<int> res_slots;
  for (const auto& t : twists) res_slots.push_back(t.res_slot);
  std::vector<Cell> work = cells_;
  if (!res_slots.empty()) split_on_slots(*group_, work, res_slots);
  const auto& moduli = group_->moduli();
  for (auto& cell : work) {
    const GroupElement old_offset = cell.offset;
    cell.offset = group_->inv(old_offset);
    for (auto& ax : cell.axes) {
      for (auto& v : ax.step.coords) v = -v;
      for (const auto& t : twists) {
        const Int k = old_offset.coords[static_cast<size_t>(t.res_slot)];
        rotate_blocks(ax.step.coords, t, -k);
      }
      reduce_step(ax.step.coords, moduli);
    }
  }
  if (pure_sorted_)
    std::sort(work.begin(), work.end(),
              [](const Cell& a, const Cell& b) { return a.offset < b.offset; });
  return GroupSet(group_, std::move(work));
}

GroupSet GroupSet::unite_disjoint(const GroupSet& other) const {
  if (!disjoint_with(other)) throw SetError("unite_disjoint: parts overlap");
  std::vector<Cell> out = cells_;
  out.insert(out.end(), other.cells_.begin(), other.cells_.end());
  return GroupSet(group_, std::move(out));
}

GroupSet GroupSet::unite_with_small(const GroupSet& other) const {
  Membership m(*this);
  std::vector<Cell> out = cells_;
  for (auto& pt : other.enumerate_sorted())
    if (!m.contains(pt)) out.push_back(Cell{std::move(pt), {}});
  return GroupSet(group_, std::move(out));
}

GroupSet GroupSet::product_with(const GroupSet& other,
                                std::shared_ptr<const Group> combined) const {
  const int n1 = group_->slots();
  const int n2 = other.group_->slots();
  if (combined->slots() != n1 + n2)
    throw SetError("product_with: combined group slot count mismatch");
  std::vector<Cell> out;
  out.reserve(cells_.size() * other.cells_.size());
  for (const auto& a : cells_)
    for (const auto& b : other.cells_) {
      Cell c;
      c.offset.coords = a.offset.coords;
      c.offset.coords.insert(c.offset.coords.end(), b.offset.coords.begin(),
                             b.offset.coords.end());
      for (const auto& ax : a.axes) {
        GroupElement step(ax.step.coords);
        step.coords.resize(static_cast<size_t>(n1 + n2), 0);
        c.axes.push_back(CellAxis{std::move(step), ax.count});
      }
      for (const auto& ax : b.axes) {
        GroupElement step(std::vector<Int>(static_cast<size_t>(n1), 0));
        step.coords.insert(step.coords.end(), ax.step.coords.begin(),
                           ax.step.coords.end());
        c.axes.push_back(CellAxis{std::move(step), ax.count});
      }
      out.push_back(std::move(c));
    }
  return GroupSet(std::move(combined), std::move(out));
}

std::vector<GroupElement> GroupSet::enumerate() const {
  if (cardinality() > kEnumLimit) throw SetError("set too large to enumerate");
  std::vector<GroupElement> out;
  for (const auto& c : cells_) {
    auto pts = enumerate_cell(*group_, c, kEnumLimit);
    out.insert(out.end(), std::make_move_iterator(pts.begin()),
               std::make_move_iterator(pts.end()));
  }
  return out;
}

std::vector<GroupElement> GroupSet::enumerate_sorted() const {
  auto pts = enumerate();
  std::sort(pts.begin(), pts.end());
  return pts;
}

GroupElement GroupSet::point_at(const BigInt& index) const {
  BigInt idx = index;
  for (const auto& c : cells_) {
    BigInt card = c.cardinality();
    if (idx >= card) {
      idx -= card;
      continue;
    }
    GroupElement pt = c.offset;
    // Mixed-radix decomposition, last axis fastest.
    std::vector<Int> ls(c.axes.size(), 0);
    for (size_t j = c.axes.size(); j > 0; --j) {
      BigInt n(static_cast<long>(c.axes[j - 1].count));
      BigInt rem = idx % n;
      ls[j - 1] = static_cast<Int>(rem.get_si());
      idx /= n;
    }
    const auto& moduli = group_->moduli();
    for (size_t j = 0; j < c.axes.size(); ++j)
      for (size_t s = 0; s < pt.coords.size(); ++s)
        pt.coords[s] += ls[j] * c.axes[j].step.coords[s];
    for (size_t s = 0; s < pt.coords.size(); ++s)
      if (moduli[s] > 0) pt.coords[s] = mod_reduce(pt.coords[s], moduli[s]);
    return pt;
  }
  throw SetError("point_at: index out of range");
}

bool GroupSet::difference_set_contains(const GroupElement& g) const {
  return !translate_left(g).disjoint_with(*this);
}

Rational GroupSet::translate_symdiff_weight(const GroupElement& g) const {
  const Rational w = weight();
  const Rational common = intersect(translate_left(g)).weight();
  return 2 * (w - common);
}

}  // namespace cfw
