#include "cfw/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace cfw {

namespace {

Int iabs(Int v) { return v < 0 ? -v : v; }

Rational rational_pow(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

GroupElement unit_step(int slots, int slot, Int value) {
  GroupElement e(std::vector<Int>(static_cast<size_t>(slots), 0));
  e.coords[static_cast<size_t>(slot)] = value;
  return e;
}

Cell centered_box_cell(int slots, const std::vector<Int>& half_widths) {
  Cell c;
  c.offset.coords.assign(static_cast<size_t>(slots), 0);
  for (int s = 0; s < slots; ++s) {
    const Int b = half_widths[static_cast<size_t>(s)];
    c.offset.coords[static_cast<size_t>(s)] = -b;
    if (b > 0) c.axes.push_back(CellAxis{unit_step(slots, s, 1), 2 * b + 1});
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lattice construction

LatticeTowerResult rigid_tower_rm(const std::shared_ptr<const Group>& lattice,
                                  const std::vector<GroupElement>& g_seq,
                                  const RigidPlan& plan, int depth, WDenominator conv) {
  const Group& G = *lattice;
  const auto kind = G.desc().kind;
  if (kind != GroupKind::LatticeR && kind != GroupKind::FreeAbelian)
    throw ConstructionError("lattice construction needs (mesh*Z)^m or Z^m");
  const int m = G.slots();
  if (m < 1) throw ConstructionError("lattice rank must be >= 1");
  if (depth < 1) throw ConstructionError("depth must be >= 1");
  if (static_cast<int>(plan.alphas.size()) < depth)
    throw ConstructionError("plan needs one alpha per level");
  for (const auto& a : plan.alphas)
    if (a <= 0) throw ConstructionError("alphas must be positive");
  for (const auto& g : g_seq) G.check_conforms(g);
  if (g_seq.size() < 2) throw ConstructionError("input sequence too short");

  // Pivot: first coordinate of maximal magnitude in the last element. The
  // proof orients the subsequence along one coordinate drifting to infinity;
  // everything below works with magnitudes, so per-coordinate signs need no
  // separate normalization pass.
  int pivot = 0;
  Int best = -1;
  for (int i = 0; i < m; ++i) {
    const Int v = iabs(g_seq.back().coords[static_cast<size_t>(i)]);
    if (v > best) {
      best = v;
      pivot = i;
    }
  }
  if (best == 0)
    throw ConstructionError("sequence not sign-normalizable: last element vanishes");

  auto pv = [&](size_t k) { return iabs(g_seq[k].coords[static_cast<size_t>(pivot)]); };

  LatticeTowerResult res{Tower(lattice, {GroupSet::single(lattice, G.identity())},
                               {GroupSet::empty(lattice)}),
                         {},
                         {},
                         {},
                         pivot};

  // First selected element: nonzero pivot coordinate, large enough that the
  // lattice box (side g-1 instead of the interval length g) leaves room under
  // the level-1 factor bound.
  const Rational& alpha1 = plan.alphas.front();
  size_t k0 = 0;
  while (k0 < g_seq.size() &&
         (pv(k0) < 2 || Rational(pv(k0)) * alpha1 <= 1 + alpha1))
    ++k0;
  if (k0 == g_seq.size())
    throw ConstructionError(
        "sequence not sign-normalizable: no usable first element on the pivot");
  res.subsequence.push_back(k0);

  // Candidate g_{n+1} given g_n: pivot ratio above 1/alpha + 1, and the floor
  // value h with 2h+1 > 2/alpha that the per-level factor bound needs.
  auto candidate_ok = [&](size_t k, size_t prev, const Rational& alpha, Int& h_out) {
    if (pv(k) <= pv(prev)) return false;
    if (Rational(pv(k)) * alpha <= (1 + alpha) * Rational(pv(prev))) return false;
    const Int h = (pv(k) - pv(prev)) / (2 * pv(prev));
    if (h < 1) return false;
    if (Rational(2 * h + 1) <= 2 / alpha) return false;
    h_out = h;
    return true;
  };

  std::vector<Int> b_prev(static_cast<size_t>(m));
  b_prev[static_cast<size_t>(pivot)] = (pv(k0) - 1) / 2;
  for (int i = 0; i < m; ++i)
    if (i != pivot) b_prev[static_cast<size_t>(i)] = b_prev[static_cast<size_t>(pivot)];

  std::vector<GroupSet> f_sets{GroupSet::from_cells(lattice, {centered_box_cell(m, b_prev)})};
  std::vector<GroupSet> c_sets{GroupSet::empty(lattice)};

  for (int n = 1; n <= depth; ++n) {
    const Rational& alpha = plan.alphas[static_cast<size_t>(n - 1)];
    const size_t k_cur = res.subsequence.back();
    const GroupElement& g = g_seq[k_cur];

    bool level_done = false;
    for (size_t k_next = k_cur + 1; k_next < g_seq.size() && !level_done; ++k_next) {
      Int h = 0;
      if (!candidate_ok(k_next, k_cur, alpha, h)) continue;

      std::vector<Int> w(static_cast<size_t>(m), 0);
      std::vector<Int> b_next(static_cast<size_t>(m), 0);
      bool w_adjusted = false;
      for (int i = 0; i < m; ++i) {
        if (i == pivot) continue;
        const Int gi = iabs(g.coords[static_cast<size_t>(i)]);
        const Rational denom_halfwidth =
            conv == WDenominator::FirstCoordinate
                ? Rational(pv(k_cur)) / 2
                : Rational(2 * b_prev[static_cast<size_t>(i)] + 1) / 2;
        // smallest w >= 1 with h*gi / (a * (2w+1)) < alpha
        Int wi = 1;
        while (Rational(h) * Rational(gi) >=
               alpha * denom_halfwidth * Rational(2 * wi + 1))
          ++wi;
        // exact per-coordinate factor check; the printed first-coordinate
        // denominator can undershoot once the other side lengths outgrow it
        const Int side_prev = 2 * b_prev[static_cast<size_t>(i)] + 1;
        while (Rational(side_prev * (2 * wi + 1) + 2 * h * gi) >=
               (1 + alpha) * Rational(side_prev * (2 * wi + 1))) {
          ++wi;
          w_adjusted = true;
        }
        w[static_cast<size_t>(i)] = wi;
        b_next[static_cast<size_t>(i)] =
            wi * side_prev + b_prev[static_cast<size_t>(i)] + h * gi;
      }
      b_next[static_cast<size_t>(pivot)] = (pv(k_next) - 1) / 2;

      // The pivot factor has no free parameter; a too-tight candidate is
      // skipped in favor of a later element.
      {
        const Int side_prev = 2 * b_prev[static_cast<size_t>(pivot)] + 1;
        const Int side_next = 2 * b_next[static_cast<size_t>(pivot)] + 1;
        if (Rational(side_next) >= (1 + alpha) * Rational(side_prev * (2 * h + 1)))
          continue;
      }

      // C_n: the grids A_n + k g_n, k = -h..h, as one translated-lattice cell.
      Cell c_cell;
      c_cell.offset.coords.assign(static_cast<size_t>(m), 0);
      for (int i = 0; i < m; ++i)
        c_cell.offset.coords[static_cast<size_t>(i)] -=
            h * g.coords[static_cast<size_t>(i)];
      c_cell.axes.push_back(CellAxis{g, 2 * h + 1});
      for (int i = 0; i < m; ++i) {
        if (i == pivot) continue;
        const Int spacing = 2 * b_prev[static_cast<size_t>(i)] + 1;
        c_cell.offset.coords[static_cast<size_t>(i)] -=
            w[static_cast<size_t>(i)] * spacing;
        c_cell.axes.push_back(
            CellAxis{unit_step(m, i, spacing), 2 * w[static_cast<size_t>(i)] + 1});
      }
      GroupSet c_set = GroupSet::from_cells(lattice, {c_cell});
      GroupSet f_set = GroupSet::from_cells(lattice, {centered_box_cell(m, b_next)});

      const Rational factor =
          f_set.weight() / (f_sets.back().weight() * Rational(c_set.cardinality()));
      const Rational bound = rational_pow(1 + alpha, m);
      if (factor >= bound) continue;

      const BigInt overlap = c_set.intersect_cardinality(c_set.translate_left(G.inv(g)));
      const Rational ratio = Rational(overlap) / Rational(c_set.cardinality());
      if (ratio != make_rational(2 * h, 2 * h + 1))
        throw ConstructionError("rigidity ratio certificate failed (grid overlap)");

      // (CF3): the reach of F_{n-1} C_n fits in the next box.
      for (int i = 0; i < m; ++i) {
        const Int reach =
            (i == pivot)
                ? b_prev[static_cast<size_t>(i)] + h * pv(k_cur)
                : b_prev[static_cast<size_t>(i)] +
                      w[static_cast<size_t>(i)] *
                          (2 * b_prev[static_cast<size_t>(i)] + 1) +
                      h * iabs(g.coords[static_cast<size_t>(i)]);
        if (reach > b_next[static_cast<size_t>(i)])
          throw ConstructionError("(CF3) certificate failed");
      }
      // (CF4): distinct C-elements separate the F_{n-1} translates.
      {
        const auto c_pts = c_set.enumerate();
        for (size_t a = 0; a < c_pts.size(); ++a)
          for (size_t b = a + 1; b < c_pts.size(); ++b) {
            bool separated = false;
            for (int i = 0; i < m && !separated; ++i)
              if (iabs(c_pts[a].coords[static_cast<size_t>(i)] -
                       c_pts[b].coords[static_cast<size_t>(i)]) >
                  2 * b_prev[static_cast<size_t>(i)])
                separated = true;
            if (!separated) throw ConstructionError("(CF4) certificate failed");
          }
      }

      LatticeLevelCert cert;
      cert.level = n;
      cert.k_index = k_cur;
      cert.k_next_index = k_next;
      cert.h = h;
      cert.w = w;
      cert.w_adjusted = w_adjusted;
      cert.cffin_factor = factor;
      cert.cffin_bound = bound;
      cert.rigidity_ratio = ratio;
      res.certificates.push_back(std::move(cert));
      res.rigidity_elements.push_back(g);
      res.subsequence.push_back(k_next);
      f_sets.push_back(std::move(f_set));
      c_sets.push_back(std::move(c_set));
      b_prev = b_next;
      level_done = true;
    }
    if (!level_done) {
      std::ostringstream os;
      os << "input sequence exhausted before level " << n
         << ": no remaining element clears the growth condition";
      throw ConstructionError(os.str());
    }
  }

  res.tower =
      Tower(lattice, std::move(f_sets), std::move(c_sets), MeasureVerdict::FiniteType);
  return res;
}

// ---------------------------------------------------------------------------
// Auxiliary towers

std::shared_ptr<const Group> aux_group_zp(int p) {
  return std::make_shared<Group>(GroupDescriptor::semidirect(
      GroupDescriptor::trivial(), GroupDescriptor::free_abelian(1), p));
}

std::shared_ptr<const Group> aux_group_j(const GroupDescriptor& j, int p) {
  return std::make_shared<Group>(
      GroupDescriptor::semidirect(GroupDescriptor::trivial(), j, p));
}

Tower aux_tower_zp(int p, int depth) {
  if (p < 2) throw ConstructionError("aux tower needs p >= 2");
  if (depth < 1 || depth > 36) throw ConstructionError("aux tower depth out of range");
  auto g = aux_group_zp(p);
  const int slots = g->slots();  // p free slots + residue
  std::vector<GroupSet> f;
  std::vector<GroupSet> c{GroupSet::empty(g)};
  Int pow3 = 1;  // 3^n
  for (int n = 0; n <= depth; ++n) {
    Cell fc;
    fc.offset.coords.assign(static_cast<size_t>(slots), 0);
    const Int half = (pow3 - 1) / 2;
    for (int i = 0; i < p; ++i) {
      fc.offset.coords[static_cast<size_t>(i)] = -half;
      if (pow3 > 1) fc.axes.push_back(CellAxis{unit_step(slots, i, 1), pow3});
    }
    fc.axes.push_back(CellAxis{unit_step(slots, p, 1), p});
    f.push_back(GroupSet::from_cells(g, {fc}));
    if (n < depth) {
      Cell cc;
      cc.offset.coords.assign(static_cast<size_t>(slots), 0);
      for (int i = 0; i < p; ++i) {
        cc.offset.coords[static_cast<size_t>(i)] = -pow3;
        cc.axes.push_back(CellAxis{unit_step(slots, i, pow3), 3});
      }
      c.push_back(GroupSet::from_cells(g, {cc}));
      pow3 *= 3;
    }
  }
  return Tower(g, std::move(f), std::move(c), MeasureVerdict::FiniteType);
}

Tower aux_tower_j(const GroupDescriptor& j, int p, int depth) {
  if (p < 2) throw ConstructionError("aux tower needs p >= 2");
  if (j.kind == GroupKind::FreeAbelian && j.rank == 1) return aux_tower_zp(p, depth);
  if (j.kind != GroupKind::DirectSum || j.parts.empty())
    throw ConstructionError("J must be Z or a cyclic sum Z(q)^(+)N");
  const Int q = j.parts[0].order;
  for (const auto& part : j.parts)
    if (part.kind != GroupKind::Cyclic || part.order != q)
      throw ConstructionError("J must be a sum of equal cyclic groups");
  const int copies = static_cast<int>(j.parts.size());
  if (copies < depth)
    throw ConstructionError("J support bound smaller than the requested depth");

  auto g = aux_group_j(j, p);
  const int slots = g->slots();  // p*copies cyclic slots + residue
  auto jslot = [&](int copy, int idx) { return copy * copies + idx; };
  std::vector<GroupSet> f;
  std::vector<GroupSet> c{GroupSet::empty(g)};
  for (int n = 0; n <= depth; ++n) {
    Cell fc;
    fc.offset.coords.assign(static_cast<size_t>(slots), 0);
    for (int copy = 0; copy < p; ++copy)
      for (int idx = 0; idx < n; ++idx)
        fc.axes.push_back(CellAxis{unit_step(slots, jslot(copy, idx), 1), q});
    fc.axes.push_back(CellAxis{unit_step(slots, p * copies, 1), p});
    f.push_back(GroupSet::from_cells(g, {fc}));
    if (n < depth) {
      Cell cc;
      cc.offset.coords.assign(static_cast<size_t>(slots), 0);
      for (int copy = 0; copy < p; ++copy)
        cc.axes.push_back(CellAxis{unit_step(slots, jslot(copy, n), 1), q});
      c.push_back(GroupSet::from_cells(g, {cc}));
    }
  }
  return Tower(g, std::move(f), std::move(c), MeasureVerdict::FiniteType);
}

// ---------------------------------------------------------------------------
// 'good' sequences

std::string good_case_to_string(GoodCase c) {
  switch (c) {
    case GoodCase::CyclicSubgroup:
      return "cyclic-subgroup";
    case GoodCase::UnboundedOrders:
      return "unbounded-orders";
    case GoodCase::BoundedIndependent:
      return "bounded-independent";
    case GoodCase::Rejected:
      return "rejected";
  }
  return "?";
}

namespace {

// Is x an integer multiple of g0? Infinite-order g0 supported on a free slot
// solves directly; finite-order candidates walk the cyclic subgroup.
bool member_of_cyclic(const Group& g, const GroupElement& g0, const GroupElement& x,
                      Int order_bound) {
  int free_slot = -1;
  for (int s = 0; s < g.slots(); ++s)
    if (g.moduli()[static_cast<size_t>(s)] == 0 &&
        g0.coords[static_cast<size_t>(s)] != 0) {
      free_slot = s;
      break;
    }
  if (free_slot >= 0) {
    const Int num = x.coords[static_cast<size_t>(free_slot)];
    const Int den = g0.coords[static_cast<size_t>(free_slot)];
    if (num % den != 0) return false;
    return g.power(g0, num / den) == x;
  }
  const auto ord = g.element_order(g0, order_bound);
  if (!ord) return false;
  GroupElement acc = g.identity();
  for (Int k = 0; k < *ord; ++k) {
    if (acc == x) return true;
    acc = g.op(acc, g0);
  }
  return false;
}

}  // namespace

GoodSequenceCertificate classify_good(const std::vector<GroupElement>& g_seq,
                                      const std::shared_ptr<const Group>& group,
                                      Int order_bound) {
  const Group& g = *group;
  GoodSequenceCertificate cert;
  if (g_seq.empty()) {
    cert.log = "empty prefix";
    return cert;
  }
  for (const auto& e : g_seq) g.check_conforms(e);
  for (const auto& e : g_seq) cert.orders.push_back(g.element_order(e, order_bound));

  std::ostringstream log;
  log << "prefix-certified on " << g_seq.size() << " elements; ";

  // Case 1: one cyclic subgroup with an infinite-order generator. The
  // primitive direction is tried first (it yields the canonical witness,
  // e.g. 1 for sequences in Z), then each prefix element.
  std::vector<GroupElement> candidates;
  {
    bool free_support = true;
    for (const auto& e : g_seq)
      for (int s = 0; s < g.slots(); ++s)
        if (g.moduli()[static_cast<size_t>(s)] != 0 &&
            e.coords[static_cast<size_t>(s)] != 0)
          free_support = false;
    if (free_support) {
      const GroupElement* first_nonzero = nullptr;
      for (const auto& e : g_seq)
        if (!g.is_identity(e)) {
          first_nonzero = &e;
          break;
        }
      if (first_nonzero) {
        Int d = 0;
        for (Int v : first_nonzero->coords) d = std::gcd(d, iabs(v));
        GroupElement dir = *first_nonzero;
        for (auto& v : dir.coords) v /= d;
        candidates.push_back(std::move(dir));
      }
    }
    for (const auto& e : g_seq)
      if (!g.is_identity(e)) candidates.push_back(e);
  }
  for (const auto& g0 : candidates) {
    if (g.element_order(g0, order_bound).has_value()) continue;
    bool all_in = true;
    for (const auto& e : g_seq)
      if (!member_of_cyclic(g, g0, e, order_bound)) {
        all_in = false;
        break;
      }
    if (all_in) {
      cert.kind = GoodCase::CyclicSubgroup;
      cert.generator_witness = g0;
      log << "all elements lie in <" << element_to_string(g0) << ">";
      cert.log = log.str();
      return cert;
    }
  }

  const bool all_finite = std::all_of(cert.orders.begin(), cert.orders.end(),
                                      [](const auto& o) { return o.has_value(); });
  if (!all_finite) {
    log << "mixed finite/infinite orders without a common cyclic subgroup";
    cert.log = log.str();
    return cert;
  }

  // Case 2: strictly increasing order records as unboundedness evidence.
  int records = 0;
  Int running = 0;
  std::ostringstream order_table;
  for (const auto& o : cert.orders) {
    if (*o > running) {
      running = *o;
      ++records;
      order_table << running << " ";
    }
  }
  if (records >= 3) {
    cert.kind = GoodCase::UnboundedOrders;
    log << "order records: " << order_table.str();
    cert.log = log.str();
    return cert;
  }

  // Case 3: bounded orders. Pairwise disjoint supports already force the
  // cyclic subgroups to be independent; otherwise generate the closure and
  // compare against the product of orders.
  {
    std::vector<char> touched(static_cast<size_t>(g.slots()), 0);
    bool disjoint_supports = true;
    for (const auto& e : g_seq) {
      for (int s = 0; s < g.slots() && disjoint_supports; ++s)
        if (e.coords[static_cast<size_t>(s)] != 0) {
          if (touched[static_cast<size_t>(s)]) disjoint_supports = false;
          touched[static_cast<size_t>(s)] = 1;
        }
      if (!disjoint_supports) break;
    }
    if (disjoint_supports) {
      cert.kind = GoodCase::BoundedIndependent;
      log << "pairwise disjoint supports force independent subgroups";
      cert.log = log.str();
      return cert;
    }
  }
  BigInt expected = 1;
  for (const auto& o : cert.orders) expected *= *o;
  if (expected > (1 << 22)) {
    log << "orders bounded but the closure is too large to verify independence";
    cert.log = log.str();
    return cert;
  }
  std::set<GroupElement> closure;
  std::queue<GroupElement> todo;
  closure.insert(g.identity());
  todo.push(g.identity());
  while (!todo.empty()) {
    GroupElement cur = todo.front();
    todo.pop();
    for (const auto& e : g_seq) {
      GroupElement nxt = g.op(cur, e);
      if (closure.insert(nxt).second) todo.push(std::move(nxt));
    }
  }
  if (BigInt(static_cast<long>(closure.size())) == expected) {
    cert.kind = GoodCase::BoundedIndependent;
    log << "closure size " << closure.size() << " equals the product of orders";
  } else {
    log << "closure size " << closure.size() << " below the product of orders "
        << expected.get_str() << "; subgroups are dependent";
  }
  cert.log = log.str();
  return cert;
}

// ---------------------------------------------------------------------------
// Discrete construction

DiscreteTowerResult rigid_tower_discrete(const std::vector<GroupElement>& g_seq,
                                         const std::shared_ptr<const Group>& group,
                                         const GroupElement& d, const RigidPlan& plan,
                                         int depth, const DiscreteTowerOptions& opts) {
  const Group& g = *group;
  if (!g.desc().is_abelian() || g.desc().kind == GroupKind::LatticeR ||
      g.desc().kind == GroupKind::Semidirect)
    throw ConstructionError("discrete construction needs a discrete Abelian group");
  g.check_conforms(d);
  if (depth < 1) throw ConstructionError("depth must be >= 1");
  if (static_cast<int>(plan.h_seq.size()) < depth)
    throw ConstructionError("plan needs one h_n per level");
  for (size_t i = 0; i < plan.h_seq.size(); ++i) {
    if (plan.h_seq[i] < 1) throw ConstructionError("h_n must be positive");
    if (i > 0 && plan.h_seq[i] <= plan.h_seq[i - 1])
      throw ConstructionError("h_n must be strictly increasing");
  }

  auto classification = classify_good(g_seq, group, opts.order_bound);
  if (classification.kind == GoodCase::Rejected)
    throw ConstructionError("sequence is not 'good' on the inspected prefix: " +
                            classification.log);

  std::vector<GroupElement> f0 = opts.f0;
  if (f0.empty()) f0.push_back(g.identity());
  GroupSet f_prev = GroupSet::from_points(group, std::move(f0));

  std::vector<GroupSet> f_sets{f_prev};
  std::vector<GroupSet> c_sets{GroupSet::empty(group)};
  DiscreteTowerResult res{
      Tower(group, {f_prev}, {GroupSet::empty(group)}, MeasureVerdict::InfiniteType),
      {},
      {},
      {},
      classification};

  const bool has_free_slot =
      std::any_of(g.moduli().begin(), g.moduli().end(), [](Int q) { return q == 0; });

  size_t prev_k = 0;
  bool have_prev_k = false;
  for (int n = 1; n <= depth; ++n) {
    const Int h = plan.h_seq[static_cast<size_t>(n - 1)];

    size_t start = have_prev_k ? prev_k + 1 : 0;
    if (classification.kind == GoodCase::CyclicSubgroup) {
      // max{k : g_k in F_{n-1} - F_{n-1}} + 1
      size_t last_inside = 0;
      bool any_inside = false;
      for (size_t k = 0; k < g_seq.size(); ++k)
        if (f_prev.difference_set_contains(g_seq[k])) {
          last_inside = k;
          any_inside = true;
        }
      if (any_inside) start = std::max(start, last_inside + 1);
    }

    bool found = false;
    size_t k_n = 0;
    GroupElement u;
    Int c_count = 0;
    bool subgroup_case = false;
    for (size_t k = start; k < g_seq.size() && !found; ++k) {
      GroupElement cand = g.op(g_seq[k], g.inv(d));
      if (g.is_identity(cand)) continue;
      const auto ord = g.element_order(cand, h);  // <= h means full subgroup
      const Int count = ord ? *ord : h + 1;
      if (count < 2) continue;
      // independence: every nonzero difference of C_n elements stays out of
      // F_{n-1} - F_{n-1}
      bool ok = true;
      GroupElement acc = cand;
      for (Int l = 1; l < count && ok; ++l) {
        if (f_prev.difference_set_contains(acc)) ok = false;
        acc = g.op(acc, cand);
      }
      if (!ok) continue;
      found = true;
      k_n = k;
      u = std::move(cand);
      c_count = count;
      subgroup_case = ord.has_value();
    }
    if (!found) {
      std::ostringstream os;
      os << "insufficient sequence at level " << n << " (case "
         << good_case_to_string(classification.kind)
         << "): no prefix element clears F_{n-1} - F_{n-1}";
      throw ConstructionError(os.str());
    }

    Cell c_cell;
    c_cell.offset.coords.assign(static_cast<size_t>(g.slots()), 0);
    c_cell.axes.push_back(CellAxis{u, c_count});
    GroupSet c_set = GroupSet::from_cells(group, {c_cell});

    const BigInt overlap = c_set.intersect_cardinality(c_set.translate_left(g.inv(u)));
    const Rational ratio = Rational(overlap) / Rational(c_set.cardinality());
    // A progression of full length ord(u) = h+1 wraps into the whole cyclic
    // subgroup, where C - u = C; otherwise exactly the top element leaves.
    const bool wraps = g.is_identity(g.power(u, c_count));
    const Rational expected =
        (subgroup_case || wraps) ? Rational(1) : make_rational(c_count - 1, c_count);
    if (ratio != expected)
      throw ConstructionError("rigidity ratio certificate failed");

    // F_{n-1} C_n; the product cardinality doubles as the exact (CF4) check.
    const auto f_pts = f_prev.enumerate();
    const auto c_pts = c_set.enumerate();
    std::vector<GroupElement> product_pts;
    product_pts.reserve(f_pts.size() * c_pts.size());
    for (const auto& fp : f_pts)
      for (const auto& cp : c_pts) product_pts.push_back(g.op(fp, cp));
    GroupSet fc = GroupSet::from_points(group, std::move(product_pts));
    const bool independent =
        fc.cardinality() == BigInt(static_cast<long>(f_pts.size() * c_pts.size()));
    if (!independent)
      throw ConstructionError("(CF4) failed: translates of F_{n-1} collapse");

    // Pad with the smallest centered box (free slots) or support ball (pure
    // torsion) that reaches the growth target.
    const Rational target = opts.growth * f_prev.weight() * Rational(c_count);
    GroupSet f_next = fc;
    if (f_next.weight() < target) {
      auto union_weight = [&](const GroupSet& pad_set) -> Rational {
        GroupSet::Membership in_pad(pad_set);
        Int outside = 0;
        for (const auto& p : fc.enumerate())
          if (!in_pad.contains(p)) ++outside;
        return pad_set.weight() + Rational(outside) * g.point_weight();
      };
      auto make_pad = [&](Int r) {
        Cell pad;
        pad.offset.coords.assign(static_cast<size_t>(g.slots()), 0);
        if (has_free_slot) {
          std::vector<Int> hw(static_cast<size_t>(g.slots()), 0);
          for (int s = 0; s < g.slots(); ++s)
            if (g.moduli()[static_cast<size_t>(s)] == 0)
              hw[static_cast<size_t>(s)] = r;
          pad = centered_box_cell(g.slots(), hw);
        } else {
          if (r > g.slots())
            throw ConstructionError("group too small for the requested growth");
          for (int s = 0; s < r; ++s)
            pad.axes.push_back(CellAxis{unit_step(g.slots(), s, 1),
                                        g.moduli()[static_cast<size_t>(s)]});
        }
        return GroupSet::from_cells(group, {pad});
      };
      Int hi = 1;
      while (union_weight(make_pad(hi)) < target) {
        if (!has_free_slot && hi >= g.slots())
          throw ConstructionError("group too small for the requested growth");
        hi = has_free_slot ? hi * 2 : hi + 1;
      }
      Int lo = has_free_slot ? hi / 2 : hi - 1;
      while (lo + 1 < hi) {
        const Int mid = lo + (hi - lo) / 2;
        if (union_weight(make_pad(mid)) >= target) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      f_next = make_pad(hi).unite_with_small(fc);
    }

    DiscreteLevelCert cert;
    cert.level = n;
    cert.k_index = k_n;
    cert.h = h;
    cert.subgroup_case = subgroup_case;
    cert.rigidity_ratio = ratio;
    cert.independent = independent;
    cert.growth_factor = f_next.weight() / (f_prev.weight() * Rational(c_count));
    res.certificates.push_back(std::move(cert));
    res.subsequence.push_back(k_n);
    res.rigidity_elements.push_back(u);
    c_sets.push_back(std::move(c_set));
    f_sets.push_back(f_next);
    f_prev = std::move(f_next);
    prev_k = k_n;
    have_prev_k = true;
  }

  res.tower =
      Tower(group, std::move(f_sets), std::move(c_sets), MeasureVerdict::InfiniteType);
  return res;
}

}  // namespace cfw
