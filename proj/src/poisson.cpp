#include "cfw/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cfw {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
  state_ = splitmix(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
}

std::uint64_t CounterRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  return splitmix(state_);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Int CounterRng::poisson(double mean) {
  if (mean < 0) throw PoissonError("poisson mean must be nonnegative");
  if (mean == 0) return 0;
  if (mean > 700) throw PoissonError("poisson mean too large for inversion sampling");
  const double u = next_unit();
  double p = std::exp(-mean);
  double cum = p;
  Int j = 0;
  const Int j_max = static_cast<Int>(mean + 60 * std::sqrt(mean) + 200);
  while (u >= cum && j < j_max) {
    ++j;
    p *= mean / static_cast<double>(j);
    cum += p;
  }
  return j;
}

Int CounterRng::uniform_below(Int n) {
  if (n <= 0) throw PoissonError("uniform_below needs n >= 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= limit);
  return static_cast<Int>(r % un);
}

SuspensionLab::SuspensionLab(const Tower& t, int window_level, double intensity_scale,
                             std::uint64_t seed)
    : tower_(&t), window_level_(window_level), scale_(intensity_scale), seed_(seed) {
  if (t.declared_type() != MeasureVerdict::InfiniteType)
    throw PoissonError(
        "Poisson suspension needs an infinite-type tower: the suspension of a "
        "finite-measure system is not sigma-finite in the required sense");
  if (intensity_scale <= 0) throw PoissonError("intensity scale must be positive");
  const CylinderSet window =
      make_cylinder(t, window_level, t.level_set(window_level).enumerate());
  const CylinderSet refined = refine(t, window, t.depth());
  atoms_ = refined.base;  // already sorted
  window_measure_ = cylinder_measure(t, refined);
}

PointConfiguration SuspensionLab::sample(std::uint64_t trial) const {
  CounterRng rng(seed_, trial);
  PointConfiguration cfg;
  cfg.seed = seed_;
  cfg.trial = trial;
  cfg.window_level = window_level_;
  const Int k = rng.poisson(scale_ * to_double(window_measure_));
  cfg.points.reserve(static_cast<size_t>(k));
  for (Int i = 0; i < k; ++i) {
    const Int idx = rng.uniform_below(static_cast<Int>(atoms_.size()));
    cfg.points.push_back(atoms_[static_cast<size_t>(idx)]);
  }
  std::sort(cfg.points.begin(), cfg.points.end());
  return cfg;
}

PointConfiguration SuspensionLab::act(const GroupElement& g,
                                      const PointConfiguration& cfg) const {
  const Group& grp = tower_->group();
  GroupSet::Membership in_space(tower_->level_set(tower_->depth()));
  PointConfiguration out;
  out.seed = cfg.seed;
  out.trial = cfg.trial;
  out.window_level = cfg.window_level;
  out.defect_flagged = cfg.defect_flagged;
  out.points.reserve(cfg.points.size());
  for (const auto& p : cfg.points) {
    GroupElement gp = grp.op(g, p);
    if (in_space.contains(gp)) {
      out.points.push_back(std::move(gp));
    } else {
      ++out.defect_flagged;
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::vector<GroupElement> SuspensionLab::refined_base(const CylinderSet& a) const {
  return refine(*tower_, a, tower_->depth()).base;
}

Int SuspensionLab::count_in(const std::vector<GroupElement>& base,
                            const PointConfiguration& cfg) {
  Int n = 0;
  for (const auto& p : cfg.points)
    if (std::binary_search(base.begin(), base.end(), p)) ++n;
  return n;
}

Rational SuspensionLab::exact_measure(const CylinderSet& a) const {
  return cylinder_measure(*tower_, a);
}

PoissonLawReport verify_poisson_law(const SuspensionLab& lab, const CylinderSet& a,
                                    long trials, double tolerance) {
  if (trials < 1) throw PoissonError("need at least one trial");
  PoissonLawReport rep;
  rep.seed = lab.seed();
  rep.trials = trials;
  rep.tolerance = tolerance;
  const auto base = lab.refined_base(a);
  rep.mu = lab.intensity_scale() * to_double(lab.exact_measure(a));

  std::map<Int, long> hist;
  double sum = 0;
  double sum_sq = 0;
  for (long trial = 0; trial < trials; ++trial) {
    const auto cfg = lab.sample(static_cast<std::uint64_t>(trial));
    const Int n = SuspensionLab::count_in(base, cfg);
    ++hist[n];
    sum += static_cast<double>(n);
    sum_sq += static_cast<double>(n) * static_cast<double>(n);
  }
  const double nt = static_cast<double>(trials);
  rep.empirical_mean = sum / nt;
  rep.empirical_var = sum_sq / nt - rep.empirical_mean * rep.empirical_mean;
  auto it0 = hist.find(0);
  rep.p_zero = it0 == hist.end() ? 0.0 : static_cast<double>(it0->second) / nt;

  // Total variation against the exact pmf, with the un-observed tail folded
  // into the sum.
  const Int j_max = hist.empty() ? 0 : hist.rbegin()->first;
  double pmf = std::exp(-rep.mu);
  double tail = 1.0;
  double tv = 0;
  for (Int j = 0; j <= j_max + 1; ++j) {
    const auto it = hist.find(j);
    const double emp = it == hist.end() ? 0.0 : static_cast<double>(it->second) / nt;
    tv += std::abs(emp - pmf);
    tail -= pmf;
    pmf *= rep.mu / static_cast<double>(j + 1);
  }
  tv += std::max(tail, 0.0);
  rep.tv_distance = tv / 2;

  const double sigma_mean = std::sqrt(rep.mu / nt);
  const double sigma_var = std::sqrt((2 * rep.mu * rep.mu + rep.mu) / nt);
  rep.mean_ok = std::abs(rep.empirical_mean - rep.mu) <= 4 * sigma_mean;
  rep.var_ok = std::abs(rep.empirical_var - rep.mu) <= 4 * sigma_var;
  rep.pass = rep.tv_distance <= tolerance;
  return rep;
}

IndependenceReport verify_independence(const SuspensionLab& lab, const CylinderSet& a,
                                       const CylinderSet& b, long trials,
                                       double cov_tolerance) {
  IndependenceReport rep;
  rep.seed = lab.seed();
  rep.trials = trials;
  rep.cov_tolerance = cov_tolerance;
  const auto base_a = lab.refined_base(a);
  const auto base_b = lab.refined_base(b);
  {
    std::vector<GroupElement> common;
    std::set_intersection(base_a.begin(), base_a.end(), base_b.begin(), base_b.end(),
                          std::back_inserter(common));
    if (!common.empty())
      throw PoissonError("independence verifier needs disjoint cylinders");
  }
  std::vector<GroupElement> base_union = base_a;
  base_union.insert(base_union.end(), base_b.begin(), base_b.end());
  std::sort(base_union.begin(), base_union.end());

  std::map<std::pair<Int, Int>, long> joint;
  double sa = 0, sb = 0, sab = 0;
  rep.additivity_ok = true;
  for (long trial = 0; trial < trials; ++trial) {
    const auto cfg = lab.sample(static_cast<std::uint64_t>(trial));
    const Int na = SuspensionLab::count_in(base_a, cfg);
    const Int nb = SuspensionLab::count_in(base_b, cfg);
    if (SuspensionLab::count_in(base_union, cfg) != na + nb) rep.additivity_ok = false;
    ++joint[{na, nb}];
    sa += static_cast<double>(na);
    sb += static_cast<double>(nb);
    sab += static_cast<double>(na) * static_cast<double>(nb);
  }
  const double nt = static_cast<double>(trials);
  rep.covariance = sab / nt - (sa / nt) * (sb / nt);

  // Chi-square on the truncated joint histogram: cells with expected counts
  // below 5 merge into the tail buckets.
  const Int cap = 6;
  std::vector<double> pa(static_cast<size_t>(cap) + 1, 0.0);
  std::vector<double> pb(static_cast<size_t>(cap) + 1, 0.0);
  for (const auto& [key, count] : joint) {
    pa[static_cast<size_t>(std::min(key.first, cap))] += static_cast<double>(count);
    pb[static_cast<size_t>(std::min(key.second, cap))] += static_cast<double>(count);
  }
  double chi = 0;
  int dof = 0;
  for (Int i = 0; i <= cap; ++i)
    for (Int j = 0; j <= cap; ++j) {
      const double expected = pa[static_cast<size_t>(i)] * pb[static_cast<size_t>(j)] / nt;
      if (expected < 5.0) continue;
      double observed = 0;
      for (const auto& [key, count] : joint)
        if (std::min(key.first, cap) == i && std::min(key.second, cap) == j)
          observed += static_cast<double>(count);
      chi += (observed - expected) * (observed - expected) / expected;
      ++dof;
    }
  rep.chi_square = chi;
  rep.chi_dof = std::max(dof - 1, 1);
  // Wilson-Hilferty approximation of the 99.9% chi-square quantile.
  const double z = 3.090232;
  const double k = static_cast<double>(rep.chi_dof);
  const double wh = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  rep.chi_critical = k * wh * wh * wh;
  rep.pass = std::abs(rep.covariance) <= cov_tolerance && rep.chi_square <= rep.chi_critical &&
             rep.additivity_ok;
  return rep;
}

SuspensionRigidityReport verify_rigidity_suspension(
    const SuspensionLab& lab, const std::vector<GroupElement>& seq,
    const CylinderSet& test_set, long trials) {
  SuspensionRigidityReport rep;
  rep.seed = lab.seed();
  rep.trials = trials;
  const auto base = lab.refined_base(test_set);
  const Tower& t = lab.tower();
  for (const auto& g : seq) {
    SuspensionRigidityRow row;
    row.element = g;
    // N_A(T~_g w) = N_{T_{-g} A}(w): translate the refined base once.
    const CylinderSet refined{t.depth(), base};
    const ActResult moved = act(t, t.group().inv(g), refined);
    row.defect_fraction = base.empty()
                              ? 0.0
                              : static_cast<double>(moved.defect.base.size()) /
                                    static_cast<double>(base.size());
    row.abstained = row.defect_fraction > 0.01;
    if (!row.abstained) {
      long changed = 0;
      for (long trial = 0; trial < trials; ++trial) {
        const auto cfg = lab.sample(static_cast<std::uint64_t>(trial));
        const Int before = SuspensionLab::count_in(base, cfg);
        const Int after = SuspensionLab::count_in(moved.translated.base, cfg);
        if (before != after) ++changed;
      }
      row.change_probability = static_cast<double>(changed) / static_cast<double>(trials);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace cfw
