#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfw/tower.hpp"

namespace cfw {

struct PoissonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Counter-based deterministic generator (splitmix64 over seed and stream).
// Every report names it together with the seed, so runs are reproducible
// bit-for-bit across platforms.
class CounterRng {
 public:
  static constexpr const char* kName = "splitmix64-counter";

  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next_u64();
  double next_unit();                 // [0, 1), 53 bits
  Int poisson(double mean);           // inversion sampling, mean <= 700
  Int uniform_below(Int n);           // unbiased in [0, n)

 private:
  std::uint64_t state_;
};

// A finite multiset of level-N atoms of the truncated space, sampled over a
// bounded window cylinder.
struct PointConfiguration {
  std::vector<GroupElement> points;  // sorted, possibly with repeats
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  int window_level = 0;
  Int defect_flagged = 0;  // points dropped by suspension_act
};

// Sampling context over an infinite-type tower: the window cylinder
// [F_i]_i refined to the truncation depth, with its exact raw measure.
class SuspensionLab {
 public:
  SuspensionLab(const Tower& t, int window_level, double intensity_scale,
                std::uint64_t seed);

  const Tower& tower() const { return *tower_; }
  int window_level() const { return window_level_; }
  std::uint64_t seed() const { return seed_; }
  double intensity_scale() const { return scale_; }
  const Rational& window_measure() const { return window_measure_; }
  Int atom_count() const { return static_cast<Int>(atoms_.size()); }

  PointConfiguration sample(std::uint64_t trial) const;
  // Pointwise image under T_g; points whose translate leaves the truncated
  // space are flagged and dropped (their fraction gates the verifiers).
  PointConfiguration act(const GroupElement& g, const PointConfiguration& cfg) const;

  // Refined, sorted base of a cylinder at the truncation depth.
  std::vector<GroupElement> refined_base(const CylinderSet& a) const;
  static Int count_in(const std::vector<GroupElement>& refined_sorted_base,
                      const PointConfiguration& cfg);
  Rational exact_measure(const CylinderSet& a) const;

 private:
  const Tower* tower_;
  int window_level_;
  double scale_;
  std::uint64_t seed_;
  std::vector<GroupElement> atoms_;  // refined window base, sorted
  Rational window_measure_;
};

struct PoissonLawReport {
  std::string rng_name = CounterRng::kName;
  std::uint64_t seed = 0;
  long trials = 0;
  double mu = 0;             // intensity-scaled measure of the test set
  double tv_distance = 0;    // empirical law vs the Poisson pmf
  double empirical_mean = 0;
  double empirical_var = 0;
  double p_zero = 0;         // empirical P(N_A = 0)
  double tolerance = 0;
  bool mean_ok = false;      // within 4 sigma of mu
  bool var_ok = false;
  bool pass = false;         // tv_distance <= tolerance
};

PoissonLawReport verify_poisson_law(const SuspensionLab& lab, const CylinderSet& a,
                                    long trials, double tolerance);

struct IndependenceReport {
  std::string rng_name = CounterRng::kName;
  std::uint64_t seed = 0;
  long trials = 0;
  double covariance = 0;
  double cov_tolerance = 0;
  double chi_square = 0;
  double chi_critical = 0;  // 99.9% quantile at the table's dof
  int chi_dof = 0;
  bool additivity_ok = false;  // N_{A u B} = N_A + N_B on every sample
  bool pass = false;
};

IndependenceReport verify_independence(const SuspensionLab& lab, const CylinderSet& a,
                                       const CylinderSet& b, long trials,
                                       double cov_tolerance);

struct SuspensionRigidityRow {
  GroupElement element;
  double change_probability = 0;  // P(N_A(w) != N_A(T~_g w))
  double defect_fraction = 0;     // of the translated test-set base
  bool abstained = false;         // defect fraction above the 1% gate
};

struct SuspensionRigidityReport {
  std::string rng_name = CounterRng::kName;
  std::uint64_t seed = 0;
  long trials = 0;
  std::vector<SuspensionRigidityRow> rows;
};

SuspensionRigidityReport verify_rigidity_suspension(
    const SuspensionLab& lab, const std::vector<GroupElement>& seq,
    const CylinderSet& test_set, long trials);

}  // namespace cfw
