#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfw/tower.hpp"

namespace cfw {

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Construction plan shared by the rigid-tower generators. The lattice
// construction consumes `alphas` (positive, summable by the caller's
// choice, e.g. geometric); the discrete construction consumes `h_seq`
// (strictly increasing) and `target_d`.
struct RigidPlan {
  std::vector<Rational> alphas;
  std::vector<Int> h_seq;
  GroupElement target_d;
};

// Which half-width enters the denominator of the w-selection inequality.
// The source formula prints the first coordinate; the per-coordinate variant
// is the reading the surrounding algebra suggests. Both are available; with
// the printed form the exact per-level factor check may raise w further
// (recorded in the certificate).
enum class WDenominator { FirstCoordinate, PerCoordinate };

struct LatticeLevelCert {
  int level = 0;
  size_t k_index = 0;        // 0-based index into the input sequence (g_n)
  size_t k_next_index = 0;   // index defining F_n (g_{n+1})
  Int h = 0;
  std::vector<Int> w;        // per coordinate; pivot entry stays 0
  bool w_adjusted = false;   // raised beyond the selection inequality
  Rational cffin_factor;
  Rational cffin_bound;      // (1 + alpha_n)^m
  Rational rigidity_ratio;   // exactly 2h/(2h+1)
};

struct LatticeTowerResult {
  Tower tower;  // over the lattice group, finite-type by certificate
  std::vector<size_t> subsequence;             // k_1 .. k_{depth+1}
  std::vector<GroupElement> rigidity_elements; // g_{k_n}, n = 1..depth
  std::vector<LatticeLevelCert> certificates;
  int pivot_coordinate = 0;
};

// Rigid tower over (mesh*Z)^m from a sequence drifting to infinity. Selects
// a subsequence with |g_{n+1}|/|g_n| > 1/alpha_n + 1 along the pivot
// coordinate (skipping as needed), builds C_n as a union of translated
// grids A_n + k g_n, and certifies per level the exact (CFfin) factor bound
// and the rigidity ratio 2h_n/(2h_n+1).
LatticeTowerResult rigid_tower_rm(const std::shared_ptr<const Group>& lattice,
                                  const std::vector<GroupElement>& g_seq,
                                  const RigidPlan& plan, int depth,
                                  WDenominator conv = WDenominator::FirstCoordinate);

// Group Z^p x| Z(p) (trivial base), the auxiliary factor of the rigid
// construction.
std::shared_ptr<const Group> aux_group_zp(int p);
// Group J^p x| Z(p).
std::shared_ptr<const Group> aux_group_j(const GroupDescriptor& j, int p);

// The 3-adic auxiliary tower: F_n = {-(3^n-1)/2..(3^n-1)/2}^p x Z(p),
// C_n = {-3^(n-1),0,3^(n-1)}^p x {0}. All (CFfin) factors equal 1.
Tower aux_tower_zp(int p, int depth);

// The J-shaped auxiliary towers: J = Z reuses the 3-adic tower; for
// J = Z(q)^(+)N (a cyclic_sum descriptor with at least `depth` summands)
// F_n puts Z(q)^n in each copy and C_n the n-th summand.
Tower aux_tower_j(const GroupDescriptor& j, int p, int depth);

enum class GoodCase { CyclicSubgroup, UnboundedOrders, BoundedIndependent, Rejected };

std::string good_case_to_string(GoodCase c);

// Prefix-certified classification: the asymptotic clauses (orders unbounded,
// g_n -> infinity) cannot be verified on a finite prefix, so the witness
// records prefix-level evidence only.
struct GoodSequenceCertificate {
  GoodCase kind = GoodCase::Rejected;
  std::optional<GroupElement> generator_witness;  // case 1
  std::vector<std::optional<Int>> orders;         // per element, within bound
  std::string log;
};

GoodSequenceCertificate classify_good(const std::vector<GroupElement>& g_seq,
                                      const std::shared_ptr<const Group>& group,
                                      Int order_bound);

struct DiscreteLevelCert {
  int level = 0;
  size_t k_index = 0;
  Int h = 0;
  bool subgroup_case = false;  // C_n = <g-d> when ord(g-d) <= h_n
  Rational rigidity_ratio;     // h/(h+1) in the progression case, 1 otherwise
  bool independent = false;    // (C_n - C_n) meets F_{n-1} - F_{n-1} only at 0
  Rational growth_factor;      // lambda(F_n)/(lambda(F_{n-1}) #C_n)
};

struct DiscreteTowerResult {
  Tower tower;  // over G, declared infinite-type
  std::vector<size_t> subsequence;
  std::vector<GroupElement> rigidity_elements;  // g_{k_n} - d
  std::vector<DiscreteLevelCert> certificates;
  GoodSequenceCertificate classification;
};

struct DiscreteTowerOptions {
  std::vector<GroupElement> f0;  // default {identity}
  Rational growth = 2;           // per-level (CFinf) factor requirement
  Int order_bound = 1 << 20;
};

// Rigid tower over a discrete Abelian group from a 'good' sequence:
// C_n is an arithmetic progression with difference g_{k_n} - d (or the full
// cyclic subgroup when the order is small), k_n chosen so that C_n is
// independent of F_{n-1}; F_n is F_{n-1} C_n padded by the smallest centered
// box / support ball reaching the configured growth factor.
DiscreteTowerResult rigid_tower_discrete(const std::vector<GroupElement>& g_seq,
                                         const std::shared_ptr<const Group>& group,
                                         const GroupElement& d, const RigidPlan& plan,
                                         int depth,
                                         const DiscreteTowerOptions& opts = {});

}  // namespace cfw
