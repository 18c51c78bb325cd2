#pragma once

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cfw/constructions.hpp"
#include "cfw/tower.hpp"

namespace cfw {

// Schema violations carry JSON-pointer style paths.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> issues_in)
      : std::runtime_error(issues_in.empty() ? "invalid config" : issues_in.front()),
        issues(std::move(issues_in)) {}
  std::vector<std::string> issues;
};

struct ExplicitTowerSpec {
  std::vector<std::vector<GroupElement>> f_levels;
  std::vector<std::vector<GroupElement>> c_levels;
  MeasureVerdict declared = MeasureVerdict::UndecidedAtDepth;
};

struct AuxZpSpec {
  int p = 2;
  int depth = 3;
};

struct AuxJSpec {
  GroupDescriptor j;
  int p = 2;
  int depth = 3;
};

struct LatticeRigidSpec {
  std::vector<GroupElement> g_seq;  // coordinates already in mesh units
  std::vector<Rational> alphas;
  int depth = 1;
  WDenominator conv = WDenominator::FirstCoordinate;
};

struct DiscreteRigidSpec {
  std::vector<GroupElement> g_seq;
  GroupElement d;
  std::vector<Int> h_seq;
  int depth = 1;
  std::vector<GroupElement> f0;
  Rational growth = 2;
};

struct TowerSpec {
  enum class Source { Explicit, AuxZp, AuxJ, LatticeRigid, DiscreteRigid, Product };
  Source source = Source::Explicit;
  GroupDescriptor group;  // the group the tower lives over
  std::optional<ExplicitTowerSpec> explicit_spec;
  std::optional<AuxZpSpec> aux_zp;
  std::optional<AuxJSpec> aux_j;
  std::optional<LatticeRigidSpec> lattice_rigid;
  std::optional<DiscreteRigidSpec> discrete_rigid;
  std::shared_ptr<TowerSpec> product_first;
  std::shared_ptr<TowerSpec> product_second;
};

struct CylinderSpec {
  int level = 0;
  std::vector<GroupElement> base;
};

struct RigidityBlock {
  std::string sequence;
  std::vector<std::string> cylinders;
  std::vector<int> work_levels;  // empty: 1..len(sequence), clamped to depth
};

struct SpectralBlock {
  std::string sequence;
  int level = 1;
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct PoissonBlock {
  std::uint64_t seed = 0;
  long trials = 10000;
  int window_level = 1;
  double intensity_scale = 1.0;
  double tv_tolerance = 0.01;
  double cov_tolerance = 0.02;
  std::string set_a;
  std::string set_b;
  std::string rigidity_sequence;  // optional: suspension rigidity rows
};

struct ReplabBlock {
  std::uint64_t seed = 0;
  int cases = 100;
  Int prime_order = 100003;
};

struct DiamondBlock {
  std::vector<Int> ps;
  Int cap = 100;
  std::optional<std::vector<Int>> factor_set;
  std::optional<std::pair<std::vector<Int>, Int>> check;  // set + bound
};

struct WorkbenchConfig {
  int schema_version = 1;
  std::optional<TowerSpec> tower;
  std::map<std::string, std::vector<GroupElement>> sequences;
  std::map<std::string, CylinderSpec> cylinders;
  std::optional<RigidityBlock> rigidity;
  std::optional<SpectralBlock> spectral;
  std::optional<PoissonBlock> poisson;
  std::optional<ReplabBlock> replab;
  std::optional<DiamondBlock> diamond;
  nlohmann::json resolved;  // the parsed document, echoed into reports
};

// Strict parse: unknown fields are rejected, stochastic blocks demand seeds,
// lattice coordinates must be exact multiples of the mesh.
WorkbenchConfig parse_config(const std::string& text);

nlohmann::json group_to_json(const GroupDescriptor& d);

// Materialized tower plus the generator certificates when applicable.
struct BuiltTower {
  Tower tower;
  std::optional<LatticeTowerResult> lattice_result;
  std::optional<DiscreteTowerResult> discrete_result;
};

BuiltTower build_tower(const TowerSpec& spec);

}  // namespace cfw
