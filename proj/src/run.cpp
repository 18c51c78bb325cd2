#include "cfw/run.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "cfw/diamond.hpp"
#include "cfw/koopman.hpp"
#include "cfw/poisson.hpp"
#include "cfw/replab.hpp"

namespace cfw {

namespace {

using nlohmann::json;

json element_json(const GroupElement& e) {
  json a = json::array();
  for (Int v : e.coords) a.push_back(v);
  return a;
}

json validation_json(const ValidationReport& rep) {
  json out;
  out["all_pass"] = rep.all_pass();
  json levels = json::array();
  for (const auto& lv : rep.levels) {
    levels.push_back({{"level", lv.level},
                      {"cf2", lv.cf2},
                      {"cf3", lv.cf3},
                      {"cf4", lv.cf4},
                      {"cffin_factor", rational_to_string(lv.cffin_factor)}});
  }
  out["levels"] = levels;
  json factors = json::array();
  for (const auto& f : rep.measure.factors) factors.push_back(rational_to_string(f));
  json partials = json::array();
  for (const auto& p : rep.measure.partial_products)
    partials.push_back(rational_to_string(p));
  out["measure"] = {{"factors", factors},
                    {"partial_products", partials},
                    {"verdict", verdict_to_string(rep.measure.verdict)},
                    {"note", rep.measure.note}};
  json folner = json::array();
  for (const auto& row : rep.folner) {
    json ratios = json::array();
    for (const auto& r : row.ratios) ratios.push_back(rational_to_string(r));
    folner.push_back({{"probe", element_json(row.probe)}, {"ratios", ratios}});
  }
  out["folner_diagnostic"] = folner;
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

void write_report(const std::string& out_dir, const std::string& command,
                  const json& report, const std::string& csv, const RunOverrides& ov,
                  std::ostream& log) {
  if (out_dir.empty()) {
    log << report.dump(2) << "\n";
    return;
  }
  std::filesystem::create_directories(out_dir);
  if (ov.write_json) {
    const auto path = std::filesystem::path(out_dir) / (command + ".json");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << report.dump(2) << "\n";
    log << "wrote " << path.string() << "\n";
  }
  if (ov.write_csv && !csv.empty()) {
    const auto path = std::filesystem::path(out_dir) / (command + ".csv");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << csv;
    log << "wrote " << path.string() << "\n";
  }
}

struct BlockOutcome {
  json report;
  std::string csv;
  bool asserted_pass = true;
};

CylinderSet resolve_cylinder(const Tower& t, const WorkbenchConfig& cfg,
                             const std::string& name) {
  const auto& spec = cfg.cylinders.at(name);
  return make_cylinder(t, spec.level, spec.base);
}

BlockOutcome run_validate(const WorkbenchConfig& cfg, const BuiltTower& bt) {
  BlockOutcome out;
  std::vector<GroupElement> probes;
  for (const auto& [name, seq] : cfg.sequences)
    for (const auto& e : seq)
      if (probes.size() < 16) probes.push_back(e);
  const auto rep = validate_tower(bt.tower, probes);
  out.report = validation_json(rep);
  out.asserted_pass = rep.all_pass();

  std::ostringstream csv;
  csv << "level,cf2,cf3,cf4,cffin_factor\n";
  for (const auto& lv : rep.levels)
    csv << lv.level << "," << lv.cf2 << "," << lv.cf3 << "," << lv.cf4 << ","
        << csv_escape(rational_to_string(lv.cffin_factor)) << "\n";
  out.csv = csv.str();

  if (bt.lattice_result) {
    json certs = json::array();
    for (const auto& c : bt.lattice_result->certificates) {
      certs.push_back({{"level", c.level},
                       {"k_index", c.k_index},
                       {"h", c.h},
                       {"w_adjusted", c.w_adjusted},
                       {"cffin_factor", rational_to_string(c.cffin_factor)},
                       {"cffin_bound", rational_to_string(c.cffin_bound)},
                       {"rigidity_ratio", rational_to_string(c.rigidity_ratio)}});
    }
    out.report["lattice_certificates"] = certs;
  }
  if (bt.discrete_result) {
    json certs = json::array();
    for (const auto& c : bt.discrete_result->certificates) {
      certs.push_back({{"level", c.level},
                       {"k_index", c.k_index},
                       {"h", c.h},
                       {"subgroup_case", c.subgroup_case},
                       {"rigidity_ratio", rational_to_string(c.rigidity_ratio)},
                       {"independent", c.independent},
                       {"growth_factor", rational_to_string(c.growth_factor)}});
    }
    out.report["discrete_certificates"] = certs;
    out.report["classification"] =
        good_case_to_string(bt.discrete_result->classification.kind);
  }
  return out;
}

BlockOutcome run_rigidity(const WorkbenchConfig& cfg, const BuiltTower& bt) {
  BlockOutcome out;
  const auto& block = *cfg.rigidity;
  const auto& seq = cfg.sequences.at(block.sequence);
  std::vector<CylinderSet> cylinders;
  for (const auto& name : block.cylinders)
    cylinders.push_back(resolve_cylinder(bt.tower, cfg, name));
  std::vector<int> levels = block.work_levels;
  if (levels.empty())
    for (size_t i = 0; i < seq.size(); ++i)
      levels.push_back(std::min<int>(static_cast<int>(i) + 1, bt.tower.depth()));
  if (levels.size() != seq.size())
    throw std::runtime_error("rigidity block: work_levels size mismatch");
  const auto rows = rigidity_diagnostic(bt.tower, seq, cylinders, levels);

  json jrows = json::array();
  std::ostringstream csv;
  csv << "index,element,work_level,max_symdiff\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    json per = json::array();
    for (const auto& v : rows[i].per_cylinder) per.push_back(rational_to_string(v));
    jrows.push_back({{"element", element_json(rows[i].element)},
                     {"work_level", rows[i].work_level},
                     {"per_cylinder", per},
                     {"max", rational_to_string(rows[i].max_value)}});
    csv << i << "," << csv_escape(element_to_string(rows[i].element)) << ","
        << rows[i].work_level << "," << csv_escape(rational_to_string(rows[i].max_value))
        << "\n";
  }
  out.report["rows"] = jrows;
  out.report["note"] = "diagnostic only: operator convergence is asymptotic";
  out.csv = csv.str();
  return out;
}

BlockOutcome run_spectral(const WorkbenchConfig& cfg, const BuiltTower& bt) {
  BlockOutcome out;
  const auto& block = *cfg.spectral;
  const auto& seq = cfg.sequences.at(block.sequence);
  std::vector<std::pair<CylinderSet, CylinderSet>> pairs;
  for (const auto& [a, b] : block.pairs)
    pairs.emplace_back(resolve_cylinder(bt.tower, cfg, a),
                       resolve_cylinder(bt.tower, cfg, b));
  const auto rows = mixing_diagnostic(bt.tower, seq, pairs, block.level);
  json jrows = json::array();
  std::ostringstream csv;
  csv << "index,element,max_deviation\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    json per = json::array();
    for (const auto& v : rows[i].per_pair) per.push_back(rational_to_string(v));
    jrows.push_back({{"element", element_json(rows[i].element)},
                     {"per_pair", per},
                     {"max", rational_to_string(rows[i].max_value)}});
    csv << i << "," << csv_escape(element_to_string(rows[i].element)) << ","
        << csv_escape(rational_to_string(rows[i].max_value)) << "\n";
  }
  out.report["rows"] = jrows;
  out.report["note"] = "diagnostic only: weak-operator convergence is asymptotic";
  out.csv = csv.str();
  return out;
}

BlockOutcome run_poisson(const WorkbenchConfig& cfg, const BuiltTower& bt,
                         const RunOverrides& ov) {
  BlockOutcome out;
  PoissonBlock block = *cfg.poisson;
  if (ov.seed) block.seed = *ov.seed;
  if (ov.trials) block.trials = *ov.trials;

  SuspensionLab lab(bt.tower, block.window_level, block.intensity_scale, block.seed);
  out.report["rng"] = CounterRng::kName;
  out.report["seed"] = block.seed;
  out.report["trials"] = block.trials;
  out.report["window_measure"] = rational_to_string(lab.window_measure());

  std::ostringstream csv;
  csv << "statistic,value,pass\n";

  const CylinderSet a = resolve_cylinder(bt.tower, cfg, block.set_a);
  const auto law = verify_poisson_law(lab, a, block.trials, block.tv_tolerance);
  out.report["law"] = {{"mu", law.mu},
                       {"tv_distance", law.tv_distance},
                       {"empirical_mean", law.empirical_mean},
                       {"empirical_var", law.empirical_var},
                       {"p_zero", law.p_zero},
                       {"tolerance", law.tolerance},
                       {"mean_ok", law.mean_ok},
                       {"var_ok", law.var_ok},
                       {"pass", law.pass}};
  out.asserted_pass = law.pass && law.mean_ok && law.var_ok;
  csv << "tv_distance," << law.tv_distance << "," << law.pass << "\n";

  if (!block.set_b.empty()) {
    const CylinderSet b = resolve_cylinder(bt.tower, cfg, block.set_b);
    const auto ind = verify_independence(lab, a, b, block.trials, block.cov_tolerance);
    out.report["independence"] = {{"covariance", ind.covariance},
                                  {"cov_tolerance", ind.cov_tolerance},
                                  {"chi_square", ind.chi_square},
                                  {"chi_critical", ind.chi_critical},
                                  {"chi_dof", ind.chi_dof},
                                  {"additivity_ok", ind.additivity_ok},
                                  {"pass", ind.pass}};
    out.asserted_pass = out.asserted_pass && ind.pass;
    csv << "covariance," << ind.covariance << "," << ind.pass << "\n";
  }

  if (!block.rigidity_sequence.empty()) {
    const auto& seq = cfg.sequences.at(block.rigidity_sequence);
    const auto rig = verify_rigidity_suspension(lab, seq, a, block.trials);
    json rows = json::array();
    for (const auto& row : rig.rows) {
      rows.push_back({{"element", element_json(row.element)},
                      {"change_probability", row.change_probability},
                      {"defect_fraction", row.defect_fraction},
                      {"abstained", row.abstained}});
      csv << "suspension_rigidity," << row.change_probability << ",\n";
    }
    // convergence tables are diagnostics and never gate the exit code
    out.report["suspension_rigidity"] = rows;
  }
  out.csv = csv.str();
  return out;
}

BlockOutcome run_replab(const WorkbenchConfig& cfg, const RunOverrides& ov) {
  BlockOutcome out;
  ReplabBlock block = *cfg.replab;
  if (ov.seed) block.seed = *ov.seed;
  const auto res = replab_suite(block.seed, block.cases, block.prime_order);
  out.report = {{"seed", block.seed},
                {"cases", res.cases},
                {"union_checks", res.union_checks},
                {"union_failures", res.union_failures},
                {"tensor_checks", res.tensor_checks},
                {"tensor_failures", res.tensor_failures},
                {"diamond_checks", res.diamond_checks},
                {"diamond_failures", res.diamond_failures},
                {"paper_instances_ok", res.paper_instances_ok},
                {"pass", res.pass()}};
  out.asserted_pass = res.pass();
  std::ostringstream csv;
  csv << "law,checks,failures\n";
  csv << "union," << res.union_checks << "," << res.union_failures << "\n";
  csv << "tensor," << res.tensor_checks << "," << res.tensor_failures << "\n";
  csv << "diamond," << res.diamond_checks << "," << res.diamond_failures << "\n";
  out.csv = csv.str();
  return out;
}

BlockOutcome run_diamond(const WorkbenchConfig& cfg) {
  BlockOutcome out;
  const auto& block = *cfg.diamond;
  std::ostringstream csv;
  csv << "operation,input,output\n";
  if (!block.ps.empty()) {
    const MultSet gen = generate(block.ps, block.cap);
    json vals = json::array();
    for (Int v : gen.values) vals.push_back(v);
    out.report["generate"] = {{"ps", block.ps}, {"cap", block.cap}, {"values", vals}};
    std::ostringstream in;
    for (size_t i = 0; i < block.ps.size(); ++i) in << (i ? " " : "") << block.ps[i];
    std::ostringstream o;
    for (size_t i = 0; i < gen.values.size(); ++i) o << (i ? " " : "") << gen.values[i];
    csv << "generate," << csv_escape(in.str()) << "," << csv_escape(o.str()) << "\n";
  }
  if (block.factor_set) {
    const auto factorizations = factor(MultSet::of(*block.factor_set));
    json fs = json::array();
    for (const auto& f : factorizations) {
      json one = json::array();
      for (Int v : f) one.push_back(v);
      fs.push_back(one);
    }
    out.report["factor"] = {{"set", *block.factor_set}, {"factorizations", fs}};
  }
  if (block.check) {
    const bool ok = is_mult_subsemigroup(MultSet::of(block.check->first),
                                         block.check->second);
    out.report["check"] = {{"set", block.check->first},
                           {"bound", block.check->second},
                           {"is_mult_subsemigroup", ok}};
  }
  out.csv = csv.str();
  return out;
}

}  // namespace

ReplabSuiteResult replab_suite(std::uint64_t seed, int cases, Int prime_order) {
  ReplabSuiteResult res;
  res.cases = cases;
  std::mt19937_64 rng(seed);
  const RepGroup z{{0}};

  auto draw_rep = [&](std::set<Int>& used, int max_chars) {
    std::vector<std::pair<Character, Int>> parts;
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_chars));
    for (int i = 0; i < n; ++i) {
      Int k;
      do {
        k = 1 + static_cast<Int>(rng() % static_cast<unsigned long>(prime_order - 1));
      } while (!used.insert(k).second);
      parts.push_back({Character{make_rational(k, prime_order)},
                       1 + static_cast<Int>(rng() % 4)});
    }
    return make_rep(z, parts);
  };

  for (int c = 0; c < cases; ++c) {
    std::set<Int> used;
    const ExactRep u = draw_rep(used, 3);
    const ExactRep v = draw_rep(used, 3);

    if (spectrally_disjoint(u, v)) {
      ++res.union_checks;
      MultiplicitySet expected = multiplicity_set(u);
      for (Int x : multiplicity_set(v)) expected.insert(x);
      if (multiplicity_set(direct_sum(u, v)) != expected) ++res.union_failures;
    }
    if (strongly_disjoint(u, v)) {
      ++res.tensor_checks;
      if (!tensor_multiplicity_check(u, v).match) ++res.tensor_failures;
    }
    const auto pk = product_koopman(u, v);
    if (pk.blocks_disjoint) {
      ++res.diamond_checks;
      // cross-module route: the diamond module must reproduce the same set
      MultSet ds = diamond(MultSet::of({multiplicity_set(u).begin(),
                                        multiplicity_set(u).end()}),
                           MultSet::of({multiplicity_set(v).begin(),
                                        multiplicity_set(v).end()}));
      const MultiplicitySet via_diamond(ds.values.begin(), ds.values.end());
      if (!pk.match || pk.computed != via_diamond) ++res.diamond_failures;
    }
  }

  // the fixed instances with (p, q, r) = (2, 3, 5)
  {
    auto rep_of = [&](Int dim, Int k) {
      return make_rep(z, {{Character{make_rational(k, prime_order)}, dim}});
    };
    const auto s2 = rep_of(2, 101);
    const auto t3 = rep_of(3, 211);
    const auto r5 = rep_of(5, 307);
    const auto pq = product_koopman(s2, t3);
    const auto pqr = product_koopman(pq.rep, r5);
    const MultiplicitySet want_pq = {2, 3, 6};
    const MultiplicitySet want_pqr = {2, 3, 5, 6, 10, 15, 30};
    res.paper_instances_ok = pq.blocks_disjoint && pq.match && pq.computed == want_pq &&
                             pqr.blocks_disjoint && pqr.match &&
                             pqr.computed == want_pqr;
  }
  return res;
}

int run_command(const std::string& config_text, const std::string& command,
                const std::string& out_dir, const RunOverrides& overrides,
                std::ostream& log) {
  WorkbenchConfig cfg;
  try {
    cfg = parse_config(config_text);
  } catch (const ConfigError& e) {
    for (const auto& issue : e.issues) log << "config error: " << issue << "\n";
    return kConfigErrorExit;
  }

  try {
    json report;
    report["schema_version"] = cfg.schema_version;
    report["command"] = command;
    report["config"] = cfg.resolved;

    std::optional<BuiltTower> bt;
    auto need_tower = [&]() -> BuiltTower& {
      if (!bt) {
        if (!cfg.tower)
          throw std::runtime_error("this command needs a tower in the config");
        bt = build_tower(*cfg.tower);
      }
      return *bt;
    };

    bool all_pass = true;
    std::string csv;
    auto apply = [&](const std::string& name, BlockOutcome outcome) {
      report["results"][name] = std::move(outcome.report);
      all_pass = all_pass && outcome.asserted_pass;
      if (csv.empty()) csv = std::move(outcome.csv);
    };

    if (command == "validate") {
      apply("validate", run_validate(cfg, need_tower()));
    } else if (command == "rigidity") {
      if (!cfg.rigidity) throw std::runtime_error("config has no rigidity block");
      apply("rigidity", run_rigidity(cfg, need_tower()));
    } else if (command == "spectral") {
      if (!cfg.spectral) throw std::runtime_error("config has no spectral block");
      apply("spectral", run_spectral(cfg, need_tower()));
    } else if (command == "poisson") {
      if (!cfg.poisson) throw std::runtime_error("config has no poisson block");
      apply("poisson", run_poisson(cfg, need_tower(), overrides));
    } else if (command == "replab") {
      if (!cfg.replab) throw std::runtime_error("config has no replab block");
      apply("replab", run_replab(cfg, overrides));
    } else if (command == "diamond") {
      if (!cfg.diamond) throw std::runtime_error("config has no diamond block");
      apply("diamond", run_diamond(cfg));
    } else if (command == "all") {
      if (cfg.tower) apply("validate", run_validate(cfg, need_tower()));
      if (cfg.rigidity) apply("rigidity", run_rigidity(cfg, need_tower()));
      if (cfg.spectral) apply("spectral", run_spectral(cfg, need_tower()));
      if (cfg.poisson) apply("poisson", run_poisson(cfg, need_tower(), overrides));
      if (cfg.replab) apply("replab", run_replab(cfg, overrides));
      if (cfg.diamond) apply("diamond", run_diamond(cfg));
    } else {
      log << "unknown command: " << command << "\n";
      return kConfigErrorExit;
    }

    report["all_assertions_pass"] = all_pass;
    write_report(out_dir, command, report, csv, overrides, log);
    return all_pass ? kOk : kAssertionFailed;
  } catch (const ConfigError& e) {
    for (const auto& issue : e.issues) log << "config error: " << issue << "\n";
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kRuntimeErrorExit;
  }
}

}  // namespace cfw
