// Command line front-end for the (C,F) workbench: tower validation and
// certificates, rigidity/mixing diagnostics, Poisson-suspension statistics,
// the unitary-representation lab, and the diamond set arithmetic.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cfw/diamond.hpp"
#include "cfw/run.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run_with_config(const std::string& command, const std::string& config_path,
                    const std::string& out_dir, const cfw::RunOverrides& ov) {
  try {
    return cfw::run_command(read_file(config_path), command, out_dir, ov, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cfw::kRuntimeErrorExit;
  }
}

void print_set(const cfw::MultSet& s) {
  std::cout << "{";
  for (size_t i = 0; i < s.values.size(); ++i)
    std::cout << (i ? "," : "") << s.values[i];
  std::cout << "}";
  if (s.cap) std::cout << " (cap " << *s.cap << ")";
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for (C,F) towers, spectral multiplicities and Poisson "
               "suspensions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  cfw::RunOverrides ov;
  std::uint64_t seed_override = 0;
  long trials_override = 0;
  bool no_json = false;
  bool no_csv = false;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* copt = sub->add_option("--config", config_path, "JSON config file");
    if (needs_config) copt->required();
    sub->add_option("--out", out_dir, "output directory for reports");
    sub->add_option("--seed", seed_override, "override the stochastic seed");
    sub->add_option("--trials", trials_override, "override the trial count");
    sub->add_flag("--no-json", no_json, "skip the JSON report");
    sub->add_flag("--no-csv", no_csv, "skip the CSV report");
  };

  for (const std::string name :
       {"validate", "rigidity", "spectral", "poisson", "replab", "all"})
    add_common(app.add_subcommand(name, "run the " + name + " command"), true);

  // `diamond` works either from a config or directly from flags.
  auto* dia = app.add_subcommand("diamond", "diamond set arithmetic");
  add_common(dia, false);
  auto* gen = dia->add_subcommand("gen", "fold singletons under a cap");
  std::vector<cfw::Int> ps;
  cfw::Int cap = 100;
  gen->add_option("--ps", ps, "singleton generators")->required()->delimiter(',');
  gen->add_option("--cap", cap, "output bound");
  auto* fac = dia->add_subcommand("factor", "find singleton factorizations");
  std::vector<cfw::Int> fset;
  fac->add_option("--set", fset, "target set")->required()->delimiter(',');
  auto* chk = dia->add_subcommand("check", "multiplicative subsemigroup test");
  std::vector<cfw::Int> cset;
  cfw::Int bound = 100;
  chk->add_option("--set", cset, "candidate set")->required()->delimiter(',');
  chk->add_option("--bound", bound, "truncation bound");

  CLI11_PARSE(app, argc, argv);

  if (seed_override != 0) ov.seed = seed_override;
  if (trials_override != 0) ov.trials = trials_override;
  ov.write_json = !no_json;
  ov.write_csv = !no_csv;

  try {
    for (const std::string name :
         {"validate", "rigidity", "spectral", "poisson", "replab", "all"})
      if (app.got_subcommand(name)) return run_with_config(name, config_path, out_dir, ov);

    if (app.got_subcommand("diamond")) {
      if (gen->parsed()) {
        print_set(cfw::generate(ps, cap));
        return cfw::kOk;
      }
      if (fac->parsed()) {
        const auto factorizations = cfw::factor(cfw::MultSet::of(fset));
        for (const auto& f : factorizations) {
          std::cout << "[";
          for (size_t i = 0; i < f.size(); ++i) std::cout << (i ? "," : "") << f[i];
          std::cout << "]\n";
        }
        if (factorizations.empty()) std::cout << "no exact finite factorization\n";
        return cfw::kOk;
      }
      if (chk->parsed()) {
        const bool ok = cfw::is_mult_subsemigroup(cfw::MultSet::of(cset), bound);
        std::cout << (ok ? "true" : "false") << "\n";
        return cfw::kOk;
      }
      if (config_path.empty()) {
        std::cerr << "diamond needs a subcommand (gen/factor/check) or --config\n";
        return cfw::kConfigErrorExit;
      }
      return run_with_config("diamond", config_path, out_dir, ov);
    }
  } catch (const cfw::DiamondError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cfw::kConfigErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cfw::kRuntimeErrorExit;
  }
  return cfw::kConfigErrorExit;
}
