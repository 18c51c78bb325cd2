#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cfw/config.hpp"
#include "cfw/rational.hpp"

namespace cfw {

enum ExitCode : int {
  kOk = 0,
  kAssertionFailed = 1,
  kConfigErrorExit = 2,
  kRuntimeErrorExit = 3,
};

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<int> depth;
  bool write_json = true;
  bool write_csv = true;
};

// Randomized exact-representation suite: union / tensor / diamond laws over
// root-of-unity representations, plus the fixed instances {p}<>{q} and
// {p}<>{q}<>{r} for (2,3,5).
struct ReplabSuiteResult {
  int cases = 0;
  int union_checks = 0;
  int union_failures = 0;
  int tensor_checks = 0;
  int tensor_failures = 0;
  int diamond_checks = 0;
  int diamond_failures = 0;
  bool paper_instances_ok = false;

  bool pass() const {
    return union_failures == 0 && tensor_failures == 0 && diamond_failures == 0 &&
           paper_instances_ok && union_checks > 0 && tensor_checks > 0 &&
           diamond_checks > 0;
  }
};

ReplabSuiteResult replab_suite(std::uint64_t seed, int cases, Int prime_order);

// Parses the config, executes one command (validate | rigidity | spectral |
// poisson | replab | diamond | all), writes <out_dir>/<command>.json and .csv
// when requested, and returns the exit code: 0 = all assertions pass,
// 1 = assertion failure, 2 = config error, 3 = runtime error. Diagnostics
// (Folner ratios, convergence tables) never affect the exit code.
int run_command(const std::string& config_text, const std::string& command,
                const std::string& out_dir, const RunOverrides& overrides,
                std::ostream& log);

}  // namespace cfw
