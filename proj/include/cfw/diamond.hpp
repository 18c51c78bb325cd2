#pragma once

#include <optional>
#include <vector>

#include "cfw/rational.hpp"

namespace cfw {

struct DiamondError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite set of integers >= 1 under the operation E <> F = E u F u EF.
// Sets produced under a cap carry the cap so truncation is never silent.
struct MultSet {
  std::vector<Int> values;  // sorted, unique, >= 1
  std::optional<Int> cap;

  static MultSet of(std::vector<Int> values);
  bool operator==(const MultSet&) const = default;
};

MultSet diamond(const MultSet& e, const MultSet& f);

// Left fold of diamond over singletons {p_1} <> {p_2} <> ..., truncated at
// the cap (recorded in the result). Order-independent.
MultSet generate(const std::vector<Int>& ps, Int cap);

// All multisets [p_1,...,p_k] of integers >= 2 whose diamond product equals
// e exactly (no cap). Bounded exhaustive search over divisors of max(e).
std::vector<std::vector<Int>> factor(const MultSet& e);

// E is multiplicatively closed below the bound: ab <= bound implies ab in E.
bool is_mult_subsemigroup(const MultSet& e, Int bound);

}  // namespace cfw
