#include "cfw/diamond.hpp"

#include <algorithm>
#include <set>

namespace cfw {

MultSet MultSet::of(std::vector<Int> values) {
  for (Int v : values)
    if (v < 1) throw DiamondError("multiplicity values must be >= 1");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return MultSet{std::move(values), std::nullopt};
}

MultSet diamond(const MultSet& e, const MultSet& f) {
  std::set<Int> out(e.values.begin(), e.values.end());
  out.insert(f.values.begin(), f.values.end());
  std::optional<Int> cap;
  if (e.cap) cap = *e.cap;
  if (f.cap) cap = cap ? std::min(*cap, *f.cap) : *f.cap;
  for (Int a : e.values)
    for (Int b : f.values) {
      const Int prod = a * b;
      if (!cap || prod <= *cap) out.insert(prod);
    }
  MultSet r{std::vector<Int>(out.begin(), out.end()), cap};
  if (cap)
    std::erase_if(r.values, [&](Int v) { return v > *cap; });
  return r;
}

MultSet generate(const std::vector<Int>& ps, Int cap) {
  if (ps.empty()) throw DiamondError("generate needs at least one singleton");
  for (Int p : ps) {
    if (p < 1) throw DiamondError("singletons must be >= 1");
    if (p > cap) throw DiamondError("cap below a generating singleton");
  }
  MultSet acc{{ps.front()}, cap};
  for (size_t i = 1; i < ps.size(); ++i)
    acc = diamond(acc, MultSet{{ps[i]}, cap});
  return acc;
}

namespace {

// Uncapped diamond fold for round-trip verification.
MultSet fold_exact(const std::vector<Int>& ps) {
  MultSet acc = MultSet::of({ps.front()});
  for (size_t i = 1; i < ps.size(); ++i) acc = diamond(acc, MultSet::of({ps[i]}));
  return acc;
}

void search(const MultSet& target, const std::vector<Int>& divisors, size_t from,
            std::vector<Int>& current, size_t max_len,
            std::vector<std::vector<Int>>& out) {
  if (!current.empty() && fold_exact(current).values == target.values)
    out.push_back(current);
  if (current.size() == max_len) return;
  for (size_t i = from; i < divisors.size(); ++i) {
    current.push_back(divisors[i]);
    // prune: the generated set may only grow inside the target
    const MultSet gen = fold_exact(current);
    const bool inside = std::includes(target.values.begin(), target.values.end(),
                                      gen.values.begin(), gen.values.end());
    if (inside) search(target, divisors, i, current, max_len, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Int>> factor(const MultSet& e) {
  if (e.values.empty()) return {};
  if (e.values.size() == 1 && e.values[0] == 1) return {{1}};
  if (e.values.front() == 1) {
    // {1} <> X = {1} u X, so a target containing 1 factors through its rest.
    MultSet rest{std::vector<Int>(e.values.begin() + 1, e.values.end()), e.cap};
    auto subs = factor(rest);
    for (auto& s : subs) s.insert(s.begin(), 1);
    return subs;
  }
  // Candidate singleton factors divide some element of the target.
  const Int mx = e.values.back();
  std::vector<Int> divisors;
  for (Int d = 2; d <= mx; ++d) {
    bool divides = false;
    for (Int v : e.values)
      if (v % d == 0) divides = true;
    if (divides) divisors.push_back(d);
  }
  // Multiset length is bounded by log2(max): each extra factor multiplies
  // the largest generated element by at least 2.
  size_t max_len = 0;
  for (Int v = mx; v > 1; v /= 2) ++max_len;
  std::vector<std::vector<Int>> out;
  std::vector<Int> current;
  search(e, divisors, 0, current, max_len, out);
  return out;
}

bool is_mult_subsemigroup(const MultSet& e, Int bound) {
  for (Int a : e.values)
    for (Int b : e.values) {
      const Int prod = a * b;
      if (prod <= bound &&
          !std::binary_search(e.values.begin(), e.values.end(), prod))
        return false;
    }
  return true;
}

}  // namespace cfw
