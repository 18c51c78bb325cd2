#include "cfw/replab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cfw {

namespace {

Rational mod_one(const Rational& r) {
  const BigInt f = floor_div(r.get_num(), r.get_den());
  return r - Rational(f);
}

void collect_orders(const GroupDescriptor& d, std::vector<Int>& out) {
  switch (d.kind) {
    case GroupKind::FreeAbelian:
      for (int i = 0; i < d.rank; ++i) out.push_back(0);
      break;
    case GroupKind::Cyclic:
      out.push_back(d.order);
      break;
    case GroupKind::DirectSum:
      for (const auto& p : d.parts) collect_orders(p, out);
      break;
    case GroupKind::LatticeR:
    case GroupKind::Semidirect:
      throw RepError(
          "representation lab needs a finitely generated Abelian descriptor");
  }
}

}  // namespace

RepGroup RepGroup::from_descriptor(const GroupDescriptor& d) {
  RepGroup g;
  collect_orders(d, g.gen_orders);
  return g;
}

Character character_sum(const Character& a, const Character& b) {
  if (a.size() != b.size()) throw RepError("character rank mismatch");
  Character out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = mod_one(a[i] + b[i]);
  return out;
}

Int ExactRep::dimension() const {
  Int d = 0;
  for (const auto& [chi, mult] : isotypic) d += mult;
  return d;
}

std::vector<Character> ExactRep::spectrum() const {
  std::vector<Character> out;
  out.reserve(isotypic.size());
  for (const auto& [chi, mult] : isotypic) out.push_back(chi);
  return out;
}

ExactRep make_rep(RepGroup group, const std::vector<std::pair<Character, Int>>& parts) {
  ExactRep r;
  r.group = std::move(group);
  for (const auto& [chi, mult] : parts) {
    if (static_cast<int>(chi.size()) != r.group.generators())
      throw RepError("character rank does not match the group");
    if (mult < 1) throw RepError("isotypic dimension must be >= 1");
    Character reduced(chi.size());
    for (size_t i = 0; i < chi.size(); ++i) {
      reduced[i] = mod_one(chi[i]);
      const Int q = r.group.gen_orders[i];
      if (q > 0) {
        const Rational check = reduced[i] * q;
        if (check.get_den() != 1)
          throw RepError("character incompatible with a generator of finite order");
      }
    }
    r.isotypic[reduced] += mult;
  }
  if (r.isotypic.empty()) throw RepError("representation must be nonzero");
  return r;
}

MultiplicitySet multiplicity_set(const ExactRep& r) {
  MultiplicitySet out;
  for (const auto& [chi, mult] : r.isotypic) out.insert(mult);
  return out;
}

ExactRep tensor(const ExactRep& u, const ExactRep& v) {
  if (!(u.group == v.group)) throw RepError("tensor needs matching groups");
  ExactRep r;
  r.group = u.group;
  for (const auto& [cu, mu] : u.isotypic)
    for (const auto& [cv, mv] : v.isotypic) r.isotypic[character_sum(cu, cv)] += mu * mv;
  return r;
}

ExactRep direct_sum(const ExactRep& u, const ExactRep& v) {
  if (!(u.group == v.group)) throw RepError("direct sum needs matching groups");
  ExactRep r = u;
  for (const auto& [cv, mv] : v.isotypic) r.isotypic[cv] += mv;
  return r;
}

bool spectrally_disjoint(const ExactRep& u, const ExactRep& v) {
  for (const auto& [cu, mu] : u.isotypic)
    if (v.isotypic.count(cu)) return false;
  return true;
}

bool strongly_disjoint(const ExactRep& u, const ExactRep& v) {
  std::set<Character> products;
  for (const auto& [cu, mu] : u.isotypic)
    for (const auto& [cv, mv] : v.isotypic) products.insert(character_sum(cu, cv));
  return products.size() == u.isotypic.size() * v.isotypic.size();
}

TensorMultReport tensor_multiplicity_check(const ExactRep& u, const ExactRep& v) {
  TensorMultReport rep;
  rep.hypothesis = strongly_disjoint(u, v);
  rep.computed = multiplicity_set(tensor(u, v));
  for (Int a : multiplicity_set(u))
    for (Int b : multiplicity_set(v)) rep.predicted.insert(a * b);
  rep.match = rep.computed == rep.predicted;
  return rep;
}

ProductKoopmanReport product_koopman(const ExactRep& s, const ExactRep& t) {
  if (!(s.group == t.group)) throw RepError("product needs matching groups");
  ProductKoopmanReport rep;
  const ExactRep st = tensor(s, t);
  rep.blocks_disjoint = spectrally_disjoint(t, st) && spectrally_disjoint(s, st) &&
                        spectrally_disjoint(s, t);
  rep.rep = direct_sum(direct_sum(t, st), s);
  rep.computed = multiplicity_set(rep.rep);
  const MultiplicitySet ms = multiplicity_set(s);
  const MultiplicitySet mt = multiplicity_set(t);
  rep.diamond = mt;
  for (Int a : ms) rep.diamond.insert(a);
  for (Int a : ms)
    for (Int b : mt) rep.diamond.insert(a * b);
  rep.match = rep.computed == rep.diamond;
  return rep;
}

ExactRep sym_power(const ExactRep& r, int n) {
  if (n < 0) throw RepError("symmetric power needs n >= 0");
  ExactRep out;
  out.group = r.group;
  if (n == 0) {
    out.isotypic[Character(static_cast<size_t>(r.group.generators()),
                           Rational(0))] = 1;
    return out;
  }
  // Expanded eigenvalue list (characters with multiplicity); the symmetric
  // power runs over multisets of basis indices.
  std::vector<Character> eigen;
  for (const auto& [chi, mult] : r.isotypic)
    for (Int i = 0; i < mult; ++i) eigen.push_back(chi);
  const size_t d = eigen.size();
  if (d == 0) throw RepError("empty representation");
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  while (true) {
    Character chi(static_cast<size_t>(r.group.generators()), Rational(0));
    for (size_t j = 0; j < idx.size(); ++j) chi = character_sum(chi, eigen[idx[j]]);
    out.isotypic[chi] += 1;
    // next nondecreasing index tuple
    size_t j = idx.size();
    while (j > 0) {
      --j;
      if (idx[j] + 1 < d) {
        ++idx[j];
        for (size_t k = j + 1; k < idx.size(); ++k) idx[k] = idx[j];
        break;
      }
      if (j == 0) return out;
    }
  }
}

ExactRep exp_truncated(const ExactRep& r, int n_max) {
  if (n_max < 0) throw RepError("truncation order must be >= 0");
  ExactRep out = sym_power(r, 0);
  for (int n = 1; n <= n_max; ++n) out = direct_sum(out, sym_power(r, n));
  return out;
}

BigInt exp_truncated_dimension(Int dim, int n_max) {
  BigInt total = 0;
  for (int n = 0; n <= n_max; ++n) {
    // C(dim + n - 1, n)
    BigInt c = 1;
    for (int i = 1; i <= n; ++i) {
      c *= dim + i - 1;
      c /= i;
    }
    total += c;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Numeric mirror

namespace {

std::complex<double> unit_phase(const Rational& r) {
  const double angle = 2.0 * M_PI * to_double(r);
  return {std::cos(angle), std::sin(angle)};
}

Eigen::MatrixXcd random_unitary(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  return q;
}

}  // namespace

MatrixRep materialize(const ExactRep& r, unsigned seed) {
  std::vector<Character> eigen;
  for (const auto& [chi, mult] : r.isotypic)
    for (Int i = 0; i < mult; ++i) eigen.push_back(chi);
  const Eigen::Index d = static_cast<Eigen::Index>(eigen.size());
  const Eigen::MatrixXcd q = random_unitary(d, seed);
  MatrixRep m;
  for (int k = 0; k < r.group.generators(); ++k) {
    Eigen::VectorXcd diag(d);
    for (Eigen::Index i = 0; i < d; ++i)
      diag(i) = unit_phase(eigen[static_cast<size_t>(i)][static_cast<size_t>(k)]);
    m.generators.push_back(q * diag.asDiagonal() * q.adjoint());
  }
  return m;
}

bool check_unitary_commuting(const MatrixRep& m, double tol) {
  for (const auto& u : m.generators) {
    const Eigen::Index n = u.rows();
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm() > tol) return false;
  }
  for (size_t i = 0; i < m.generators.size(); ++i)
    for (size_t j = i + 1; j < m.generators.size(); ++j)
      if ((m.generators[i] * m.generators[j] - m.generators[j] * m.generators[i])
              .norm() > tol)
        return false;
  return true;
}

MultiplicitySet multiplicity_set_numeric(const MatrixRep& m, double tol) {
  if (m.generators.empty()) throw RepError("numeric path needs generators");
  if (!check_unitary_commuting(m, tol * 100))
    throw RepError("generators are not commuting unitaries within tolerance");
  const Eigen::Index n = m.generators.front().rows();

  // A random Hermitian word in the generators is generically nondegenerate
  // across distinct joint characters; its eigenvectors then carry exact
  // characters, read off through Rayleigh quotients. Retry with fresh
  // coefficients if a vector fails the unimodularity sanity check.
  for (unsigned attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull + attempt);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& u : m.generators) {
      const std::complex<double> c(gauss(rng), gauss(rng));
      h += c * u + std::conj(c) * u.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) continue;

    bool clean = true;
    std::vector<std::vector<std::complex<double>>> chars(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n && clean; ++i) {
      const Eigen::VectorXcd v = es.eigenvectors().col(i);
      for (const auto& u : m.generators) {
        const std::complex<double> lambda = v.adjoint() * (u * v);
        if (std::abs(std::abs(lambda) - 1.0) > 1e-6) {
          clean = false;
          break;
        }
        chars[static_cast<size_t>(i)].push_back(lambda);
      }
    }
    if (!clean) continue;

    // Greedy clustering of the character tuples.
    std::vector<Int> counts;
    std::vector<std::vector<std::complex<double>>> reps;
    for (const auto& c : chars) {
      bool placed = false;
      for (size_t k = 0; k < reps.size() && !placed; ++k) {
        double dist = 0;
        for (size_t g = 0; g < c.size(); ++g)
          dist = std::max(dist, std::abs(c[g] - reps[k][g]));
        if (dist <= tol) {
          ++counts[k];
          placed = true;
        }
      }
      if (!placed) {
        reps.push_back(c);
        counts.push_back(1);
      }
    }
    return MultiplicitySet(counts.begin(), counts.end());
  }
  throw RepError("joint diagonalization failed to stabilize");
}

}  // namespace cfw
