#pragma once

#include <Eigen/Dense>

#include <map>
#include <set>
#include <vector>

#include "cfw/group.hpp"

namespace cfw {

struct RepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finitely generated Abelian group presented by generator orders (0 = Z).
struct RepGroup {
  std::vector<Int> gen_orders;

  static RepGroup from_descriptor(const GroupDescriptor& d);
  int generators() const { return static_cast<int>(gen_orders.size()); }
  bool operator==(const RepGroup&) const = default;
};

// A character as a tuple of exponents in [0,1): entry r means the generator
// acts by exp(2*pi*i*r). Exact root-of-unity arithmetic throughout.
using Character = std::vector<Rational>;

Character character_sum(const Character& a, const Character& b);

// A finite-dimensional unitary representation with commuting generators, in
// diagonalized form: each character carries its isotypic dimension.
struct ExactRep {
  RepGroup group;
  std::map<Character, Int> isotypic;

  Int dimension() const;
  std::vector<Character> spectrum() const;  // distinct characters
};

ExactRep make_rep(RepGroup group, const std::vector<std::pair<Character, Int>>& parts);

using MultiplicitySet = std::set<Int>;

MultiplicitySet multiplicity_set(const ExactRep& r);

ExactRep tensor(const ExactRep& u, const ExactRep& v);
ExactRep direct_sum(const ExactRep& u, const ExactRep& v);

// Characters sets disjoint: the hypothesis under which direct-sum
// multiplicities take unions.
bool spectrally_disjoint(const ExactRep& u, const ExactRep& v);

// The product map on the two spectra is injective: the hypothesis under
// which tensor multiplicities multiply.
bool strongly_disjoint(const ExactRep& u, const ExactRep& v);

struct TensorMultReport {
  bool hypothesis = false;          // strongly disjoint?
  MultiplicitySet computed;         // M(U (x) V), always computed
  MultiplicitySet predicted;        // M(U) * M(V) elementwise
  bool match = false;               // asserted only when hypothesis holds
};

TensorMultReport tensor_multiplicity_check(const ExactRep& u, const ExactRep& v);

// (1 (x) T) (+) (S (x) T) (+) (S (x) 1) on the constants-removed model, with
// the block-disjointness hypothesis checked exactly.
struct ProductKoopmanReport {
  ExactRep rep;
  bool blocks_disjoint = false;
  MultiplicitySet computed;
  MultiplicitySet diamond;  // M(T) u M(S)M(T) u M(S)
  bool match = false;
};

ProductKoopmanReport product_koopman(const ExactRep& s, const ExactRep& t);

ExactRep sym_power(const ExactRep& r, int n);
// (+)_{n<=N} sym^n, the truncated Fock exponential; sym^0 is the trivial
// one-dimensional representation.
ExactRep exp_truncated(const ExactRep& r, int n_max);

BigInt exp_truncated_dimension(Int dim, int n_max);  // sum of C(d+n-1, n)

// Numeric mirror: explicit commuting unitary matrices. Used as the
// eigendecomposition oracle and for conjugation-invariance checks; the exact
// path above never relies on floating point.
struct MatrixRep {
  std::vector<Eigen::MatrixXcd> generators;
};

MatrixRep materialize(const ExactRep& r, unsigned seed);  // random unitary conjugation
bool check_unitary_commuting(const MatrixRep& m, double tol);
MultiplicitySet multiplicity_set_numeric(const MatrixRep& m, double tol);

}  // namespace cfw
