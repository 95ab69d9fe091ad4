#pragma once

// Multiparameter matrices and the commutator pairing they induce on Z^n.
//
// For monomials X^a, X^b of the quantum torus the group commutator
// [X^a, X^b] is a scalar; in exponent notation it is the alternating
// biadditive form a^T M b, with one integer matrix per free generator of the
// value group and one matrix over Z/m for the torsion part.

#include <cstddef>
#include <vector>

#include "qtorus/int_matrix.hpp"
#include "qtorus/lattice.hpp"
#include "qtorus/value_group.hpp"

namespace qtorus {

/// n x n matrix (lambda_ij) with lambda_ii = 1 and lambda_ij * lambda_ji = 1,
/// written additively over a value group.
class MultiparameterMatrix {
public:
  /// Validates both invariants; throws std::invalid_argument otherwise.
  MultiparameterMatrix(std::size_t rank, ValueGroup group,
                       std::vector<std::vector<GroupElement>> entries);

  /// Builds the matrix from its strict upper triangle (i < j, 0-based); all
  /// other upper entries are the identity.
  static MultiparameterMatrix from_upper(
      std::size_t rank, ValueGroup group,
      const std::vector<std::tuple<std::size_t, std::size_t, GroupElement>>& upper);
  static MultiparameterMatrix commutative(std::size_t rank, ValueGroup group = {});

  std::size_t rank() const { return n_; }
  const ValueGroup& value_group() const { return group_; }
  const GroupElement& entry(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  bool is_commutative() const;

  friend bool operator==(const MultiparameterMatrix&, const MultiparameterMatrix&) = default;

private:
  std::size_t n_;
  ValueGroup group_;
  std::vector<std::vector<GroupElement>> entries_;
};

struct Pairing {
  std::size_t rank = 0;
  ValueGroup group;
  std::vector<IntMatrix> free_forms;  // one alternating matrix per free generator
  IntMatrix torsion_form;             // alternating mod m, entries in [0, m)
};

/// Certified dimension interval together with a commutative witness.
struct DimensionResult {
  int lower = 1;
  int upper = 1;
  bool exact = false;
  Sublattice witness;
};

Pairing pairing_of(const MultiparameterMatrix& lambda);

/// Inverse of pairing_of for pairings whose forms are alternating.
MultiparameterMatrix to_multiparameter(const Pairing& p);

GroupElement commutator(const Pairing& p, std::span<const Integer> a, std::span<const Integer> b);

bool is_commutative(const Pairing& p, const Sublattice& b);

/// Saturated common rational kernel of the free forms. Torsion constraints
/// disappear after passing to a finite index sublattice.
Sublattice radical(const Pairing& p);

bool center_is_F(const Pairing& p);

MultiparameterMatrix tensor(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                            MergeMode mode = MergeMode::shared);

MultiparameterMatrix transpose(const MultiparameterMatrix& lambda);

/// Pairing on Z^g induced by the generator rows G of b: forms G M G^T.
/// The sublattice is used as given, saturated or not.
Pairing restrict(const Pairing& p, const Sublattice& b);

}  // namespace qtorus
