#pragma once

// Exact lattice algebra over Z: Hermite normal form, rank, saturated kernels
// and sublattices of Z^n.

#include <cstddef>
#include <vector>

#include "qtorus/int_matrix.hpp"

namespace qtorus {

struct HermiteResult {
  IntMatrix H;  // row Hermite normal form, zero rows kept at the bottom
  IntMatrix U;  // unimodular, U * M = H
  std::size_t rank = 0;
};

/// Row-style Hermite normal form. Pivots are positive, and entries above a
/// pivot lie in [0, pivot).
HermiteResult hnf(const IntMatrix& m);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// A subgroup B of Z^n, stored by its generators in row Hermite form with the
/// zero rows removed. Two sublattices are equal iff their stored forms are.
class Sublattice {
public:
  explicit Sublattice(std::size_t ambient_rank = 0);
  Sublattice(std::size_t ambient_rank, const IntMatrix& generators);
  Sublattice(std::size_t ambient_rank, const std::vector<IntVector>& generators);

  static Sublattice full(std::size_t n);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return gens_.rows(); }
  const IntMatrix& generators() const { return gens_; }
  std::vector<IntVector> basis() const { return gens_.row_vectors(); }

  /// Index in Z^n; only meaningful for full rank lattices (0 otherwise).
  Integer index() const;
  bool contains(std::span<const Integer> v) const;
  bool spans_vector(std::span<const Integer> v) const;  // v in the Q-span

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient_ == b.ambient_ && a.gens_ == b.gens_;
  }

private:
  std::size_t ambient_;
  IntMatrix gens_;
};

/// Saturated basis of {a in Z^cols : M a = 0}.
Sublattice kernel(const IntMatrix& m);

/// r such that rank(M) = 2r; M must be alternating.
std::size_t skew_rank(const IntMatrix& m);

/// Smallest sublattice with the same Q-span and torsion-free quotient.
Sublattice saturate(const Sublattice& b);

/// Sum of two sublattices of the same ambient rank.
Sublattice lattice_sum(const Sublattice& a, const Sublattice& b);

}  // namespace qtorus
