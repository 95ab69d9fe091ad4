#pragma once

// Dimension of a quantum torus as the largest rank of a commutative
// sublattice of Z^n.
//
// Torsion of the value group never changes the answer: if B is isotropic for
// every free form then m*B commutes for the full pairing and has the same
// rank. The problem is therefore the maximal common isotropic subspace of the
// free forms M_1..M_k over Q; a rank g isotropic Q-subspace meets Z^n in a
// rank g commutative sublattice, so the Z and Q optima agree.
//
// With at most one independent form the answer is n - skew_rank(M). With
// several forms the solver returns a certified interval:
//   lower  a commutative sublattice found by search (it is the witness)
//   upper  the minimum of three certificates
//     pencil     n - skew_rank(sum c_l M_l) for sampled integer c
//     exterior   largest g with g(g-1)/2 <= dim of the common annihilator
//                of the forms in the exterior square
//     block      for coordinate blocks V1 (+) V2 that no form couples, an
//                isotropic W has dim <= max over s, t of
//                min(f1(s) + t, f2(t) + s), where s = dim W n V1,
//                t = dim W n V2 and f_i bounds the dimension of the
//                orthogonal of an isotropic subspace of V_i.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qtorus/pairing.hpp"

namespace qtorus {

struct DimensionOptions {
  int search_bound = 2;
  int combo_samples = 64;
  std::chrono::milliseconds time_budget{10000};
  std::size_t node_budget = 200000;
  std::uint64_t seed = 0x5eedULL;
  /// Extra candidate sublattices; those that commute seed the lower bound.
  std::vector<Sublattice> hints;
};

enum class UpperSource { commutative, single_form, pencil, exterior, block_split };

const char* to_string(UpperSource s);

struct UpperCertificate {
  int bound = 0;
  UpperSource source = UpperSource::commutative;
  IntVector combination;  // best pencil combination (over span_basis forms)
};

class InconclusiveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The free forms M_1..M_k; the torsion form is dropped.
std::vector<IntMatrix> free_reduction(const Pairing& p);

/// A Z-basis of alternating forms with the same Q-span as the input.
std::vector<IntMatrix> span_basis(const std::vector<IntMatrix>& forms, std::size_t n);

struct SingleFormResult {
  int dimension = 0;
  Sublattice witness;
};

/// n - skew_rank(M), with an isotropic witness: the kernel of M extended
/// greedily inside successive orthogonals.
SingleFormResult dim_single_form(const IntMatrix& m);

/// Best upper certificate for the common isotropic rank of the forms.
UpperCertificate upper_bound(const std::vector<IntMatrix>& forms, std::size_t n,
                             const DimensionOptions& opts = {});

DimensionResult dimension(const Pairing& p, const DimensionOptions& opts = {});
DimensionResult dimension(const MultiparameterMatrix& lambda, const DimensionOptions& opts = {});

/// Exhaustive oracle: largest number of independent, pairwise commuting
/// vectors with entries in [-bound, bound]. Shares no code with dimension().
int brute_force_dimension(const MultiparameterMatrix& lambda, int entry_bound);

/// rk - dim; throws InconclusiveError when the dimension is not certified.
int codimension(const MultiparameterMatrix& lambda, const DimensionOptions& opts = {});

}  // namespace qtorus
