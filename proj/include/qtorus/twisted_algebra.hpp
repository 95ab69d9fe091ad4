#pragma once

// Symbolic elements of the twisted group algebra F*A, A = Z^n, for a
// multiparameter matrix. Basis monomials are the canonical products
// X_1^{a_1} ... X_n^{a_n}; multiplying two of them costs the cocycle
// tau(a, b) = sum_{i > j} a_i b_j lambda_ij (exponent notation).
//
// Coefficients are rational multiples of value-group monomials c * q^v. A
// term is keyed by (a, v), so a field coefficient that is a sum of distinct
// q-monomials is kept as several terms sharing the lattice exponent a.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "qtorus/pairing.hpp"

namespace qtorus {

using Rational = mpq_class;

/// tau(a, b) in exponent notation.
GroupElement cocycle(const MultiparameterMatrix& lambda, std::span<const Integer> a,
                     std::span<const Integer> b);

class TwistedElement {
public:
  struct Key {
    IntVector exponent;  // lattice exponent a
    GroupElement scalar; // q-part v of the coefficient
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyLess {
    bool operator()(const Key& x, const Key& y) const;
  };
  using Terms = std::map<Key, Rational, KeyLess>;

  /// The zero element over the given context.
  explicit TwistedElement(std::shared_ptr<const MultiparameterMatrix> context);

  static TwistedElement monomial(std::shared_ptr<const MultiparameterMatrix> context,
                                 IntVector exponent, Rational coefficient = 1,
                                 GroupElement scalar = {});
  static TwistedElement one(std::shared_ptr<const MultiparameterMatrix> context);

  const MultiparameterMatrix& context() const { return *ctx_; }
  const std::shared_ptr<const MultiparameterMatrix>& context_ptr() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * q^v * X^a, dropping the term if it cancels.
  void add_term(const IntVector& exponent, const GroupElement& scalar, const Rational& c);

  TwistedElement operator+(const TwistedElement& other) const;
  TwistedElement operator-(const TwistedElement& other) const;
  TwistedElement operator*(const TwistedElement& other) const;
  bool operator==(const TwistedElement& other) const;

  /// Inverse of a single monomial q^v X^a with coefficient +-1 or any
  /// nonzero rational: (X^a)^{-1} = tau(a, -a)^{-1} X^{-a}.
  TwistedElement monomial_inverse() const;

  std::set<IntVector> support() const;

  /// Terms as `c * q1^v1 * X1^a1 X2^a2`, graded-lex by lattice exponent.
  std::string to_string() const;

private:
  void require_same_context(const TwistedElement& other) const;

  std::shared_ptr<const MultiparameterMatrix> ctx_;
  Terms terms_;
};

TwistedElement multiply(const TwistedElement& a, const TwistedElement& b);

/// [X^a, X^b] = X^a X^b (X^a)^{-1} (X^b)^{-1} computed in the algebra.
GroupElement commutator_units(const MultiparameterMatrix& lambda, std::span<const Integer> a,
                              std::span<const Integer> b);

std::set<IntVector> support(const TwistedElement& e);

}  // namespace qtorus
