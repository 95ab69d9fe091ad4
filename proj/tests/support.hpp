#pragma once

// Random inputs shared by the test binaries.

#include <cstdint>
#include <random>
#include <vector>

#include "qtorus/int_matrix.hpp"
#include "qtorus/lattice.hpp"

namespace qtorus::test {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline IntVector random_vector(Rng& rng, std::size_t n, long bound) {
  IntVector v(n);
  for (auto& x : v) x = uniform(rng, -bound, bound);
  return v;
}

inline IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

inline IntMatrix random_alternating(Rng& rng, std::size_t n, long bound) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = uniform(rng, -bound, bound);
      m(j, i) = -m(i, j);
    }
  return m;
}

/// Product of random elementary row operations and sign flips.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (b >= a) ++b;
    const long c = uniform(rng, -2, 2);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += c * u(b, j);
    if (uniform(rng, 0, 5) == 0)
      for (std::size_t j = 0; j < n; ++j) u(a, j) = -u(a, j);
  }
  return u;
}

/// Row Hermite form check written out directly from the definition.
inline bool is_row_hermite(const IntMatrix& h) {
  std::size_t last_pivot = 0;
  bool zero_seen = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) {
      zero_seen = true;
      continue;
    }
    if (zero_seen) return false;
    if (i > 0 && p <= last_pivot) return false;
    if (h(i, p) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    last_pivot = p;
  }
  return true;
}

/// gcd of all maximal minors of a g x n matrix of rank g. It is 1 exactly
/// when the row lattice is saturated.
inline Integer maximal_minor_gcd(const IntMatrix& g) {
  const std::size_t r = g.rows(), n = g.cols();
  Integer acc = 0;
  std::vector<std::size_t> cols(r);
  for (std::size_t i = 0; i < r; ++i) cols[i] = i;
  if (r == 0) return 1;
  while (true) {
    IntMatrix sub(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) sub(i, j) = g(i, cols[j]);
    mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), determinant(sub).get_mpz_t());
    std::size_t i = r;
    while (i > 0 && cols[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < r; ++j) cols[j] = cols[j - 1] + 1;
  }
  return acc;
}

}  // namespace qtorus::test
