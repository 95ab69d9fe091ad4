#include "qtorus/lattice.hpp"

#include <stdexcept>

namespace qtorus {
namespace {

// row_a <- s*row_a + t*row_b ; row_b <- u*row_a + v*row_b  (old values).
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Integer& s,
                  const Integer& t, const Integer& u, const Integer& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Integer x = m(a, j);
    const Integer y = m(b, j);
    if (sgn(x) == 0 && sgn(y) == 0) continue;
    m(a, j) = s * x + t * y;
    m(b, j) = u * x + v * y;
  }
}

void sub_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  if (sgn(q) == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (sgn(m(source, j)) != 0) m(target, j) -= q * m(source, j);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

IntMatrix strip_zero_rows(const IntMatrix& h, std::size_t rank) {
  IntMatrix out(0, h.cols());
  for (std::size_t i = 0; i < rank; ++i) out.append_row(h.row(i));
  return out;
}

}  // namespace

HermiteResult hnf(const IntMatrix& m) {
  HermiteResult res{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& H = res.H;
  IntMatrix& U = res.U;
  const std::size_t rows = H.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(H(i, c)) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), H(r, c).get_mpz_t(),
                 H(i, c).get_mpz_t());
      const Integer u = -H(i, c) / g;
      const Integer v = H(r, c) / g;
      combine_rows(H, r, i, s, t, u, v);
      combine_rows(U, r, i, s, t, u, v);
    }
    if (sgn(H(r, c)) == 0) continue;
    if (sgn(H(r, c)) < 0) {
      negate_row(H, r);
      negate_row(U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
      sub_multiple(H, i, r, q);
      sub_multiple(U, i, r, q);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  return hnf(m).rank;
}

Sublattice::Sublattice(std::size_t ambient_rank) : ambient_(ambient_rank), gens_(0, ambient_rank) {}

Sublattice::Sublattice(std::size_t ambient_rank, const IntMatrix& generators)
    : ambient_(ambient_rank), gens_(0, ambient_rank) {
  if (generators.rows() == 0) return;
  if (generators.cols() != ambient_rank)
    throw std::invalid_argument("Sublattice: generator length differs from ambient rank");
  auto h = hnf(generators);
  gens_ = strip_zero_rows(h.H, h.rank);
}

Sublattice::Sublattice(std::size_t ambient_rank, const std::vector<IntVector>& generators)
    : Sublattice(ambient_rank, IntMatrix::from_rows(generators, ambient_rank)) {}

Sublattice Sublattice::full(std::size_t n) { return Sublattice(n, IntMatrix::identity(n)); }

Integer Sublattice::index() const {
  if (rank() != ambient_) return 0;
  Integer idx = 1;
  // Hermite form of a full rank lattice is upper triangular.
  for (std::size_t i = 0; i < ambient_; ++i) idx *= gens_(i, i);
  return idx;
}

bool Sublattice::contains(std::span<const Integer> v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Sublattice::contains: length mismatch");
  IntVector rest(v.begin(), v.end());
  for (std::size_t i = 0; i < gens_.rows(); ++i) {
    std::size_t p = 0;
    while (sgn(gens_(i, p)) == 0) ++p;
    for (std::size_t j = 0; j < p; ++j)
      if (sgn(rest[j]) != 0) return false;
    if (!mpz_divisible_p(rest[p].get_mpz_t(), gens_(i, p).get_mpz_t())) return false;
    const Integer q = rest[p] / gens_(i, p);
    for (std::size_t j = p; j < ambient_; ++j) rest[j] -= q * gens_(i, j);
  }
  return is_zero(rest);
}

bool Sublattice::spans_vector(std::span<const Integer> v) const {
  IntMatrix m = gens_;
  m.append_row(v);
  return qtorus::rank(m) == rank();
}

Sublattice kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0 || m.is_zero()) return Sublattice::full(n);
  auto h = hnf(m.transpose());
  IntMatrix basis(0, n);
  for (std::size_t i = h.rank; i < h.U.rows(); ++i) basis.append_row(h.U.row(i));
  return Sublattice(n, basis);
}

std::size_t skew_rank(const IntMatrix& m) {
  if (!m.is_alternating()) throw std::invalid_argument("skew_rank: matrix is not alternating");
  const std::size_t r = rank(m);
  return r / 2;
}

Sublattice saturate(const Sublattice& b) {
  const std::size_t n = b.ambient_rank();
  if (b.rank() == 0) return b;
  if (b.rank() == n) return Sublattice::full(n);
  const Sublattice perp = kernel(b.generators());
  return kernel(perp.generators());
}

Sublattice lattice_sum(const Sublattice& a, const Sublattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("lattice_sum: ambient rank mismatch");
  IntMatrix g = a.generators();
  for (std::size_t i = 0; i < b.rank(); ++i) g.append_row(b.generators().row(i));
  return Sublattice(a.ambient_rank(), g);
}

}  // namespace qtorus
