#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtorus/lattice.hpp"
#include "support.hpp"

using namespace qtorus;
using namespace qtorus::test;

TEST_CASE("hnf of the identity") {
  const auto r = hnf(IntMatrix::identity(3));
  CHECK(r.H == IntMatrix::identity(3));
  CHECK(r.U == IntMatrix::identity(3));
  CHECK(r.rank == 3);
}

TEST_CASE("hnf of proportional rows") {
  const IntMatrix m{{2, 4}, {1, 2}};
  const auto r = hnf(m);
  CHECK(r.rank == 1);
  CHECK(r.H == IntMatrix{{1, 2}, {0, 0}});
  CHECK(r.U * m == r.H);
  CHECK(abs(determinant(r.U)) == 1);
}

TEST_CASE("hnf of a permutation") {
  const IntMatrix m{{0, 1}, {1, 0}};
  const auto r = hnf(m);
  CHECK(r.H == IntMatrix::identity(2));
  CHECK(r.U * m == r.H);
  CHECK(abs(determinant(r.U)) == 1);
}

TEST_CASE("hnf reduces entries above pivots") {
  const IntMatrix m{{3, 5, 7}, {0, 4, 1}, {0, 0, 6}};
  const auto r = hnf(m);
  CHECK(is_row_hermite(r.H));
  CHECK(r.U * m == r.H);
  CHECK(r.H(0, 1) >= 0);
  CHECK(r.H(0, 1) < r.H(1, 1));
}

TEST_CASE("hnf properties on random matrices") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const auto rows = static_cast<std::size_t>(uniform(rng, 1, 5));
    const auto cols = static_cast<std::size_t>(uniform(rng, 1, 5));
    const IntMatrix m = random_matrix(rng, rows, cols, 9);
    const auto r = hnf(m);
    REQUIRE(r.U * m == r.H);
    REQUIRE(abs(determinant(r.U)) == 1);
    REQUIRE(is_row_hermite(r.H));
    // idempotent
    REQUIRE(hnf(r.H).H == r.H);
    REQUIRE(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("hnf keeps large intermediates exact") {
  IntMatrix m(3, 3);
  Integer big("123456789012345678901234567890");
  m(0, 0) = big;
  m(0, 1) = big + 1;
  m(1, 0) = big * big;
  m(1, 1) = 7;
  m(2, 2) = -big;
  const auto r = hnf(m);
  CHECK(r.U * m == r.H);
  CHECK(abs(determinant(r.U)) == 1);
  CHECK(r.rank == 3);
  CHECK(is_row_hermite(r.H));
}

TEST_CASE("rank") {
  CHECK(rank(IntMatrix(3, 4)) == 0);
  CHECK(rank(IntMatrix{{2, 4}, {1, 2}}) == 1);
  CHECK(rank(IntMatrix{{0, 1}, {-1, 0}}) == 2);
  CHECK(rank(IntMatrix(0, 3)) == 0);
}

TEST_CASE("kernel examples") {
  CHECK(kernel(IntMatrix(2, 2)) == Sublattice::full(2));
  const Sublattice k = kernel(IntMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
  CHECK(k == Sublattice(3, std::vector<IntVector>{make_vector({0, 0, 1})}));
  const Sublattice k2 = kernel(IntMatrix{{1, 1}});
  CHECK(k2 == Sublattice(2, std::vector<IntVector>{make_vector({1, -1})}));
}

TEST_CASE("kernel is saturated and of the right rank") {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto rows = static_cast<std::size_t>(uniform(rng, 1, 4));
    const auto cols = static_cast<std::size_t>(uniform(rng, 1, 5));
    const IntMatrix m = random_matrix(rng, rows, cols, 4);
    const Sublattice k = kernel(m);
    REQUIRE(k.rank() + rank(m) == cols);
    for (const auto& v : k.basis()) REQUIRE(is_zero(m.apply(v)));
    if (k.rank() > 0) REQUIRE(maximal_minor_gcd(k.generators()) == 1);
  }
}

TEST_CASE("kernel of a matrix whose solutions need a non-primitive combination") {
  // 2a + 4b + 6c = 0 has saturated kernel of rank 2
  const Sublattice k = kernel(IntMatrix{{2, 4, 6}});
  CHECK(k.rank() == 2);
  CHECK(maximal_minor_gcd(k.generators()) == 1);
  CHECK(k.contains(make_vector({1, 1, -1})));
}

TEST_CASE("skew rank") {
  CHECK(skew_rank(IntMatrix(4, 4)) == 0);
  CHECK(skew_rank(IntMatrix{{0, 1}, {-1, 0}}) == 1);
  const IntMatrix b{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
  CHECK(skew_rank(b) == 2);
  CHECK_THROWS_AS(skew_rank(IntMatrix{{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(skew_rank(IntMatrix{{1, 0}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("alternating matrices have even rank") {
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 7));
    const IntMatrix m = random_alternating(rng, n, 3);
    REQUIRE(rank(m) % 2 == 0);
    REQUIRE(2 * skew_rank(m) == rank(m));
  }
}

TEST_CASE("saturate") {
  using V = std::vector<IntVector>;
  CHECK(saturate(Sublattice(2, V{make_vector({2, 0})})) == Sublattice(2, V{make_vector({1, 0})}));
  CHECK(saturate(Sublattice(2, V{make_vector({2, 4})})) == Sublattice(2, V{make_vector({1, 2})}));
  CHECK(saturate(Sublattice::full(4)) == Sublattice::full(4));
  // index-6 sublattice of Z^2 saturates to Z^2
  CHECK(saturate(Sublattice(2, V{make_vector({2, 0}), make_vector({0, 3})})) == Sublattice::full(2));
  CHECK(saturate(Sublattice(3)).rank() == 0);
}

TEST_CASE("sublattice canonical form and membership") {
  using V = std::vector<IntVector>;
  const Sublattice a(2, V{make_vector({2, 0}), make_vector({0, 3})});
  const Sublattice b(2, V{make_vector({2, 3}), make_vector({0, 3})});
  CHECK(a == b);
  CHECK(a.index() == 6);
  CHECK(a.contains(make_vector({4, -3})));
  CHECK_FALSE(a.contains(make_vector({1, 0})));
  CHECK(a.spans_vector(make_vector({1, 0})));
  const Sublattice line(3, V{make_vector({1, 1, 0})});
  CHECK_FALSE(line.spans_vector(make_vector({1, 0, 0})));
  CHECK(lattice_sum(line, Sublattice(3, V{make_vector({0, 1, 0})})).rank() == 2);
}

TEST_CASE("rank of the generators equals the stored row count") {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const IntMatrix g = random_matrix(rng, 4, 3, 3);
    const Sublattice s(3, g);
    REQUIRE(rank(s.generators()) == s.rank());
    REQUIRE(is_row_hermite(s.generators()));
  }
}
