#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "qtorus/value_group.hpp"
#include "support.hpp"

using namespace qtorus;
using namespace qtorus::test;

namespace {

GroupElement random_element(Rng& rng, const ValueGroup& g) {
  return g.make(random_vector(rng, g.free_rank(), 5), uniform(rng, -20, 20));
}

}  // namespace

TEST_CASE("construction is validated") {
  CHECK_NOTHROW(ValueGroup({}, 1));
  CHECK_THROWS_AS(ValueGroup({"q", "q"}, 1), std::invalid_argument);
  CHECK_THROWS_AS(ValueGroup({""}, 1), std::invalid_argument);
  CHECK_THROWS_AS(ValueGroup({"q"}, 0), std::invalid_argument);
}

TEST_CASE("combine") {
  const ValueGroup g({"a", "b"}, 1);
  const auto e = g.make(make_vector({3, -1}), 0);
  CHECK(g.combine(e, g.identity()) == e);
  CHECK(g.combine(g.make(make_vector({1, 0}), 0), g.make(make_vector({0, 2}), 0)) ==
        g.make(make_vector({1, 2}), 0));
  const ValueGroup t({}, 5);
  CHECK(t.combine(t.make({}, 3), t.make({}, 4)).torsion == 2);
}

TEST_CASE("mismatched elements are rejected") {
  const ValueGroup g({"a"}, 3);
  GroupElement bad{make_vector({1, 2}), 0};
  CHECK_FALSE(g.belongs(bad));
  CHECK_THROWS(g.combine(bad, g.identity()));
  GroupElement unreduced{make_vector({1}), 4};
  CHECK_FALSE(g.belongs(unreduced));
}

TEST_CASE("is_identity") {
  const ValueGroup g({"a", "b"}, 1);
  CHECK(g.is_identity(g.identity()));
  CHECK_FALSE(g.is_identity(g.make(make_vector({0, 1}), 0)));
  const ValueGroup t({}, 7);
  CHECK(t.is_identity(t.make({}, 0)));
  CHECK(t.is_identity(t.make({}, 14)));
  CHECK_FALSE(t.is_identity(t.make({}, 3)));
}

TEST_CASE("torsion reduces into [0, m)") {
  const ValueGroup g({}, 6);
  CHECK(g.make({}, -1).torsion == 5);
  CHECK(g.reduce_torsion(Integer("-100000000000000000000")) == 2);
}

TEST_CASE("group axioms on random elements") {
  Rng rng(21);
  const ValueGroup g({"x", "y", "z"}, 4);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_element(rng, g), b = random_element(rng, g), c = random_element(rng, g);
    REQUIRE(g.combine(a, b) == g.combine(b, a));
    REQUIRE(g.combine(g.combine(a, b), c) == g.combine(a, g.combine(b, c)));
    REQUIRE(g.is_identity(g.combine(a, g.inverse(a))));
    REQUIRE(g.scale(a, 3) == g.combine(a, g.combine(a, a)));
  }
}

TEST_CASE("merge shared") {
  const ValueGroup q({"q"}, 1);
  auto m = merge(q, q, MergeMode::shared);
  CHECK(m.group == q);
  CHECK(m.first_map == std::vector<std::size_t>{0});
  CHECK(m.second_map == std::vector<std::size_t>{0});

  auto u = merge(ValueGroup({"q1"}, 1), ValueGroup({"q2"}, 1), MergeMode::shared);
  CHECK(u.group.generator_names() == std::vector<std::string>{"q1", "q2"});
  CHECK(u.second_map == std::vector<std::size_t>{1});

  auto t = merge(ValueGroup({}, 1), ValueGroup({"q"}, 6), MergeMode::shared);
  CHECK(t.group.torsion_order() == 6);
  CHECK_THROWS_AS(merge(ValueGroup({}, 2), ValueGroup({}, 3), MergeMode::shared), std::invalid_argument);
  CHECK_NOTHROW(merge(ValueGroup({}, 4), ValueGroup({}, 4), MergeMode::shared));
}

TEST_CASE("merge disjoint renames apart") {
  const ValueGroup q({"q"}, 1);
  auto m = merge(q, q, MergeMode::disjoint);
  CHECK(m.group.generator_names() == std::vector<std::string>{"q", "q'"});
  CHECK(m.second_map == std::vector<std::size_t>{1});
  auto d = merge(ValueGroup({"q", "q'"}, 1), ValueGroup({"q"}, 1), MergeMode::disjoint);
  CHECK(d.group.free_rank() == 3);
  const auto& names = d.group.generator_names();
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == 3);
}

TEST_CASE("merge embeddings are injective homomorphisms") {
  Rng rng(22);
  for (auto mode : {MergeMode::shared, MergeMode::disjoint}) {
    const ValueGroup g1({"a", "b"}, 3), g2({"b", "c"}, mode == MergeMode::shared ? 3 : 4);
    const auto m = merge(g1, g2, mode);
    for (int t = 0; t < 200; ++t) {
      const auto x = random_element(rng, g1), y = random_element(rng, g1);
      REQUIRE(m.embed_first(g1.combine(x, y)) == m.group.combine(m.embed_first(x), m.embed_first(y)));
      REQUIRE(m.group.is_identity(m.embed_first(x)) == g1.is_identity(x));
      const auto u = random_element(rng, g2), v = random_element(rng, g2);
      REQUIRE(m.embed_second(g2.combine(u, v)) == m.group.combine(m.embed_second(u), m.embed_second(v)));
      REQUIRE(m.group.is_identity(m.embed_second(u)) == g2.is_identity(u));
      if (!(x == y)) REQUIRE_FALSE(m.embed_first(x) == m.embed_first(y));
    }
  }
}
