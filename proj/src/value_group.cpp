#include "qtorus/value_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qtorus {

ValueGroup::ValueGroup(std::vector<std::string> free_generators, std::int64_t torsion_order)
    : names_(std::move(free_generators)), torsion_(torsion_order) {
  if (torsion_ < 1) throw std::invalid_argument("ValueGroup: torsion order must be >= 1");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("ValueGroup: empty generator name");
    if (!seen.insert(n).second)
      throw std::invalid_argument("ValueGroup: duplicate generator name '" + n + "'");
  }
}

std::size_t ValueGroup::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return static_cast<std::size_t>(it - names_.begin());
}

GroupElement ValueGroup::identity() const { return {IntVector(names_.size()), 0}; }

GroupElement ValueGroup::generator(std::size_t i) const {
  GroupElement e = identity();
  e.free_part.at(i) = 1;
  return e;
}

std::int64_t ValueGroup::reduce_torsion(const Integer& t) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(torsion_));
  return r.get_si();
}

GroupElement ValueGroup::make(IntVector free_part, const Integer& torsion) const {
  if (free_part.size() != names_.size())
    throw std::invalid_argument("GroupElement: free part has wrong length");
  return {std::move(free_part), reduce_torsion(torsion)};
}

bool ValueGroup::belongs(const GroupElement& e) const {
  return e.free_part.size() == names_.size() && e.torsion >= 0 && e.torsion < torsion_;
}

GroupElement ValueGroup::combine(const GroupElement& a, const GroupElement& b) const {
  if (!belongs(a) || !belongs(b))
    throw std::invalid_argument("combine: element does not belong to this value group");
  GroupElement out = a;
  for (std::size_t i = 0; i < out.free_part.size(); ++i) out.free_part[i] += b.free_part[i];
  out.torsion = (a.torsion + b.torsion) % torsion_;
  return out;
}

GroupElement ValueGroup::inverse(const GroupElement& a) const {
  if (!belongs(a)) throw std::invalid_argument("inverse: element does not belong to this value group");
  GroupElement out = a;
  for (auto& x : out.free_part) x = -x;
  out.torsion = (torsion_ - a.torsion) % torsion_;
  return out;
}

GroupElement ValueGroup::scale(const GroupElement& a, const Integer& s) const {
  if (!belongs(a)) throw std::invalid_argument("scale: element does not belong to this value group");
  GroupElement out = a;
  for (auto& x : out.free_part) x *= s;
  out.torsion = reduce_torsion(Integer(a.torsion) * s);
  return out;
}

bool ValueGroup::is_identity(const GroupElement& e) const {
  return e.torsion % torsion_ == 0 && is_zero(e.free_part);
}

namespace {

GroupElement embed(const GroupElement& e, const std::vector<std::size_t>& map,
                   std::int64_t scale, const ValueGroup& target) {
  if (e.free_part.size() != map.size())
    throw std::invalid_argument("embed: element does not belong to the source group");
  GroupElement out = target.identity();
  for (std::size_t i = 0; i < map.size(); ++i) out.free_part[map[i]] += e.free_part[i];
  out.torsion = target.reduce_torsion(Integer(e.torsion) * scale);
  return out;
}

}  // namespace

GroupElement MergedGroups::embed_first(const GroupElement& e) const {
  return embed(e, first_map, first_torsion_scale, group);
}

GroupElement MergedGroups::embed_second(const GroupElement& e) const {
  return embed(e, second_map, second_torsion_scale, group);
}

MergedGroups merge(const ValueGroup& g1, const ValueGroup& g2, MergeMode mode) {
  const std::int64_t m1 = g1.torsion_order();
  const std::int64_t m2 = g2.torsion_order();
  std::int64_t m = 1;
  if (mode == MergeMode::shared) {
    if (m1 > 1 && m2 > 1 && m1 != m2)
      throw std::invalid_argument("merge: incompatible torsion orders " + std::to_string(m1) +
                                  " and " + std::to_string(m2) + " in shared mode");
    m = std::max(m1, m2);
  } else {
    // Finite subgroups of F* are cyclic: both root-of-unity groups sit in the
    // cyclic group of order lcm(m1, m2).
    m = std::lcm(m1, m2);
  }

  std::vector<std::string> names = g1.generator_names();
  std::vector<std::size_t> first_map(names.size());
  std::iota(first_map.begin(), first_map.end(), std::size_t{0});
  std::vector<std::size_t> second_map;
  for (const auto& n : g2.generator_names()) {
    auto it = std::find(names.begin(), names.end(), n);
    if (mode == MergeMode::shared && it != names.end()) {
      second_map.push_back(static_cast<std::size_t>(it - names.begin()));
      continue;
    }
    std::string fresh = n;
    while (std::find(names.begin(), names.end(), fresh) != names.end() ||
           (fresh != n && std::find(g2.generator_names().begin(), g2.generator_names().end(),
                                    fresh) != g2.generator_names().end()))
      fresh += '\'';
    second_map.push_back(names.size());
    names.push_back(fresh);
  }

  MergedGroups out{ValueGroup(std::move(names), m), std::move(first_map), std::move(second_map),
                   m / m1, m / m2};
  return out;
}

}  // namespace qtorus
