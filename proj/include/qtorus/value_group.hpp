#pragma once

// The subgroup of F* generated by the multiparameters, modelled additively as
// Z^k (+) Z/m. Free generators are identified by name.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qtorus/int_matrix.hpp"

namespace qtorus {

struct GroupElement {
  IntVector free_part;
  std::int64_t torsion = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    if (a.free_part.size() != b.free_part.size())
      return a.free_part.size() <=> b.free_part.size();
    for (std::size_t i = 0; i < a.free_part.size(); ++i) {
      const int c = cmp(a.free_part[i], b.free_part[i]);
      if (c != 0) return c <=> 0;
    }
    return a.torsion <=> b.torsion;
  }
};

enum class MergeMode { shared, disjoint };

class ValueGroup {
public:
  ValueGroup() = default;
  ValueGroup(std::vector<std::string> free_generators, std::int64_t torsion_order);

  std::size_t free_rank() const { return names_.size(); }
  std::int64_t torsion_order() const { return torsion_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  /// Index of a generator name, or free_rank() if absent.
  std::size_t find(const std::string& name) const;

  GroupElement identity() const;
  GroupElement generator(std::size_t i) const;
  GroupElement make(IntVector free_part, const Integer& torsion) const;

  bool belongs(const GroupElement& e) const;
  GroupElement combine(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, const Integer& s) const;
  bool is_identity(const GroupElement& e) const;

  std::int64_t reduce_torsion(const Integer& t) const;

  friend bool operator==(const ValueGroup&, const ValueGroup&) = default;

private:
  std::vector<std::string> names_;
  std::int64_t torsion_ = 1;
};

/// Result of placing two value groups inside one. Element i of the first group
/// maps to free index first_map[i]; torsion t maps to t * first_torsion_scale.
struct MergedGroups {
  ValueGroup group;
  std::vector<std::size_t> first_map;
  std::vector<std::size_t> second_map;
  std::int64_t first_torsion_scale = 1;
  std::int64_t second_torsion_scale = 1;

  GroupElement embed_first(const GroupElement& e) const;
  GroupElement embed_second(const GroupElement& e) const;
};

/// Shared mode unifies generators by name and requires compatible torsion.
/// Disjoint mode renames the second group's generators apart.
MergedGroups merge(const ValueGroup& g1, const ValueGroup& g2, MergeMode mode);

}  // namespace qtorus
