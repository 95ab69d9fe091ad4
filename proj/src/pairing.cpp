#include "qtorus/pairing.hpp"

#include <stdexcept>
#include <string>
#include <tuple>

namespace qtorus {

MultiparameterMatrix::MultiparameterMatrix(std::size_t rank, ValueGroup group,
                                           std::vector<std::vector<GroupElement>> entries)
    : n_(rank), group_(std::move(group)), entries_(std::move(entries)) {
  if (n_ < 1) throw std::invalid_argument("MultiparameterMatrix: rank must be >= 1");
  if (entries_.size() != n_)
    throw std::invalid_argument("MultiparameterMatrix: expected " + std::to_string(n_) + " rows");
  for (std::size_t i = 0; i < n_; ++i) {
    if (entries_[i].size() != n_)
      throw std::invalid_argument("MultiparameterMatrix: row " + std::to_string(i + 1) +
                                  " has wrong length");
    for (std::size_t j = 0; j < n_; ++j)
      if (!group_.belongs(entries_[i][j]))
        throw std::invalid_argument("MultiparameterMatrix: entry (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) +
                                    ") is not an element of the value group");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (!group_.is_identity(entries_[i][i]))
      throw std::invalid_argument("MultiparameterMatrix: lambda_" + std::to_string(i + 1) +
                                  std::to_string(i + 1) + " must be 1");
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!group_.is_identity(group_.combine(entries_[i][j], entries_[j][i])))
        throw std::invalid_argument("MultiparameterMatrix: lambda_ij * lambda_ji != 1 at (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
}

MultiparameterMatrix MultiparameterMatrix::from_upper(
    std::size_t rank, ValueGroup group,
    const std::vector<std::tuple<std::size_t, std::size_t, GroupElement>>& upper) {
  std::vector<std::vector<GroupElement>> e(rank, std::vector<GroupElement>(rank, group.identity()));
  for (const auto& [i, j, g] : upper) {
    if (i >= j || j >= rank)
      throw std::invalid_argument("from_upper: index pair must satisfy i < j < rank");
    e[i][j] = g;
    e[j][i] = group.inverse(g);
  }
  return MultiparameterMatrix(rank, std::move(group), std::move(e));
}

MultiparameterMatrix MultiparameterMatrix::commutative(std::size_t rank, ValueGroup group) {
  return from_upper(rank, std::move(group), {});
}

bool MultiparameterMatrix::is_commutative() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!group_.is_identity(entries_[i][j])) return false;
  return true;
}

Pairing pairing_of(const MultiparameterMatrix& lambda) {
  const std::size_t n = lambda.rank();
  const ValueGroup& g = lambda.value_group();
  Pairing p{n, g, std::vector<IntMatrix>(g.free_rank(), IntMatrix(n, n)), IntMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const GroupElement& e = lambda.entry(i, j);
      for (std::size_t l = 0; l < g.free_rank(); ++l) p.free_forms[l](i, j) = e.free_part[l];
      p.torsion_form(i, j) = e.torsion;
    }
  return p;
}

MultiparameterMatrix to_multiparameter(const Pairing& p) {
  std::vector<std::vector<GroupElement>> e(p.rank, std::vector<GroupElement>(p.rank));
  for (std::size_t i = 0; i < p.rank; ++i)
    for (std::size_t j = 0; j < p.rank; ++j) {
      IntVector v(p.free_forms.size());
      for (std::size_t l = 0; l < v.size(); ++l) v[l] = p.free_forms[l](i, j);
      e[i][j] = p.group.make(std::move(v), p.torsion_form(i, j));
    }
  return MultiparameterMatrix(p.rank, p.group, std::move(e));
}

GroupElement commutator(const Pairing& p, std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != p.rank || b.size() != p.rank)
    throw std::invalid_argument("commutator: vectors must have length n");
  IntVector free(p.free_forms.size());
  for (std::size_t l = 0; l < free.size(); ++l) free[l] = p.free_forms[l].bilinear(a, b);
  Integer t = 0;
  if (p.group.torsion_order() > 1) t = p.torsion_form.bilinear(a, b);
  return p.group.make(std::move(free), t);
}

bool is_commutative(const Pairing& p, const Sublattice& b) {
  if (b.ambient_rank() != p.rank)
    throw std::invalid_argument("is_commutative: sublattice lives in the wrong ambient rank");
  const IntMatrix& g = b.generators();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.rows(); ++j)
      if (!p.group.is_identity(commutator(p, g.row(i), g.row(j)))) return false;
  return true;
}

Sublattice radical(const Pairing& p) {
  IntMatrix stacked(0, p.rank);
  for (const auto& m : p.free_forms)
    for (std::size_t i = 0; i < m.rows(); ++i) stacked.append_row(m.row(i));
  return kernel(stacked);
}

bool center_is_F(const Pairing& p) { return radical(p).rank() == 0; }

MultiparameterMatrix tensor(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                            MergeMode mode) {
  const MergedGroups merged = merge(a.value_group(), b.value_group(), mode);
  const std::size_t n1 = a.rank();
  const std::size_t n = n1 + b.rank();
  std::vector<std::vector<GroupElement>> e(n, std::vector<GroupElement>(n, merged.group.identity()));
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) e[i][j] = merged.embed_first(a.entry(i, j));
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) e[n1 + i][n1 + j] = merged.embed_second(b.entry(i, j));
  return MultiparameterMatrix(n, merged.group, std::move(e));
}

MultiparameterMatrix transpose(const MultiparameterMatrix& lambda) {
  const std::size_t n = lambda.rank();
  std::vector<std::vector<GroupElement>> e(n, std::vector<GroupElement>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i][j] = lambda.entry(j, i);
  return MultiparameterMatrix(n, lambda.value_group(), std::move(e));
}

Pairing restrict(const Pairing& p, const Sublattice& b) {
  if (b.ambient_rank() != p.rank)
    throw std::invalid_argument("restrict: sublattice lives in the wrong ambient rank");
  if (b.rank() == 0) throw std::invalid_argument("restrict: sublattice must have rank >= 1");
  const IntMatrix& g = b.generators();
  const IntMatrix gt = g.transpose();
  Pairing out{b.rank(), p.group, {}, g * p.torsion_form * gt};
  for (const auto& m : p.free_forms) out.free_forms.push_back(g * m * gt);
  const auto m = p.group.torsion_order();
  for (std::size_t i = 0; i < out.rank; ++i)
    for (std::size_t j = 0; j < out.rank; ++j)
      out.torsion_form(i, j) = p.group.reduce_torsion(out.torsion_form(i, j));
  if (m == 1) out.torsion_form = IntMatrix(out.rank, out.rank);
  return out;
}

}  // namespace qtorus
