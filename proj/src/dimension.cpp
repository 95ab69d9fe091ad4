#include "qtorus/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

namespace qtorus {

const char* to_string(UpperSource s) {
  switch (s) {
    case UpperSource::commutative: return "commutative";
    case UpperSource::single_form: return "single-form";
    case UpperSource::pencil: return "pencil";
    case UpperSource::exterior: return "exterior";
    case UpperSource::block_split: return "block-split";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }

IntVector vectorize(const IntMatrix& m) {
  IntVector v;
  v.reserve(choose2(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

IntMatrix unvectorize(std::span<const Integer> v, std::size_t n) {
  IntMatrix m(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      m(i, j) = v[k];
      m(j, i) = -v[k];
    }
  return m;
}

IntMatrix combine(const std::vector<IntMatrix>& forms, std::span<const Integer> c, std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t l = 0; l < forms.size(); ++l)
    if (sgn(c[l]) != 0) out = out + c[l] * forms[l];
  return out;
}

IntMatrix principal(const IntMatrix& m, const std::vector<std::size_t>& idx) {
  IntMatrix out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = m(idx[a], idx[b]);
  return out;
}

// Unit vectors, then sign patterns (first sign fixed), then seeded small
// pseudorandom vectors.
std::vector<IntVector> pencil_combinations(std::size_t s, int samples, std::uint64_t seed) {
  std::vector<IntVector> out;
  const std::size_t target = std::max<std::size_t>(static_cast<std::size_t>(std::max(samples, 0)), s);
  for (std::size_t l = 0; l < s; ++l) {
    IntVector c(s);
    c[l] = 1;
    out.push_back(std::move(c));
  }
  if (s >= 2) {
    const std::size_t patterns = s >= 63 ? target : std::size_t{1} << (s - 1);
    for (std::size_t p = 0; p < patterns && out.size() < target; ++p) {
      IntVector c(s, Integer(1));
      for (std::size_t l = 1; l < s; ++l)
        if ((p >> (l - 1)) & 1U) c[l] = -1;
      out.push_back(std::move(c));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-5, 5);
  while (out.size() < target) {
    IntVector c(s);
    for (auto& x : c) x = dist(rng);
    if (!is_zero(c)) out.push_back(std::move(c));
  }
  return out;
}

struct Pencil {
  std::size_t best_skew_rank = 0;
  std::vector<IntVector> top;  // combinations reaching the best rank
};

Pencil sample_pencil(const std::vector<IntMatrix>& forms, std::size_t n, const DimensionOptions& opts) {
  Pencil p;
  const std::size_t ceiling = n / 2;
  for (const auto& c : pencil_combinations(forms.size(), opts.combo_samples, opts.seed)) {
    const std::size_t r = rank(combine(forms, c, n)) / 2;
    if (r > p.best_skew_rank || p.top.empty()) {
      p.best_skew_rank = r;
      p.top = {c};
    } else if (r == p.best_skew_rank && p.top.size() < 3) {
      p.top.push_back(c);
    }
    if (r == ceiling && p.top.size() >= 3) break;
  }
  return p;
}

int exterior_bound(std::size_t span_rank, std::size_t n) {
  const std::size_t annihilator = choose2(n) - span_rank;
  std::size_t g = 1;
  while (g < n && choose2(g + 1) <= annihilator) ++g;
  return static_cast<int>(g);
}

std::vector<std::vector<std::size_t>> coordinate_blocks(const std::vector<IntMatrix>& forms,
                                                        std::size_t n) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& f : forms)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (sgn(f(i, j)) != 0) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

struct Certified {
  UpperCertificate cert;
  Pencil pencil;
};

Certified certify_upper(const std::vector<IntMatrix>& basis, std::size_t n,
                        const DimensionOptions& opts);

struct BlockData {
  int n = 0;
  int ub = 0;
  int orth = 0;  // bound on dim of the orthogonal of a nonzero isotropic subspace
};

BlockData block_data(const std::vector<IntMatrix>& basis, const std::vector<std::size_t>& idx,
                     const DimensionOptions& opts) {
  std::vector<IntMatrix> restricted;
  for (const auto& f : basis) restricted.push_back(principal(f, idx));
  const auto sub = span_basis(restricted, idx.size());
  BlockData d;
  d.n = static_cast<int>(idx.size());
  d.ub = certify_upper(sub, idx.size(), opts).cert.bound;
  d.orth = static_cast<int>(std::min(idx.size(), 1 + choose2(idx.size()) - sub.size()));
  return d;
}

int block_split_bound(const BlockData& a, const BlockData& b) {
  int best = 0;
  for (int s = 0; s <= a.ub; ++s) {
    const int fa = s == 0 ? a.n : a.orth;
    if (s > fa) continue;
    for (int t = 0; t <= b.ub; ++t) {
      const int fb = t == 0 ? b.n : b.orth;
      if (t > fb) continue;
      best = std::max(best, std::min(fa + t, fb + s));
    }
  }
  return best;
}

Certified certify_upper(const std::vector<IntMatrix>& basis, std::size_t n,
                        const DimensionOptions& opts) {
  Certified out;
  const std::size_t s = basis.size();
  if (s == 0) {
    out.cert = {static_cast<int>(n), UpperSource::commutative, {}};
    return out;
  }
  if (s == 1) {
    out.cert = {static_cast<int>(n - skew_rank(basis[0])), UpperSource::single_form,
                IntVector{Integer(1)}};
    out.pencil = {skew_rank(basis[0]), {out.cert.combination}};
    return out;
  }
  out.pencil = sample_pencil(basis, n, opts);
  out.cert = {static_cast<int>(n - out.pencil.best_skew_rank), UpperSource::pencil,
              out.pencil.top.front()};
  if (const int ext = exterior_bound(s, n); ext < out.cert.bound) {
    out.cert.bound = ext;
    out.cert.source = UpperSource::exterior;
  }
  const auto blocks = coordinate_blocks(basis, n);
  if (blocks.size() >= 2 && out.cert.bound > 1) {
    std::vector<std::size_t> rest;
    for (std::size_t b = 1; b < blocks.size(); ++b)
      rest.insert(rest.end(), blocks[b].begin(), blocks[b].end());
    std::sort(rest.begin(), rest.end());
    const int split = block_split_bound(block_data(basis, blocks[0], opts),
                                        block_data(basis, rest, opts));
    if (split < out.cert.bound) {
      out.cert.bound = split;
      out.cert.source = UpperSource::block_split;
    }
  }
  return out;
}

// State of the isotropic search: R is a saturated isotropic lattice equal to
// the radical of its own orthogonal L = R^perp. Every isotropic subspace
// containing R lies in L.
struct Node {
  Sublattice R;
  IntMatrix constraints;  // rows B_l r for r in R; v in L iff constraints v = 0
  IntMatrix L;            // basis of L
  int ub = 0;
};

class IsotropicSearch {
public:
  IsotropicSearch(const std::vector<IntMatrix>& forms, std::size_t n,
                  std::vector<IntVector> prune_combos)
      : forms_(forms), n_(n), prune_(std::move(prune_combos)) {}

  IntMatrix constraint_rows(const IntMatrix& vectors) const {
    IntMatrix c(0, n_);
    for (std::size_t i = 0; i < vectors.rows(); ++i)
      for (const auto& f : forms_) c.append_row(f.apply(vectors.row(i)));
    return c;
  }

  Node make_node(const IntMatrix& span) const {
    Node node{Sublattice(n_), {}, {}, 0};
    const IntMatrix c = constraint_rows(span);
    const Sublattice perp = c.rows() == 0 ? Sublattice::full(n_) : kernel(c);
    const IntMatrix& g = perp.generators();
    const IntMatrix gt = g.transpose();
    std::vector<IntMatrix> restricted;
    IntMatrix stacked(0, g.rows());
    for (const auto& f : forms_) {
      restricted.push_back(g * f * gt);
      for (std::size_t i = 0; i < g.rows(); ++i) stacked.append_row(restricted.back().row(i));
    }
    const Sublattice coeffs = kernel(stacked);
    node.R = coeffs.rank() == 0 ? Sublattice(n_) : Sublattice(n_, coeffs.generators() * g);
    node.constraints = constraint_rows(node.R.generators());
    node.L = g;
    const std::size_t ell = g.rows();
    std::size_t best = 0;
    for (const auto& c : prune_)
      best = std::max(best, rank(combine(restricted, c, ell)) / 2);
    node.ub = static_cast<int>(ell - best);
    // Exterior count on L modulo the common radical of the restricted forms.
    const std::size_t kappa = coeffs.rank();
    if (kappa < ell) {
      IntMatrix vecs(0, choose2(ell));
      for (const auto& f : restricted) vecs.append_row(vectorize(f));
      const int ext = exterior_bound(rank(vecs), ell - kappa);
      node.ub = std::min(node.ub, static_cast<int>(kappa) + ext);
    }
    return node;
  }

  bool in_orthogonal(const Node& node, std::span<const Integer> v) const {
    for (std::size_t i = 0; i < node.constraints.rows(); ++i)
      if (sgn(dot(node.constraints.row(i), v)) != 0) return false;
    return true;
  }

  static IntMatrix extended(const Sublattice& r, std::span<const Integer> v) {
    IntMatrix m = r.generators();
    m.append_row(v);
    return m;
  }

  // Extends R by the first basis vector of L outside R until R = L.
  Node greedy(Node node) const {
    while (node.R.rank() < node.L.rows()) {
      std::size_t i = 0;
      while (i < node.L.rows() && node.R.contains(node.L.row(i))) ++i;
      if (i == node.L.rows()) break;
      node = make_node(extended(node.R, node.L.row(i)));
    }
    return node;
  }

private:
  const std::vector<IntMatrix>& forms_;
  std::size_t n_;
  std::vector<IntVector> prune_;
};

// Canonical-sign vectors of [-b, b]^n ordered by L1 weight, then
// lexicographically descending.
class BoxPool {
public:
  BoxPool(std::size_t n, int bound) : n_(n) {
    if (bound < 1 || n == 0) return;
    std::vector<long> v(n, -bound);
    while (true) {
      std::size_t first = 0;
      while (first < n && v[first] == 0) ++first;
      if (first < n && v[first] > 0) data_.insert(data_.end(), v.begin(), v.end());
      std::size_t i = 0;
      while (i < n && v[i] == bound) v[i++] = -bound;
      if (i == n) break;
      ++v[i];
    }
    const std::size_t count = data_.size() / n;
    order_.resize(count);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    auto weight = [&](std::size_t k) {
      long w = 0;
      for (std::size_t j = 0; j < n; ++j) w += std::labs(data_[k * n + j]);
      return w;
    };
    std::vector<long> weights(count);
    for (std::size_t k = 0; k < count; ++k) weights[k] = weight(k);
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      if (weights[a] != weights[b]) return weights[a] < weights[b];
      for (std::size_t j = 0; j < n; ++j)
        if (data_[a * n + j] != data_[b * n + j]) return data_[a * n + j] > data_[b * n + j];
      return false;
    });
  }

  std::size_t size() const { return order_.size(); }
  const long* raw(std::size_t k) const { return data_.data() + order_[k] * n_; }
  IntVector at(std::size_t k) const {
    const long* p = raw(k);
    return IntVector(p, p + n_);
  }

private:
  std::size_t n_;
  std::vector<long> data_;
  std::vector<std::size_t> order_;
};

class LowerSearch {
public:
  LowerSearch(const IsotropicSearch& iso, std::vector<IntVector> seeds, const BoxPool& box,
              int target, const DimensionOptions& opts)
      : iso_(iso), seeds_(std::move(seeds)), box_(box), target_(target),
        node_budget_(opts.node_budget), deadline_(Clock::now() + opts.time_budget) {}

  void offer(const Node& node) {
    if (!have_best_ || node.R.rank() > best_.rank()) {
      best_ = node.R;
      have_best_ = true;
    }
  }

  void run(const Node& root) { dfs(root, 0); }

  bool finished() const { return done_; }
  bool have_best() const { return have_best_; }
  const Sublattice& best() const { return best_; }

private:
  std::size_t pool_size() const { return seeds_.size() + box_.size(); }
  IntVector vector_at(std::size_t k) const {
    return k < seeds_.size() ? seeds_[k] : box_.at(k - seeds_.size());
  }

  bool out_of_budget() {
    if (nodes_ > node_budget_) return true;
    if ((++ticks_ & 255U) == 0 && Clock::now() > deadline_) nodes_ = node_budget_ + 1;
    return nodes_ > node_budget_;
  }

  // Machine-word copy of the node constraints when every entry fits; box
  // entries are tiny so the dot products cannot overflow 128 bits.
  static std::optional<std::vector<long>> small_constraints(const Node& node) {
    const IntMatrix& c = node.constraints;
    std::vector<long> out;
    out.reserve(c.rows() * c.cols());
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) {
        if (!c(i, j).fits_slong_p()) return std::nullopt;
        out.push_back(c(i, j).get_si());
      }
    return out;
  }

  static bool orthogonal_small(const std::vector<long>& c, std::size_t n, const long* v) {
    for (std::size_t off = 0; off < c.size(); off += n) {
      __int128 s = 0;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>(c[off + j]) * v[j];
      if (s != 0) return false;
    }
    return true;
  }

  void dfs(const Node& node, std::size_t start) {
    offer(node);
    if (static_cast<int>(best_.rank()) >= target_) {
      done_ = true;
      return;
    }
    if (node.ub <= static_cast<int>(best_.rank())) return;
    const auto small = small_constraints(node);
    const std::size_t n = node.constraints.cols();
    for (std::size_t k = start; k < pool_size(); ++k) {
      if (done_ || out_of_budget()) return;
      if (small && k >= seeds_.size() && !orthogonal_small(*small, n, box_.raw(k - seeds_.size())))
        continue;
      const IntVector v = vector_at(k);
      if (!iso_.in_orthogonal(node, v) || node.R.contains(v)) continue;
      ++nodes_;
      dfs(iso_.make_node(IsotropicSearch::extended(node.R, v)), k + 1);
    }
  }

  const IsotropicSearch& iso_;
  std::vector<IntVector> seeds_;
  const BoxPool& box_;
  int target_;
  std::size_t node_budget_;
  Clock::time_point deadline_;
  std::size_t nodes_ = 0;
  std::size_t ticks_ = 0;
  bool done_ = false;
  bool have_best_ = false;
  Sublattice best_;
};

// Smallest multiple d*B, d | m, that commutes for the full pairing.
Sublattice commuting_multiple(const Pairing& p, const Sublattice& b) {
  if (is_commutative(p, b)) return b;
  const std::int64_t m = p.group.torsion_order();
  for (std::int64_t d = 2; d <= m; ++d) {
    if (m % d != 0) continue;
    const Sublattice scaled(b.ambient_rank(), Integer(d) * b.generators());
    if (is_commutative(p, scaled)) return scaled;
  }
  return Sublattice(b.ambient_rank(), Integer(m) * b.generators());
}

int box_bound_for(std::size_t n, int requested) {
  // Keeps the candidate pool below about 4e5 vectors.
  int b = std::max(requested, 0);
  while (b > 1 && std::pow(2.0 * b + 1.0, static_cast<double>(n)) > 8e5) --b;
  return b;
}

}  // namespace

std::vector<IntMatrix> free_reduction(const Pairing& p) { return p.free_forms; }

std::vector<IntMatrix> span_basis(const std::vector<IntMatrix>& forms, std::size_t n) {
  if (n < 2 || forms.empty()) return {};
  IntMatrix stacked(0, choose2(n));
  for (const auto& f : forms) stacked.append_row(vectorize(f));
  const auto h = hnf(stacked);
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < h.rank; ++i) out.push_back(unvectorize(h.H.row(i), n));
  return out;
}

SingleFormResult dim_single_form(const IntMatrix& m) {
  if (!m.is_alternating()) throw std::invalid_argument("dim_single_form: matrix is not alternating");
  const std::size_t n = m.rows();
  const int dim = static_cast<int>(n - skew_rank(m));
  const std::vector<IntMatrix> forms{m};
  const IsotropicSearch iso(forms, n, {});
  const Node node = iso.greedy(iso.make_node(IntMatrix(0, n)));
  return {dim, node.R};
}

UpperCertificate upper_bound(const std::vector<IntMatrix>& forms, std::size_t n,
                             const DimensionOptions& opts) {
  for (const auto& f : forms)
    if (f.rows() != n || !f.is_alternating())
      throw std::invalid_argument("upper_bound: forms must be alternating n x n matrices");
  return certify_upper(span_basis(forms, n), n, opts).cert;
}

DimensionResult dimension(const Pairing& p, const DimensionOptions& opts) {
  const std::size_t n = p.rank;
  const auto basis = span_basis(free_reduction(p), n);
  DimensionResult res;

  auto isotropic = [&](const Sublattice& h) {
    if (h.ambient_rank() != n || h.rank() == 0) return false;
    for (const auto& f : basis)
      for (std::size_t i = 0; i < h.rank(); ++i)
        for (std::size_t j = i + 1; j < h.rank(); ++j)
          if (sgn(f.bilinear(h.generators().row(i), h.generators().row(j))) != 0) return false;
    return true;
  };

  if (basis.size() <= 1) {
    SingleFormResult single{static_cast<int>(n), Sublattice::full(n)};
    if (!basis.empty()) single = dim_single_form(basis[0]);
    for (const auto& h : opts.hints)
      if (static_cast<int>(h.rank()) == single.dimension && isotropic(h)) {
        single.witness = h;
        break;
      }
    res = {single.dimension, single.dimension, true, commuting_multiple(p, single.witness)};
    return res;
  }

  const Certified upper = certify_upper(basis, n, opts);
  const IsotropicSearch iso(basis, n, upper.pencil.top);

  std::vector<IntVector> seeds;
  auto add_seeds = [&](const Sublattice& s) {
    for (const auto& v : s.basis())
      if (std::find(seeds.begin(), seeds.end(), v) == seeds.end()) seeds.push_back(v);
  };
  for (const auto& f : basis) add_seeds(kernel(f));
  for (const auto& c : upper.pencil.top) add_seeds(kernel(combine(basis, c, n)));

  const BoxPool box(n, box_bound_for(n, opts.search_bound));
  LowerSearch search(iso, seeds, box, upper.cert.bound, opts);

  // Hints go first so that, among equal-rank witnesses, a hinted one wins.
  const Node root = iso.make_node(IntMatrix(0, n));
  for (const auto& h : opts.hints)
    if (isotropic(h)) search.offer(iso.greedy(iso.make_node(h.generators())));
  search.offer(iso.greedy(root));
  search.run(root);

  Sublattice best = search.best();
  if (best.rank() == 0) {
    IntVector e(n);
    e[0] = 1;
    best = Sublattice(n, std::vector<IntVector>{e});
  }
  res.lower = static_cast<int>(best.rank());
  res.upper = std::max(upper.cert.bound, res.lower);
  res.exact = res.lower == res.upper;
  res.witness = commuting_multiple(p, best);
  return res;
}

DimensionResult dimension(const MultiparameterMatrix& lambda, const DimensionOptions& opts) {
  return dimension(pairing_of(lambda), opts);
}

int codimension(const MultiparameterMatrix& lambda, const DimensionOptions& opts) {
  const DimensionResult d = dimension(lambda, opts);
  if (!d.exact)
    throw InconclusiveError("codimension: dimension only certified in [" +
                            std::to_string(d.lower) + ", " + std::to_string(d.upper) + "]");
  return static_cast<int>(lambda.rank()) - d.lower;
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Machine integers, its own elimination, no lattice code.

namespace {

struct Oracle {
  std::size_t n = 0;
  std::vector<std::vector<long>> free;  // k forms, row-major n*n
  std::vector<long> torsion;
  long m = 1;
  std::vector<std::vector<long>> pool;
  std::vector<std::vector<std::uint64_t>> adj;
  int best = 0;

  bool commute(const std::vector<long>& a, const std::vector<long>& b) const {
    for (const auto& f : free) {
      long s = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += a[i] * f[i * n + j] * b[j];
      if (s != 0) return false;
    }
    if (m > 1) {
      long s = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += a[i] * torsion[i * n + j] * b[j];
      if (((s % m) + m) % m != 0) return false;
    }
    return true;
  }

  // Row echelon over Q with integer rows; returns false if v is dependent.
  static bool extend_echelon(std::vector<std::vector<long>>& rows, std::vector<long> v) {
    for (const auto& r : rows) {
      std::size_t p = 0;
      while (r[p] == 0) ++p;
      if (v[p] == 0) continue;
      const long a = r[p], b = v[p];
      long g = 0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = a * v[j] - b * r[j];
        g = std::gcd(g, v[j]);
      }
      if (g > 1)
        for (auto& x : v) x /= g;
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    // rows stay sorted by pivot; each row is zero left of its pivot
    auto pos = std::find_if(rows.begin(), rows.end(), [&](const std::vector<long>& r) {
      std::size_t q = 0;
      while (r[q] == 0) ++q;
      return q > p;
    });
    rows.insert(pos, std::move(v));
    return true;
  }

  void search(const std::vector<std::vector<long>>& echelon, std::vector<std::uint64_t> cands,
              int depth) {
    best = std::max(best, depth);
    if (best == static_cast<int>(n)) return;
    // Any extension lies in span(echelon, cands); stop once that span
    // cannot beat the best so far.
    {
      auto span = echelon;
      int reach = depth;
      for (std::size_t w = 0; w < cands.size() && reach <= best; ++w)
        for (std::uint64_t bits = cands[w]; bits && reach <= best; bits &= bits - 1) {
          const std::size_t k = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
          if (extend_echelon(span, pool[k])) ++reach;
        }
      if (reach <= best) return;
    }
    for (std::size_t w = 0; w < cands.size(); ++w) {
      while (cands[w]) {
        const int bit = __builtin_ctzll(cands[w]);
        cands[w] &= cands[w] - 1;
        const std::size_t k = w * 64 + static_cast<std::size_t>(bit);
        auto next = echelon;
        if (!extend_echelon(next, pool[k])) continue;
        std::vector<std::uint64_t> sub(cands.size());
        for (std::size_t x = 0; x < cands.size(); ++x) sub[x] = cands[x] & adj[k][x];
        search(next, std::move(sub), depth + 1);
        if (best == static_cast<int>(n)) return;
      }
    }
  }
};

}  // namespace

int brute_force_dimension(const MultiparameterMatrix& lambda, int entry_bound) {
  const std::size_t n = lambda.rank();
  if (entry_bound < 1) throw std::invalid_argument("brute_force_dimension: bound must be >= 1");
  const double pool_size = (std::pow(2.0 * entry_bound + 1.0, static_cast<double>(n)) - 1.0) / 2.0;
  if (n > 8 || pool_size > 20000)
    throw ResourceLimitError("brute_force_dimension: " + std::to_string(static_cast<long>(pool_size)) +
                             " candidate vectors exceeds the limit of 20000");
  const Pairing p = pairing_of(lambda);
  Oracle o;
  o.n = n;
  o.m = p.group.torsion_order();
  auto to_long = [&](const IntMatrix& f) {
    std::vector<long> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!f(i, j).fits_slong_p() || abs(f(i, j)) > 1000000)
          throw ResourceLimitError("brute_force_dimension: exponent too large for the oracle");
        out[i * n + j] = f(i, j).get_si();
      }
    return out;
  };
  for (const auto& f : p.free_forms) o.free.push_back(to_long(f));
  o.torsion = to_long(p.torsion_form);

  std::vector<long> v(n, -entry_bound);
  while (true) {
    std::size_t first = 0;
    while (first < n && v[first] == 0) ++first;
    if (first < n && v[first] > 0) o.pool.push_back(v);
    std::size_t i = 0;
    while (i < n && v[i] == entry_bound) v[i++] = -entry_bound;
    if (i == n) break;
    ++v[i];
  }
  const std::size_t words = (o.pool.size() + 63) / 64;
  o.adj.assign(o.pool.size(), std::vector<std::uint64_t>(words));
  for (std::size_t a = 0; a < o.pool.size(); ++a)
    for (std::size_t b = a + 1; b < o.pool.size(); ++b)
      if (o.commute(o.pool[a], o.pool[b])) {
        o.adj[a][b / 64] |= std::uint64_t{1} << (b % 64);
        o.adj[b][a / 64] |= std::uint64_t{1} << (a % 64);
      }
  for (std::size_t a = 0; a < o.pool.size(); ++a) {
    if (o.best == static_cast<int>(n)) break;
    std::vector<std::vector<long>> echelon{o.pool[a]};
    std::vector<std::uint64_t> cands(words);
    for (std::size_t x = 0; x < words; ++x) cands[x] = o.adj[a][x];
    // only later vectors: sets are enumerated once
    for (std::size_t b = 0; b <= a; ++b) cands[b / 64] &= ~(std::uint64_t{1} << (b % 64));
    o.search(echelon, std::move(cands), 1);
  }
  return std::max(o.best, 1);
}

}  // namespace qtorus
