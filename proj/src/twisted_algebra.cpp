#include "qtorus/twisted_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace qtorus {

GroupElement cocycle(const MultiparameterMatrix& lambda, std::span<const Integer> a,
                     std::span<const Integer> b) {
  const std::size_t n = lambda.rank();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("cocycle: vectors must have length n");
  const ValueGroup& g = lambda.value_group();
  IntVector free(g.free_rank());
  Integer torsion = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (sgn(b[j]) == 0) continue;
      const Integer w = a[i] * b[j];
      const GroupElement& l = lambda.entry(i, j);
      for (std::size_t k = 0; k < free.size(); ++k) free[k] += w * l.free_part[k];
      torsion += w * l.torsion;
    }
  }
  return g.make(std::move(free), torsion);
}

namespace {

Integer l1(const IntVector& v) {
  Integer s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

}  // namespace

bool TwistedElement::KeyLess::operator()(const Key& x, const Key& y) const {
  const Integer wx = l1(x.exponent), wy = l1(y.exponent);
  if (wx != wy) return wx < wy;
  if (x.exponent != y.exponent) return x.exponent > y.exponent;
  return x.scalar < y.scalar;
}

TwistedElement::TwistedElement(std::shared_ptr<const MultiparameterMatrix> context)
    : ctx_(std::move(context)) {
  if (!ctx_) throw std::invalid_argument("TwistedElement: null context");
}

TwistedElement TwistedElement::monomial(std::shared_ptr<const MultiparameterMatrix> context,
                                        IntVector exponent, Rational coefficient,
                                        GroupElement scalar) {
  TwistedElement e(std::move(context));
  if (exponent.size() != e.ctx_->rank())
    throw std::invalid_argument("monomial: exponent must have length n");
  if (scalar.free_part.empty() && scalar.torsion == 0) scalar = e.ctx_->value_group().identity();
  e.add_term(exponent, scalar, coefficient);
  return e;
}

TwistedElement TwistedElement::one(std::shared_ptr<const MultiparameterMatrix> context) {
  const std::size_t n = context->rank();
  return monomial(std::move(context), IntVector(n));
}

void TwistedElement::add_term(const IntVector& exponent, const GroupElement& scalar,
                              const Rational& c) {
  if (sgn(c) == 0) return;
  if (!ctx_->value_group().belongs(scalar))
    throw std::invalid_argument("add_term: scalar is not in the value group");
  Rational v = c;
  v.canonicalize();
  Key key{exponent, scalar};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), v);
    return;
  }
  it->second += v;
  if (sgn(it->second) == 0) terms_.erase(it);
}

void TwistedElement::require_same_context(const TwistedElement& other) const {
  if (ctx_ != other.ctx_ && !(*ctx_ == *other.ctx_))
    throw std::invalid_argument("twisted algebra: elements have different contexts");
}

TwistedElement TwistedElement::operator+(const TwistedElement& other) const {
  require_same_context(other);
  TwistedElement out = *this;
  for (const auto& [k, c] : other.terms_) out.add_term(k.exponent, k.scalar, c);
  return out;
}

TwistedElement TwistedElement::operator-(const TwistedElement& other) const {
  require_same_context(other);
  TwistedElement out = *this;
  for (const auto& [k, c] : other.terms_) out.add_term(k.exponent, k.scalar, -c);
  return out;
}

TwistedElement TwistedElement::operator*(const TwistedElement& other) const {
  require_same_context(other);
  const ValueGroup& g = ctx_->value_group();
  TwistedElement out(ctx_);
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : other.terms_) {
      IntVector sum = ka.exponent;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += kb.exponent[i];
      const GroupElement q =
          g.combine(g.combine(ka.scalar, kb.scalar), cocycle(*ctx_, ka.exponent, kb.exponent));
      out.add_term(sum, q, ca * cb);
    }
  return out;
}

bool TwistedElement::operator==(const TwistedElement& other) const {
  return *ctx_ == *other.ctx_ && terms_ == other.terms_;
}

TwistedElement TwistedElement::monomial_inverse() const {
  if (terms_.size() != 1) throw std::invalid_argument("monomial_inverse: element is not a monomial");
  const auto& [k, c] = *terms_.begin();
  const ValueGroup& g = ctx_->value_group();
  IntVector neg = k.exponent;
  for (auto& x : neg) x = -x;
  // (c q^v X^a)^{-1} = c^{-1} q^{-v} tau(a,-a)^{-1} X^{-a}
  const GroupElement q = g.inverse(g.combine(k.scalar, cocycle(*ctx_, k.exponent, neg)));
  TwistedElement out(ctx_);
  out.add_term(neg, q, 1 / c);
  return out;
}

std::set<IntVector> TwistedElement::support() const {
  std::set<IntVector> s;
  for (const auto& [k, c] : terms_) s.insert(k.exponent);
  return s;
}

std::string TwistedElement::to_string() const {
  if (terms_.empty()) return "0";
  const ValueGroup& g = ctx_->value_group();
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t l = 0; l < g.free_rank(); ++l)
      if (sgn(k.scalar.free_part[l]) != 0)
        os << " * " << g.generator_names()[l] << '^' << k.scalar.free_part[l].get_str();
    if (k.scalar.torsion != 0) os << " * zeta" << g.torsion_order() << '^' << k.scalar.torsion;
    bool any = false;
    for (std::size_t i = 0; i < k.exponent.size(); ++i) {
      if (sgn(k.exponent[i]) == 0) continue;
      os << (any ? " " : " * ") << 'X' << (i + 1) << '^' << k.exponent[i].get_str();
      any = true;
    }
  }
  return os.str();
}

TwistedElement multiply(const TwistedElement& a, const TwistedElement& b) { return a * b; }

GroupElement commutator_units(const MultiparameterMatrix& lambda, std::span<const Integer> a,
                              std::span<const Integer> b) {
  auto ctx = std::make_shared<const MultiparameterMatrix>(lambda);
  const auto xa = TwistedElement::monomial(ctx, IntVector(a.begin(), a.end()));
  const auto xb = TwistedElement::monomial(ctx, IntVector(b.begin(), b.end()));
  const TwistedElement c = xa * xb * xa.monomial_inverse() * xb.monomial_inverse();
  if (c.terms().size() != 1) throw std::logic_error("commutator_units: result is not a scalar");
  const auto& [k, coef] = *c.terms().begin();
  if (!qtorus::is_zero(k.exponent) || coef != 1)
    throw std::logic_error("commutator_units: result is not a unit scalar");
  return k.scalar;
}

std::set<IntVector> support(const TwistedElement& e) { return e.support(); }

}  // namespace qtorus
