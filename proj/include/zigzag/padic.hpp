#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "zigzag/errors.hpp"
#include "zigzag/residue_field.hpp"
#include "zigzag/valuation.hpp"

namespace zigzag {

/// Shared parameters of E = Q_{p^f}(π), π² = p: the prime, the residue
/// degree f and the default relative precision in π-adic digits.
class PadicContext {
 public:
  static std::shared_ptr<const PadicContext> make(std::int64_t p, int f = 2, int precision = 12);

  std::int64_t p() const { return p_; }
  int residue_degree() const { return field_->degree(); }
  int precision() const { return precision_; }
  const FieldPtr& field() const { return field_; }

 private:
  PadicContext(std::int64_t p, FieldPtr field, int precision)
      : p_(p), field_(std::move(field)), precision_(precision) {}

  std::int64_t p_;
  FieldPtr field_;
  int precision_;
};

using ContextPtr = std::shared_ptr<const PadicContext>;

/// Coefficient vector of an element of W(F_{p^f})/p^K = (Z/p^K)[x]/(g̃).
using WVec = std::vector<std::int64_t>;

/// Arithmetic in the truncated unramified ring (Z/p^K)[x]/(g̃), g̃ the integer
/// lift of the residue-field modulus.
class UnramifiedRing {
 public:
  UnramifiedRing(const ContextPtr& ctx, int digits);

  int digits() const { return k_; }
  std::int64_t modulus() const { return m_; }
  int degree() const { return f_; }

  WVec zero() const { return WVec(static_cast<std::size_t>(f_), 0); }
  WVec from_int(std::int64_t n) const;
  WVec lift(const GFElem& e) const;
  WVec reduce(const WVec& a) const;
  WVec add(const WVec& a, const WVec& b) const;
  WVec sub(const WVec& a, const WVec& b) const;
  WVec mul(const WVec& a, const WVec& b) const;
  WVec scale(const WVec& a, std::int64_t n) const;
  WVec pow(WVec a, std::uint64_t e) const;
  /// Inverse of a unit (residue nonzero); Newton lifting from the residue field.
  WVec inverse(const WVec& a) const;
  /// Teichmüller lift of e: the unique root of z^{p^f} = z lifting e.
  WVec teichmuller(const GFElem& e) const;

  bool divisible_by_p(const WVec& a) const;
  /// a / p for a divisible by p; the result is meaningful modulo p^{K−1}.
  WVec divide_by_p(const WVec& a) const;
  GFElem residue(const WVec& a) const;

 private:
  ContextPtr ctx_;
  std::int64_t p_;
  int f_;
  int k_;
  std::int64_t m_;
  std::vector<std::int64_t> g_;
};

/// An element of E known to finite relative precision: π^v · (a0 + a1·π) with
/// a0 a unit of the unramified ring. Zero-to-precision is a distinguished
/// state carrying only its absolute precision bound.
class PadicElement {
 public:
  /// Absolute precision used for the exact zero (e.g. from_integer(0)).
  static constexpr std::int64_t kExactZeroPrecision = std::int64_t{1} << 40;

  static PadicElement from_integer(const ContextPtr& ctx, const BigInt& n, int precision = -1);
  static PadicElement from_rational(const ContextPtr& ctx, const BigRational& q, int precision = -1);
  /// π^k, k any integer.
  static PadicElement uniformizer_power(const ContextPtr& ctx, std::int64_t k, int precision = -1);
  static PadicElement teichmuller(const ContextPtr& ctx, const GFElem& lambda, int precision = -1);
  /// O(π^absolute_precision).
  static PadicElement zero(const ContextPtr& ctx, std::int64_t absolute_precision);

  const ContextPtr& context() const { return ctx_; }
  /// +∞ iff zero-to-precision.
  Valuation valuation() const;
  /// As valuation(), but throws PrecisionExhausted for zero-to-precision.
  Valuation require_finite_valuation() const;
  bool is_zero() const { return zero_; }
  /// Number of known π-adic digits of the unit part (0 for zero-to-precision).
  int precision() const { return zero_ ? 0 : prec_; }
  /// Exponent N such that the element is known modulo π^N.
  std::int64_t absolute_precision() const { return zero_ ? val_ : val_ + prec_; }

  /// Leading Teichmüller digit of the unit part.
  GFElem residue() const;
  /// Teichmüller digits d_0, d_1, … with x = π^v Σ [d_i] π^i.
  std::vector<GFElem> digits() const;
  /// Unit-part coefficients a0 + a1·π (storage view).
  const WVec& unit_a0() const { return a0_; }
  const WVec& unit_a1() const { return a1_; }

  PadicElement operator+(const PadicElement& o) const;
  PadicElement operator-(const PadicElement& o) const;
  PadicElement operator-() const;
  PadicElement operator*(const PadicElement& o) const;
  PadicElement operator/(const PadicElement& o) const;
  PadicElement inverse() const;
  PadicElement pow(std::uint64_t e) const;

  /// Equality up to the joint precision of both operands.
  bool equals_to_precision(const PadicElement& o) const { return (*this - o).is_zero(); }

  std::string to_string() const;

 private:
  PadicElement(ContextPtr ctx, bool zero, std::int64_t val, int prec, WVec a0, WVec a1);
  static PadicElement normalized(ContextPtr ctx, std::int64_t val, int prec, WVec a0, WVec a1,
                                 std::int64_t absolute_bound);
  static int ring_digits(int prec) { return (prec + 1) / 2; }

  ContextPtr ctx_;
  bool zero_ = true;
  std::int64_t val_ = 0;  // π-adic valuation, or absolute precision when zero_
  int prec_ = 0;
  WVec a0_;
  WVec a1_;
};

/// Exact element x + y·√p of Q(√p) ⊂ E with rational x, y. Valuations are
/// exact: v(x + y√p) = min(v(x), v(y) + 1/2), the two never tie.
class ExactQuadratic {
 public:
  ExactQuadratic() = default;
  ExactQuadratic(ContextPtr ctx, BigRational x, BigRational y = 0)
      : ctx_(std::move(ctx)), x_(std::move(x)), y_(std::move(y)) {}

  static ExactQuadratic from_integer(const ContextPtr& ctx, const BigInt& n) { return {ctx, BigRational(n)}; }
  static ExactQuadratic from_rational(const ContextPtr& ctx, const BigRational& q) { return {ctx, q}; }
  static ExactQuadratic uniformizer_power(const ContextPtr& ctx, std::int64_t k);

  const ContextPtr& context() const { return ctx_; }
  const BigRational& rational_part() const { return x_; }
  const BigRational& sqrt_part() const { return y_; }

  Valuation valuation() const;
  Valuation require_finite_valuation() const { return valuation(); }
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  GFElem residue() const;

  ExactQuadratic operator+(const ExactQuadratic& o) const { return {ctx_, x_ + o.x_, y_ + o.y_}; }
  ExactQuadratic operator-(const ExactQuadratic& o) const { return {ctx_, x_ - o.x_, y_ - o.y_}; }
  ExactQuadratic operator-() const { return {ctx_, -x_, -y_}; }
  ExactQuadratic operator*(const ExactQuadratic& o) const;
  ExactQuadratic operator/(const ExactQuadratic& o) const { return *this * o.inverse(); }
  ExactQuadratic inverse() const;
  ExactQuadratic pow(std::uint64_t e) const;

  bool operator==(const ExactQuadratic& o) const { return x_ == o.x_ && y_ == o.y_; }

  PadicElement to_padic(int precision = -1) const;
  std::string to_string() const;

 private:
  ContextPtr ctx_;
  BigRational x_;
  BigRational y_;
};

/// Common surface of the two scalar models the engine is generic over.
template <class S>
concept PadicScalar = requires(const S& a, const S& b, const ContextPtr& ctx, const BigInt& n) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { a.valuation() } -> std::same_as<Valuation>;
  { a.require_finite_valuation() } -> std::same_as<Valuation>;
  { a.residue() } -> std::same_as<GFElem>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.context() } -> std::convertible_to<ContextPtr>;
  { S::from_integer(ctx, n) } -> std::same_as<S>;
  { S::uniformizer_power(ctx, std::int64_t{}) } -> std::same_as<S>;
};

/// Image in the residue field of an integral element: 0 if v > 0, the
/// leading digit if v = 0. Throws NonIntegral if v < 0.
template <PadicScalar S>
GFElem reduce(const S& x) {
  const Valuation v = x.require_finite_valuation();
  if (v > Valuation::integer(0)) return x.context()->field()->zero();
  if (v < Valuation::integer(0)) throw NonIntegral("cannot reduce an element of valuation " + v.to_string());
  return x.residue();
}

template <PadicScalar S>
S p_power(const ContextPtr& ctx, std::int64_t e) {
  return S::uniformizer_power(ctx, 2 * e);
}

/// C(n, j) exactly; 0 outside 0 ≤ j ≤ n.
BigInt binomial(std::int64_t n, std::int64_t j);

/// v_p(C(n, j)) by Kummer's carry count.
std::int64_t binomial_valuation(std::int64_t n, std::int64_t j, std::int64_t p);

/// α(n) = Σ_{j ≥ 1} ⌊n / (p^{j−1}(p−1))⌋.
std::int64_t alpha(std::int64_t n, std::int64_t p);

}  // namespace zigzag
