#include "zigzag/padic.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace zigzag {

ContextPtr PadicContext::make(std::int64_t p, int f, int precision) {
  if (precision < 1) throw InvalidArgument("precision must be positive");
  static std::mutex mutex;
  static std::map<std::tuple<std::int64_t, int, int>, ContextPtr> cache;
  FieldPtr field = GaloisField::make(p, f);
  const std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(p, f, precision);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  ContextPtr ctx(new PadicContext(p, std::move(field), precision));
  cache.emplace(key, ctx);
  return ctx;
}

// ---------------------------------------------------------------------------
// UnramifiedRing

UnramifiedRing::UnramifiedRing(const ContextPtr& ctx, int digits)
    : ctx_(ctx), p_(ctx->p()), f_(ctx->residue_degree()), k_(std::max(digits, 1)), m_(1) {
  for (int i = 0; i < k_; ++i) {
    if (m_ > (std::numeric_limits<std::int64_t>::max() >> 2) / p_) {
      throw PrecisionExhausted("requested precision exceeds 62-bit digit storage");
    }
    m_ *= p_;
  }
  g_ = ctx->field()->modulus();
}

WVec UnramifiedRing::from_int(std::int64_t n) const {
  WVec a = zero();
  a[0] = mod_floor(n, m_);
  return a;
}

WVec UnramifiedRing::lift(const GFElem& e) const {
  WVec a = zero();
  for (int i = 0; i < f_; ++i) a[static_cast<std::size_t>(i)] = e.coeffs()[static_cast<std::size_t>(i)];
  return a;
}

WVec UnramifiedRing::reduce(const WVec& a) const {
  WVec r = zero();
  for (std::size_t i = 0; i < r.size() && i < a.size(); ++i) r[i] = mod_floor(a[i], m_);
  return r;
}

WVec UnramifiedRing::add(const WVec& a, const WVec& b) const {
  WVec r = zero();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(a[i] + b[i], m_);
  return r;
}

WVec UnramifiedRing::sub(const WVec& a, const WVec& b) const {
  WVec r = zero();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(a[i] - b[i], m_);
  return r;
}

WVec UnramifiedRing::scale(const WVec& a, std::int64_t n) const {
  WVec r = zero();
  const std::int64_t nn = mod_floor(n, m_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mul_mod(a[i], nn, m_);
  return r;
}

WVec UnramifiedRing::mul(const WVec& a, const WVec& b) const {
  const auto f = static_cast<std::size_t>(f_);
  std::vector<std::int64_t> prod(2 * f, 0);
  for (std::size_t i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < f; ++j) {
      prod[i + j] = mod_floor(prod[i + j] + mul_mod(a[i], b[j], m_), m_);
    }
  }
  // x^f ≡ −Σ g_i x^i
  for (std::size_t d = 2 * f - 1; d >= f; --d) {
    const std::int64_t c = prod[d];
    if (c != 0) {
      for (std::size_t i = 0; i < f; ++i) {
        prod[d - f + i] = mod_floor(prod[d - f + i] - mul_mod(c, g_[i], m_), m_);
      }
      prod[d] = 0;
    }
    if (d == f) break;
  }
  prod.resize(f);
  return prod;
}

WVec UnramifiedRing::pow(WVec a, std::uint64_t e) const {
  WVec r = from_int(1);
  while (e > 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}

bool UnramifiedRing::divisible_by_p(const WVec& a) const {
  return std::all_of(a.begin(), a.end(), [&](std::int64_t x) { return x % p_ == 0; });
}

WVec UnramifiedRing::divide_by_p(const WVec& a) const {
  WVec r = zero();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] / p_;
  return r;
}

GFElem UnramifiedRing::residue(const WVec& a) const {
  std::vector<std::int64_t> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] % p_;
  return ctx_->field()->from_coeffs(std::move(c));
}

WVec UnramifiedRing::inverse(const WVec& a) const {
  const GFElem r = residue(a);
  if (r.is_zero()) throw InvalidArgument("inverse of a non-unit in the unramified ring");
  WVec y = lift(r.inverse());
  const WVec two = from_int(2);
  for (int i = 1; i < 2 * k_; i *= 2) y = mul(y, sub(two, mul(a, y)));
  return y;
}

WVec UnramifiedRing::teichmuller(const GFElem& e) const {
  WVec z = lift(e);
  const auto q = static_cast<std::uint64_t>(ctx_->field()->order());
  for (int i = 0; i < k_; ++i) z = pow(z, q);
  return z;
}

// ---------------------------------------------------------------------------
// PadicElement

PadicElement::PadicElement(ContextPtr ctx, bool zero, std::int64_t val, int prec, WVec a0, WVec a1)
    : ctx_(std::move(ctx)), zero_(zero), val_(val), prec_(prec), a0_(std::move(a0)), a1_(std::move(a1)) {}

PadicElement PadicElement::zero(const ContextPtr& ctx, std::int64_t absolute_precision) {
  return PadicElement(ctx, true, absolute_precision, 0, {}, {});
}

PadicElement PadicElement::normalized(ContextPtr ctx, std::int64_t val, int prec, WVec a0, WVec a1,
                                      std::int64_t absolute_bound) {
  while (prec > 0) {
    const UnramifiedRing ring(ctx, ring_digits(prec));
    a0 = ring.reduce(a0);
    a1 = ring.reduce(a1);
    if (!ring.divisible_by_p(a0)) {
      return PadicElement(std::move(ctx), false, val, prec, std::move(a0), std::move(a1));
    }
    // a0 + a1π = π(a1 + (a0/p)π)
    WVec shifted = ring.divide_by_p(a0);
    a0 = std::move(a1);
    a1 = std::move(shifted);
    ++val;
    --prec;
  }
  return zero(ctx, absolute_bound);
}

PadicElement PadicElement::from_rational(const ContextPtr& ctx, const BigRational& q, int precision) {
  if (precision < 0) precision = ctx->precision();
  if (q == 0) return zero(ctx, kExactZeroPrecision);
  const std::int64_t v = vp_int(numerator(q), ctx->p()) - vp_int(denominator(q), ctx->p());
  BigRational unit = q;
  BigInt pv = boost::multiprecision::pow(BigInt(ctx->p()), static_cast<unsigned>(std::abs(v)));
  if (v > 0) unit /= pv;
  if (v < 0) unit *= pv;
  const UnramifiedRing ring(ctx, ring_digits(precision));
  WVec a0 = ring.from_int(rational_mod(unit, ctx->p(), ring.modulus()));
  return PadicElement(ctx, false, 2 * v, precision, std::move(a0), ring.zero());
}

PadicElement PadicElement::from_integer(const ContextPtr& ctx, const BigInt& n, int precision) {
  return from_rational(ctx, BigRational(n), precision);
}

PadicElement PadicElement::uniformizer_power(const ContextPtr& ctx, std::int64_t k, int precision) {
  if (precision < 0) precision = ctx->precision();
  const UnramifiedRing ring(ctx, ring_digits(precision));
  return PadicElement(ctx, false, k, precision, ring.from_int(1), ring.zero());
}

PadicElement PadicElement::teichmuller(const ContextPtr& ctx, const GFElem& lambda, int precision) {
  if (precision < 0) precision = ctx->precision();
  if (lambda.is_zero()) return zero(ctx, precision);
  const UnramifiedRing ring(ctx, ring_digits(precision));
  return PadicElement(ctx, false, 0, precision, ring.teichmuller(lambda), ring.zero());
}

Valuation PadicElement::valuation() const {
  return zero_ ? Valuation::infinity() : Valuation::halves(val_);
}

Valuation PadicElement::require_finite_valuation() const {
  if (zero_) {
    throw PrecisionExhausted("all digits cancelled; value is O(pi^" + std::to_string(val_) + ")");
  }
  return Valuation::halves(val_);
}

GFElem PadicElement::residue() const {
  if (zero_) throw PrecisionExhausted("residue of zero-to-precision");
  return UnramifiedRing(ctx_, ring_digits(prec_)).residue(a0_);
}

std::vector<GFElem> PadicElement::digits() const {
  std::vector<GFElem> out;
  if (zero_) return out;
  WVec a0 = a0_;
  WVec a1 = a1_;
  for (int remaining = prec_; remaining > 0; --remaining) {
    const UnramifiedRing ring(ctx_, ring_digits(remaining));
    a0 = ring.reduce(a0);
    a1 = ring.reduce(a1);
    const GFElem d = ring.residue(a0);
    out.push_back(d);
    const WVec rest = ring.sub(a0, ring.teichmuller(d));
    WVec shifted = ring.divide_by_p(rest);
    a0 = std::move(a1);
    a1 = std::move(shifted);
  }
  return out;
}

PadicElement PadicElement::operator-() const {
  if (zero_) return *this;
  const UnramifiedRing ring(ctx_, ring_digits(prec_));
  return PadicElement(ctx_, false, val_, prec_, ring.sub(ring.zero(), a0_), ring.sub(ring.zero(), a1_));
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
  const std::int64_t bound = std::min(absolute_precision(), o.absolute_precision());
  if (zero_ && o.zero_) return zero(ctx_, bound);
  if (zero_) return normalized(ctx_, o.val_, static_cast<int>(bound - o.val_), o.a0_, o.a1_, bound);
  if (o.zero_) return normalized(ctx_, val_, static_cast<int>(bound - val_), a0_, a1_, bound);

  const PadicElement& lo = val_ <= o.val_ ? *this : o;
  const PadicElement& hi = val_ <= o.val_ ? o : *this;
  const auto rel = static_cast<int>(bound - lo.val_);
  if (rel <= 0) return zero(ctx_, bound);
  const UnramifiedRing ring(ctx_, ring_digits(rel));
  WVec w0 = ring.reduce(hi.a0_);
  WVec w1 = ring.reduce(hi.a1_);
  const std::int64_t shift = hi.val_ - lo.val_;
  if (shift > 2 * ring.digits() + 2) {
    w0 = ring.zero();
    w1 = ring.zero();
  } else {
    for (std::int64_t i = 0; i < shift; ++i) {
      // π·(w0 + w1π) = p·w1 + w0·π
      WVec next0 = ring.scale(w1, ctx_->p());
      w1 = std::move(w0);
      w0 = std::move(next0);
    }
  }
  return normalized(ctx_, lo.val_, rel, ring.add(ring.reduce(lo.a0_), w0), ring.add(ring.reduce(lo.a1_), w1),
                    bound);
}

PadicElement PadicElement::operator-(const PadicElement& o) const { return *this + (-o); }

PadicElement PadicElement::operator*(const PadicElement& o) const {
  if (zero_ && o.zero_) return zero(ctx_, val_ + o.val_);
  if (zero_) return zero(ctx_, val_ + o.val_);
  if (o.zero_) return zero(ctx_, o.val_ + val_);
  const int prec = std::min(prec_, o.prec_);
  const UnramifiedRing ring(ctx_, ring_digits(prec));
  const WVec x0 = ring.reduce(a0_);
  const WVec x1 = ring.reduce(a1_);
  const WVec y0 = ring.reduce(o.a0_);
  const WVec y1 = ring.reduce(o.a1_);
  WVec c0 = ring.add(ring.mul(x0, y0), ring.scale(ring.mul(x1, y1), ctx_->p()));
  WVec c1 = ring.add(ring.mul(x0, y1), ring.mul(x1, y0));
  return PadicElement(ctx_, false, val_ + o.val_, prec, std::move(c0), std::move(c1));
}

PadicElement PadicElement::inverse() const {
  if (zero_) throw PrecisionExhausted("inverse of zero-to-precision");
  const UnramifiedRing ring(ctx_, ring_digits(prec_));
  // (a0 + a1π)^{-1} = (a0 − a1π) / (a0² − p·a1²)
  const WVec norm = ring.sub(ring.mul(a0_, a0_), ring.scale(ring.mul(a1_, a1_), ctx_->p()));
  const WVec inv = ring.inverse(norm);
  return PadicElement(ctx_, false, -val_, prec_, ring.mul(a0_, inv), ring.sub(ring.zero(), ring.mul(a1_, inv)));
}

PadicElement PadicElement::operator/(const PadicElement& o) const { return *this * o.inverse(); }

PadicElement PadicElement::pow(std::uint64_t e) const {
  PadicElement result = uniformizer_power(ctx_, 0, zero_ ? ctx_->precision() : prec_);
  PadicElement base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

std::string PadicElement::to_string() const {
  std::ostringstream out;
  if (zero_ && val_ >= kExactZeroPrecision) return "0";
  if (zero_) {
    out << "O(pi^" << val_ << ")";
    return out.str();
  }
  out << "pi^" << val_ << "*[";
  const auto ds = digits();
  for (std::size_t i = 0; i < ds.size(); ++i) out << (i ? "," : "") << ds[i].to_string();
  out << "]+O(pi^" << absolute_precision() << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// ExactQuadratic

ExactQuadratic ExactQuadratic::uniformizer_power(const ContextPtr& ctx, std::int64_t k) {
  const std::int64_t j = k >= 0 ? k / 2 : -((-k + 1) / 2);
  BigRational pj = boost::multiprecision::pow(BigInt(ctx->p()), static_cast<unsigned>(std::abs(j)));
  if (j < 0) pj = 1 / pj;
  if (k - 2 * j == 0) return {ctx, pj, 0};
  return {ctx, 0, pj};
}

Valuation ExactQuadratic::valuation() const {
  const Valuation vx = vp(x_, ctx_->p());
  const Valuation vy = vp(y_, ctx_->p()) + Valuation::halves(1);
  return min(vx, vy);
}

GFElem ExactQuadratic::residue() const {
  const Valuation v = valuation();
  if (v.is_infinite()) throw PrecisionExhausted("residue of exact zero");
  // Leading term: x/p^{v} if v integral, y/p^{v−1/2} otherwise.
  const std::int64_t p = ctx_->p();
  const std::int64_t e = v.floor();
  BigRational scale = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(std::abs(e)));
  if (e > 0) scale = 1 / scale;
  const BigRational lead = v.is_integral() ? x_ * scale : y_ * scale;
  return ctx_->field()->from_int(rational_mod_p(lead, p));
}

ExactQuadratic ExactQuadratic::operator*(const ExactQuadratic& o) const {
  return {ctx_, x_ * o.x_ + BigRational(ctx_->p()) * y_ * o.y_, x_ * o.y_ + y_ * o.x_};
}

ExactQuadratic ExactQuadratic::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of exact zero");
  const BigRational norm = x_ * x_ - BigRational(ctx_->p()) * y_ * y_;
  return {ctx_, x_ / norm, -y_ / norm};
}

ExactQuadratic ExactQuadratic::pow(std::uint64_t e) const {
  ExactQuadratic result(ctx_, 1, 0);
  ExactQuadratic base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

PadicElement ExactQuadratic::to_padic(int precision) const {
  if (precision < 0) precision = ctx_->precision();
  if (is_zero()) return PadicElement::zero(ctx_, precision);
  if (y_ == 0) return PadicElement::from_rational(ctx_, x_, precision);
  const PadicElement y_pi = PadicElement::from_rational(ctx_, y_, precision) *
                            PadicElement::uniformizer_power(ctx_, 1, precision);
  if (x_ == 0) return y_pi;
  return PadicElement::from_rational(ctx_, x_, precision) + y_pi;
}

std::string ExactQuadratic::to_string() const {
  std::ostringstream out;
  out << x_;
  if (y_ != 0) out << (y_ > 0 ? "+" : "") << y_ << "*sqrt(" << ctx_->p() << ")";
  return out.str();
}

// ---------------------------------------------------------------------------

BigInt binomial(std::int64_t n, std::int64_t j) {
  if (j < 0 || n < 0 || j > n) return 0;
  j = std::min(j, n - j);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= j; ++i) {
    r *= n - j + i;
    r /= i;
  }
  return r;
}

std::int64_t binomial_valuation(std::int64_t n, std::int64_t j, std::int64_t p) {
  if (j < 0 || j > n) throw InvalidArgument("binomial_valuation requires 0 ≤ j ≤ n");
  // Kummer: carries when adding j and n − j in base p.
  std::int64_t a = j;
  std::int64_t b = n - j;
  std::int64_t carry = 0;
  std::int64_t carries = 0;
  while (a > 0 || b > 0 || carry > 0) {
    const std::int64_t s = a % p + b % p + carry;
    carry = s >= p ? 1 : 0;
    carries += carry;
    a /= p;
    b /= p;
  }
  return carries;
}

std::int64_t alpha(std::int64_t n, std::int64_t p) {
  std::int64_t total = 0;
  for (std::int64_t d = p - 1; d <= n; d *= p) total += n / d;
  return total;
}

}  // namespace zigzag
