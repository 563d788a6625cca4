#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace zigzag {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// An element of (1/2)Z ∪ {+∞}: the value group of a quadratic ramified
/// extension of Q_p, normalized so that v(p) = 1.
class Valuation {
 public:
  constexpr Valuation() = default;

  static constexpr Valuation halves(std::int64_t h) { return Valuation(h, false); }
  static constexpr Valuation integer(std::int64_t n) { return Valuation(2 * n, false); }
  static constexpr Valuation infinity() { return Valuation(0, true); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Twice the value. Undefined for +∞.
  constexpr std::int64_t twice() const { return halves_; }
  constexpr bool is_integral() const { return !infinite_ && halves_ % 2 == 0; }

  /// Largest integer ≤ value.
  constexpr std::int64_t floor() const {
    return halves_ >= 0 ? halves_ / 2 : -((-halves_ + 1) / 2);
  }

  constexpr Valuation operator+(const Valuation& o) const {
    if (infinite_ || o.infinite_) return infinity();
    return halves(halves_ + o.halves_);
  }
  constexpr Valuation operator-(const Valuation& o) const {
    // +∞ − finite = +∞; finite − +∞ is never needed.
    if (infinite_) return infinity();
    return halves(halves_ - o.halves_);
  }
  constexpr Valuation operator-() const { return halves(-halves_); }

  constexpr bool operator==(const Valuation& o) const {
    return infinite_ == o.infinite_ && (infinite_ || halves_ == o.halves_);
  }
  constexpr std::strong_ordering operator<=>(const Valuation& o) const {
    if (infinite_ || o.infinite_) {
      return static_cast<int>(infinite_) <=> static_cast<int>(o.infinite_);
    }
    return halves_ <=> o.halves_;
  }

  /// "3/2", "1", "-1/2", "inf".
  std::string to_string() const {
    if (infinite_) return "inf";
    if (halves_ % 2 == 0) return std::to_string(halves_ / 2);
    return std::to_string(halves_) + "/2";
  }

 private:
  constexpr Valuation(std::int64_t h, bool inf) : halves_(h), infinite_(inf) {}

  std::int64_t halves_ = 0;
  bool infinite_ = false;
};

constexpr Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

/// v_p of a nonzero integer; +∞ for zero.
Valuation vp(const BigInt& n, std::int64_t p);
/// v_p of a rational; +∞ for zero.
Valuation vp(const BigRational& q, std::int64_t p);
/// v_p as a plain integer; n must be nonzero.
std::int64_t vp_int(BigInt n, std::int64_t p);

/// x mod m in [0, m).
std::int64_t mod_floor(std::int64_t x, std::int64_t m);
/// Residue of a p-integral rational modulo p. Throws NonIntegral otherwise.
std::int64_t rational_mod_p(const BigRational& q, std::int64_t p);
/// Residue of a p-integral rational modulo m = p^K.
std::int64_t rational_mod(const BigRational& q, std::int64_t p, std::int64_t m);
/// Inverse of a unit modulo m.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t m);
std::int64_t ipow(std::int64_t base, int e);
bool is_prime(std::int64_t n);

}  // namespace zigzag
