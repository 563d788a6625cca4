#include "zigzag/valuation.hpp"

#include "zigzag/errors.hpp"

namespace zigzag {

std::int64_t vp_int(BigInt n, std::int64_t p) {
  if (n == 0) throw InvalidArgument("v_p(0) is not an integer");
  std::int64_t v = 0;
  const BigInt bp = p;
  while (n % bp == 0) {
    n /= bp;
    ++v;
  }
  return v;
}

Valuation vp(const BigInt& n, std::int64_t p) {
  if (n == 0) return Valuation::infinity();
  return Valuation::integer(vp_int(n, p));
}

Valuation vp(const BigRational& q, std::int64_t p) {
  if (q == 0) return Valuation::infinity();
  return Valuation::integer(vp_int(numerator(q), p) - vp_int(denominator(q), p));
}

std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const __int128 r = static_cast<__int128>(a) * b % m;
  return static_cast<std::int64_t>(r < 0 ? r + m : r);
}

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t m) {
  std::int64_t result = 1 % m;
  a = mod_floor(a, m);
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, a, m);
    a = mul_mod(a, a, m);
    e >>= 1U;
  }
  return result;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod_floor(a, m);
  std::int64_t r = m;
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw NonIntegral("element is not invertible modulo " + std::to_string(m));
  return mod_floor(old_s, m);
}

std::int64_t rational_mod(const BigRational& q, std::int64_t p, std::int64_t m) {
  if (q != 0 && vp(q, p) < Valuation::integer(0)) {
    throw NonIntegral("rational has negative p-adic valuation");
  }
  const BigInt bm = m;
  BigInt num = numerator(q) % bm;
  BigInt den = denominator(q) % bm;
  if (num < 0) num += bm;
  const auto n = num.convert_to<std::int64_t>();
  const auto d = den.convert_to<std::int64_t>();
  return mul_mod(n, inverse_mod(d, m), m);
}

std::int64_t rational_mod_p(const BigRational& q, std::int64_t p) {
  return rational_mod(q, p, p);
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace zigzag
