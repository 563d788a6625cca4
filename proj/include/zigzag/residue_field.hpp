#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace zigzag {

class GFElem;

/// The finite field F_{p^f} = F_p[x]/(g). For f = 2 the modulus is x² − q with
/// q the least quadratic non-residue mod p; for other degrees the
/// lexicographically first monic irreducible polynomial is used.
class GaloisField : public std::enable_shared_from_this<GaloisField> {
 public:
  static std::shared_ptr<const GaloisField> make(std::int64_t p, int f);

  std::int64_t p() const { return p_; }
  int degree() const { return f_; }
  std::int64_t order() const { return order_; }
  /// Monic modulus, coefficients low → high, size f + 1.
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  GFElem zero() const;
  GFElem one() const;
  GFElem from_int(std::int64_t n) const;
  GFElem from_coeffs(std::vector<std::int64_t> c) const;
  /// The class of x (a generator of the field over F_p when f ≥ 2).
  GFElem generator() const;
  /// Element with index i in base-p digit enumeration, 0 ≤ i < p^f.
  GFElem element(std::int64_t index) const;
  /// Least (in enumeration order) multiplicative generator of F_{p^f}^×.
  GFElem primitive_element() const;
  /// Least non-square; defines the quadratic extension F_{p^{2f}} = F_{p^f}[y]/(y² − ν).
  GFElem nonsquare() const;

  /// Parses "c0+c1*x+c2*x^2" (or a bare integer).
  GFElem parse(std::string_view text) const;

 private:
  GaloisField(std::int64_t p, int f, std::vector<std::int64_t> modulus);

  std::int64_t p_;
  int f_;
  std::int64_t order_;
  std::vector<std::int64_t> modulus_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// An element of F_{p^f}.
class GFElem {
 public:
  GFElem() = default;
  GFElem(FieldPtr field, std::vector<std::int64_t> coeffs);

  const FieldPtr& field() const { return field_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  /// Index in base-p digit enumeration.
  std::int64_t index() const;

  GFElem operator+(const GFElem& o) const;
  GFElem operator-(const GFElem& o) const;
  GFElem operator-() const;
  GFElem operator*(const GFElem& o) const;
  GFElem operator/(const GFElem& o) const;
  GFElem inverse() const;
  GFElem pow(std::uint64_t e) const;
  GFElem scaled(std::int64_t n) const;

  bool is_square() const;
  std::optional<GFElem> sqrt() const;

  bool operator==(const GFElem& o) const { return c_ == o.c_; }
  std::strong_ordering operator<=>(const GFElem& o) const { return index() <=> o.index(); }

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<std::int64_t> c_;
};

/// An element a + b·y of F_{p^{2f}} = F_{p^f}[y]/(y² − ν).
class ExtElem {
 public:
  ExtElem() = default;
  explicit ExtElem(GFElem a);
  ExtElem(GFElem a, GFElem b);

  const GFElem& re() const { return a_; }
  const GFElem& im() const { return b_; }
  const FieldPtr& field() const { return a_.field(); }
  bool in_base_field() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  ExtElem operator+(const ExtElem& o) const;
  ExtElem operator-(const ExtElem& o) const;
  ExtElem operator*(const ExtElem& o) const;
  ExtElem inverse() const;

  bool operator==(const ExtElem& o) const { return a_ == o.a_ && b_ == o.b_; }
  std::strong_ordering operator<=>(const ExtElem& o) const;

  /// Base-field elements print as GFElem; others as "(a)+(b)*y".
  std::string to_string() const;
  static ExtElem parse(const FieldPtr& field, std::string_view text);

 private:
  GFElem a_;
  GFElem b_;
};

/// Roots of λ² − d·λ + 1 in F_{p^{2f}}, smaller root first. Always exist.
std::pair<ExtElem, ExtElem> reciprocal_pair_with_trace(const GFElem& d);

/// A value that is either a concrete field element or an undetermined
/// quantity (an unknown fudge factor). Unknowns compare equal only to
/// unknowns carrying the same tag.
struct UnknownValue {
  std::string tag;
  bool operator==(const UnknownValue&) const = default;
  auto operator<=>(const UnknownValue&) const = default;
};

using UnramValue = std::variant<ExtElem, UnknownValue>;

std::string to_string(const UnramValue& v);
UnramValue parse_unram(const FieldPtr& field, std::string_view text);
bool is_unknown(const UnramValue& v);
/// Multiplicative inverse; unknowns map to a derived unknown tag.
UnramValue inverse(const UnramValue& v);

}  // namespace zigzag
