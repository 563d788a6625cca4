#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "zigzag/errors.hpp"
#include "zigzag/residue_field.hpp"

namespace zigzag {

/// ind(ω₂^c) ⊗ μ_z.
struct IrreducibleRep {
  std::int64_t c = 0;  // modulo p² − 1
  UnramValue twist;

  bool operator==(const IrreducibleRep&) const = default;
};

/// One summand μ_λ · ω^a of a reducible representation.
struct CharacterSummand {
  std::int64_t a = 0;  // modulo p − 1
  UnramValue lambda;

  bool operator==(const CharacterSummand&) const = default;
  auto operator<=>(const CharacterSummand&) const = default;
};

struct ReducibleRep {
  std::vector<CharacterSummand> summands;  // exactly two

  bool operator==(const ReducibleRep&) const = default;
};

/// Label of a semisimple two-dimensional mod-p representation of G_{Q_p}.
class GaloisRep {
 public:
  GaloisRep() = default;

  static GaloisRep irreducible(const FieldPtr& field, std::int64_t c);
  static GaloisRep irreducible(const FieldPtr& field, std::int64_t c, UnramValue twist);
  /// μ_λ1 ω^a1 ⊕ μ_λ2 ω^a2, summands kept in the given order.
  static GaloisRep reducible(const FieldPtr& field, std::int64_t a1, UnramValue lambda1, std::int64_t a2,
                             UnramValue lambda2);
  /// μ_λ ω^a1 ⊕ μ_{λ⁻¹} ω^a2.
  static GaloisRep reducible_pair(const FieldPtr& field, std::int64_t a1, const UnramValue& lambda,
                                  std::int64_t a2);

  const FieldPtr& field() const { return field_; }
  std::int64_t p() const { return field_->p(); }
  bool is_irreducible_variant() const { return std::holds_alternative<IrreducibleRep>(data_); }
  const IrreducibleRep& as_irreducible() const { return std::get<IrreducibleRep>(data_); }
  const ReducibleRep& as_reducible() const { return std::get<ReducibleRep>(data_); }

  /// Exact structural equality of the stored labels (order-sensitive).
  bool operator==(const GaloisRep& o) const { return data_ == o.data_; }

  std::string to_string() const;

 private:
  GaloisRep(FieldPtr field, std::variant<IrreducibleRep, ReducibleRep> data)
      : field_(std::move(field)), data_(std::move(data)) {}

  FieldPtr field_;
  std::variant<IrreducibleRep, ReducibleRep> data_;
};

/// Irreducible exponent replaced by min(c, p·c) mod p² − 1; summands sorted
/// by (a, λ). Idempotent.
GaloisRep canonical_form(const GaloisRep& rep);

/// Equality of canonical forms.
bool equivalent(const GaloisRep& a, const GaloisRep& b);

/// Equality of restrictions to inertia (unramified parts ignored).
bool equals_on_inertia(const GaloisRep& a, const GaloisRep& b);

/// Exponent of the determinant restricted to inertia, as a power of ω.
std::int64_t inertial_determinant(const GaloisRep& rep);

/// rep ⊗ ω^j.
GaloisRep twist_by_omega(const GaloisRep& rep, std::int64_t j);

/// True for an irreducible label; throws MalformedLabel if (p+1) | c.
bool is_irreducible_label(const GaloisRep& rep);

/// {"kind":"irred","c":int,"z":string} | {"kind":"red","summands":[{"a":int,"lambda":string}]}
nlohmann::json to_json(const GaloisRep& rep);
GaloisRep galois_rep_from_json(const FieldPtr& field, const nlohmann::json& j);

}  // namespace zigzag
